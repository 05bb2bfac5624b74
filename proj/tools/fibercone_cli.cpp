// Command-line front end over the fibercone headers. Every verb prints JSON
// (CSV for family bounds); the exit status is nonzero when a verdict fails.

#include "fibercone/bounds.hpp"
#include "fibercone/cone_monoid.hpp"
#include "fibercone/digraph.hpp"
#include "fibercone/digraph_analysis.hpp"
#include "fibercone/magic_classes.hpp"
#include "fibercone/sweep.hpp"
#include "fibercone/zfold_cover.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace fibercone;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep))
        parts.push_back(item);
    return parts;
}

std::vector<Integer> parse_integers(const std::string& text, std::size_t min_count, std::size_t max_count)
{
    std::vector<Integer> out;
    for (const auto& part : split(text, ',')) {
        try {
            out.emplace_back(part);
        } catch (const std::exception&) {
            throw FormatError("not an integer: '" + part + "'");
        }
    }
    if (out.size() < min_count || out.size() > max_count)
        throw FormatError("expected " + std::to_string(min_count) + (min_count == max_count ? "" : "-" + std::to_string(max_count)) +
                          " comma-separated integers, got '" + text + "'");
    return out;
}

LatticePoint parse_point(const std::string& text)
{
    LatticePoint p;
    for (const auto& v : parse_integers(text, 1, 3))
        p.push_back(v.convert_to<std::int64_t>());
    return p;
}

std::vector<LatticePoint> parse_rows(const std::string& text)
{
    std::vector<LatticePoint> rows;
    for (const auto& row : split(text, ';')) {
        std::istringstream in(row);
        LatticePoint r;
        std::int64_t v;
        while (in >> v)
            r.push_back(v);
        if (!in.eof())
            throw FormatError("bad matrix row '" + row + "'");
        if (!r.empty())
            rows.push_back(r);
    }
    return rows;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError("'" + path + "': " + e.what());
    }
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

json rational_json(const Rational& q) { return to_string(q); }

json class_info(const IntegralClass& c, const std::optional<PlusClass>& plus)
{
    json j;
    j["xyz"] = {json_integer(c.x), json_integer(c.y), json_integer(c.z)};
    j["plus"] = plus ? json{json_integer(plus->i()), json_integer(plus->j()), json_integer(plus->k())} : json(nullptr);
    j["in_cone"] = in_fibered_cone(c);
    j["primitive"] = is_primitive(c);
    j["norm"] = j["boundary"] = j["per_torus"] = j["genus"] = j["projective"] = nullptr;
    if (in_fibered_cone(c)) {
        j["norm"] = json_integer(thurston_norm(c));
        const auto pc = projectivize(c);
        j["projective"] = {rational_json(pc.x), rational_json(pc.y), rational_json(pc.z)};
        if (is_primitive(c)) {
            const auto inv = fiber_invariants(c);
            j["boundary"] = json_integer(inv.boundary_count);
            j["per_torus"] = {json_integer(inv.per_torus[0]), json_integer(inv.per_torus[1]), json_integer(inv.per_torus[2])};
            j["genus"] = json_integer(inv.genus);
        }
    }
    return j;
}

struct GraphSource {
    std::string json_path;
    std::size_t j = 0;
    std::size_t k = 0;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--json", json_path, "digraph document {labels, adjacency}");
        cmd->add_option("--j", j, "j of Gamma_(1,j,k)+");
        cmd->add_option("--k", k, "k of Gamma_(1,j,k)+");
    }

    Digraph load() const
    {
        if (!json_path.empty())
            return digraph_from_json(read_json_file(json_path));
        if (j == 0 || k == 0)
            throw DomainError("give --json FILE or both --j and --k");
        return build_magic_digraph(MagicDigraphSpec(j, k));
    }
};

std::vector<LatticePoint> default_rows(std::size_t dim)
{
    if (dim == 3)
        return {{1, 0, 0}, {0, 1, 0}, {1, 0, -1}, {0, 1, -1}};
    return {{0, 1}, {3, -2}};
}

json hilbert_json(const HilbertData& h)
{
    json omega = json::array();
    json seeds = json::array();
    for (const auto& p : h.omega)
        omega.push_back(p);
    for (const auto& p : h.omega0)
        seeds.push_back(p);
    return {{"omega", omega}, {"omega0", seeds}, {"facets", h.facets}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bounds on curve-complex translation lengths for fibrations of the magic manifold"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned workers = 1;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    app.add_option("--workers", workers, "worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed for random graphs");
    app.add_option("--out", out_dir, "output directory for sweep files");

    int exit_code = 0;

    // class -------------------------------------------------------------
    auto* cls = app.add_subcommand("class", "integral class invariants")->require_subcommand(1);
    auto* cls_info = cls->add_subcommand("info", "norm, punctures, genus and projective class");
    std::string xyz_text, plus_text;
    auto* xyz_opt = cls_info->add_option("--xyz", xyz_text, "X,Y,Z");
    auto* plus_opt = cls_info->add_option("--plus", plus_text, "I,J,K");
    xyz_opt->excludes(plus_opt);
    cls_info->callback([&] {
        if (!plus_text.empty()) {
            const auto v = parse_integers(plus_text, 3, 3);
            const PlusClass p(v[0], v[1], v[2]);
            print(class_info(plus_to_xyz(p), p));
        } else if (!xyz_text.empty()) {
            const auto v = parse_integers(xyz_text, 3, 3);
            print(class_info({v[0], v[1], v[2]}, std::nullopt));
        } else {
            throw CLI::ValidationError("class info", "give --xyz or --plus");
        }
    });

    // digraph -----------------------------------------------------------
    auto* dg = app.add_subcommand("digraph", "train-track digraphs of (1,j,k)+")->require_subcommand(1);
    std::size_t dj = 0, dk = 0;
    std::string dot_path, json_path;
    auto* dg_build = dg->add_subcommand("build", "generate Gamma_(1,j,k)+");
    dg_build->add_option("--j", dj)->required()->check(CLI::PositiveNumber);
    dg_build->add_option("--k", dk)->required()->check(CLI::PositiveNumber);
    dg_build->add_option("--dot", dot_path, "write Graphviz DOT");
    dg_build->add_option("--json", json_path, "write the JSON digraph document");
    dg_build->callback([&] {
        const Digraph g = build_magic_digraph(MagicDigraphSpec(dj, dk));
        if (!dot_path.empty())
            write_text_file(dot_path, export_dot(g));
        if (!json_path.empty())
            write_text_file(json_path, to_json(g).dump() + "\n");
        print({{"j", dj}, {"k", dk}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()}});
    });
    auto* dg_cert = dg->add_subcommand("certify", "reconstruct and check the cycle/path certificates");
    dg_cert->add_option("--j", dj)->required()->check(CLI::PositiveNumber);
    dg_cert->add_option("--k", dk)->required()->check(CLI::PositiveNumber);
    dg_cert->callback([&] {
        const MagicDigraphSpec spec(dj, dk);
        const Digraph g = build_magic_digraph(spec);
        json certs = json::array();
        for (const auto& c : certify_edge_paths(spec, g)) {
            json walk = json::array();
            for (auto v : c.walk)
                walk.push_back(g.label(v));
            certs.push_back({{"name", c.name}, {"length", c.length()}, {"walk", walk}});
        }
        print({{"j", dj}, {"k", dk}, {"certificates", certs}});
    });

    // analyze -----------------------------------------------------------
    auto* an = app.add_subcommand("analyze", "reachability analytics on a digraph")->require_subcommand(1);
    GraphSource an_src;
    std::string source_label, avoided_label;
    std::uint64_t steps = 0;
    bool walks = false;
    auto* an_exp = an->add_subcommand("exponent", "primitivity exponent and covering times");
    an_src.attach(an_exp);
    an_exp->callback([&] {
        const Digraph g = an_src.load();
        json cover = json::object();
        const std::uint64_t e = primitivity_exponent(g);
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            cover[g.label(v)] = covering_time(g, v);
        print({{"vertices", g.vertex_count()}, {"exponent", e}, {"wielandt_bound", wielandt_bound(g.vertex_count())},
               {"covering_time", cover}});
    });
    auto* an_img = an->add_subcommand("image", "vertices reached by walks of exactly M steps");
    an_src.attach(an_img);
    an_img->add_option("--source", source_label)->required();
    an_img->add_option("--steps", steps)->required();
    an_img->add_flag("--walks", walks, "include one witness walk per reached vertex");
    an_img->callback([&] {
        const Digraph g = an_src.load();
        const std::size_t s = g.index_of(source_label);
        const VertexSet img = image_after(g, VertexSet::singleton(g.vertex_count(), s), steps);
        json j{{"source", source_label}, {"steps", steps}, {"image", labels_of(g, img)}};
        if (walks) {
            json w = json::object();
            img.for_each([&](std::size_t v) {
                json seq = json::array();
                for (auto x : *walk_of_length(g, s, v, steps))
                    seq.push_back(g.label(x));
                w[g.label(v)] = seq;
            });
            j["walks"] = w;
        }
        print(j);
    });
    auto* an_avoid = an->add_subcommand("avoid", "last step before coverage at which a vertex is avoided");
    an_src.attach(an_avoid);
    an_avoid->add_option("--source", source_label)->required();
    an_avoid->add_option("--avoided", avoided_label)->required();
    an_avoid->callback([&] {
        const Digraph g = an_src.load();
        const std::size_t s = g.index_of(source_label);
        const auto w = last_avoidance(g, s, g.index_of(avoided_label));
        const auto ub = w.steps() > 0 ? std::optional(avoidance_upper(w.steps())) : std::nullopt;
        print({{"source", source_label},
               {"avoided", avoided_label},
               {"steps", w.steps()},
               {"covering_time", covering_time(g, s)},
               {"upper_lAC", ub ? json(to_string(ub->arc_and_curve)) : json(nullptr)},
               {"upper_lC", ub ? json(to_string(ub->curve)) : json(nullptr)}});
    });

    // bounds ------------------------------------------------------------
    auto* bd = app.add_subcommand("bounds", "bounds on the curve-complex translation length")->require_subcommand(1);
    std::string bplus;
    auto* bd_class = bd->add_subcommand("class", "bounds for one class (1,j,k)+");
    bd_class->add_option("--plus", bplus, "I,J,K")->required();
    bd_class->callback([&] {
        const auto v = parse_integers(bplus, 3, 3);
        const BoundReport r = analyze_plus_class(PlusClass(v[0], v[1], v[2]));
        print(to_json(r));
        if (!r.ok())
            exit_code = 1;
    });
    SweepConfig fam_cfg;
    std::string family_name = "pq";
    std::string csv_path, fam_json_path;
    std::string n_from_text = "2", n_to_text = "2";
    auto add_family_options = [&](CLI::App* cmd) {
        cmd->add_option("--family", family_name, "pq | n11")->check(CLI::IsMember({"pq", "n11"}));
        cmd->add_option("--p", fam_cfg.p);
        cmd->add_option("--q", fam_cfg.q);
        cmd->add_option("--n-from", n_from_text)->required();
        cmd->add_option("--n-to", n_to_text)->required();
        cmd->add_flag("--allow-large", fam_cfg.allow_large, "lift the digraph size cap");
    };
    auto finish_config = [&] {
        fam_cfg.family = family_name == "n11" ? FamilyKind::N11 : FamilyKind::PQ;
        fam_cfg.n_from = Integer(n_from_text);
        fam_cfg.n_to = Integer(n_to_text);
        fam_cfg.workers = workers;
    };
    auto* bd_family = bd->add_subcommand("family", "bounds along (1,n^p,n^q)+ or (1,n,1)+");
    add_family_options(bd_family);
    bd_family->add_option("--csv", csv_path);
    bd_family->add_option("--json", fam_json_path);
    bd_family->callback([&] {
        finish_config();
        const auto reports = run_sweep(fam_cfg);
        if (!csv_path.empty())
            write_text_file(csv_path, reports_to_csv(reports));
        if (!fam_json_path.empty())
            write_text_file(fam_json_path, reports_to_json(reports).dump(2) + "\n");
        if (csv_path.empty() && fam_json_path.empty())
            std::cout << reports_to_csv(reports);
        for (const auto& r : reports)
            if (!r.ok())
                exit_code = 1;
    });

    // sweep / verify ----------------------------------------------------
    auto* sw = app.add_subcommand("sweep", "family sweep written to --out as CSV and JSON");
    add_family_options(sw);
    sw->callback([&] {
        finish_config();
        const auto reports = run_sweep(fam_cfg);
        std::filesystem::create_directories(out_dir);
        const std::string stem = family_name == "n11"
                                     ? "n11_" + n_from_text + "_" + n_to_text
                                     : "pq_" + std::to_string(fam_cfg.p) + "_" + std::to_string(fam_cfg.q) + "_" +
                                           n_from_text + "_" + n_to_text;
        const auto base = std::filesystem::path(out_dir) / stem;
        write_text_file(base.string() + ".csv", reports_to_csv(reports));
        write_text_file(base.string() + ".json", reports_to_json(reports).dump(2) + "\n");
        std::size_t failed = 0;
        for (const auto& r : reports)
            failed += r.ok() ? 0 : 1;
        print({{"reports", reports.size()},
               {"failed", failed},
               {"sandwich_violations", sandwich_violations(reports)},
               {"csv", base.string() + ".csv"},
               {"json", base.string() + ".json"}});
        if (failed > 0 || sandwich_violations(reports) > 0)
            exit_code = 1;
    });

    auto* vf = app.add_subcommand("verify", "fit log(bound) against log|chi| and compare with the predicted exponent");
    add_family_options(vf);
    std::string which = "upper";
    double tolerance = -1;
    vf->add_option("--which", which, "lower | upper")->check(CLI::IsMember({"lower", "upper"}));
    vf->add_option("--tolerance", tolerance, "defaults to 0.2 for pq families and 0.1 for n11");
    vf->callback([&] {
        finish_config();
        const auto reports = run_sweep(fam_cfg);
        const unsigned q = fam_cfg.family == FamilyKind::N11 ? 0 : fam_cfg.q;
        const double tol = tolerance >= 0 ? tolerance : default_tolerance(q);
        const auto verdict =
            verify_exponent_law(reports, which == "lower" ? BoundSide::Lower : BoundSide::Upper, tol);
        print(to_json(verdict));
        if (!verdict.pass)
            exit_code = 1;
    });

    // cone --------------------------------------------------------------
    auto* cn = app.add_subcommand("cone", "lattice points of rational cones")->require_subcommand(1);
    std::string rows_text, point_text, norm_name = "l1";
    std::int64_t bound = 10;
    auto load_cone = [&](std::size_t dim_hint) {
        return ConeSpec(rows_text.empty() ? default_rows(dim_hint) : parse_rows(rows_text));
    };
    auto* cn_hilbert = cn->add_subcommand("hilbert", "generators and interior seeds");
    cn_hilbert->add_option("--rows", rows_text, "inequality matrix, e.g. \"0 1; 3 -2\"");
    cn_hilbert->add_option("--bound", bound, "coordinate box half-width");
    cn_hilbert->callback([&] { print(hilbert_json(hilbert_data(load_cone(2), bound))); });
    auto* cn_dec = cn->add_subcommand("decompose", "write an interior point as seed + generators");
    cn_dec->add_option("--rows", rows_text);
    cn_dec->add_option("--bound", bound);
    cn_dec->add_option("--point", point_text)->required();
    cn_dec->callback([&] {
        const LatticePoint p = parse_point(point_text);
        const ConeSpec spec = load_cone(p.size());
        const HilbertData h = hilbert_data(spec, bound);
        const auto d = decompose_interior(p, h, spec);
        json j = hilbert_json(h);
        j["point"] = p;
        j["seed"] = d.seed;
        j["coefficients"] = d.coefficients;
        j["verified"] = verify_decomposition(p, d, h, spec);
        print(j);
    });
    auto* cn_split = cn->add_subcommand("split", "point = alpha + n*beta with n >= norm / D");
    cn_split->add_option("--rows", rows_text);
    cn_split->add_option("--bound", bound);
    cn_split->add_option("--point", point_text)->required();
    cn_split->add_option("--norm", norm_name, "thurston | l1")->check(CLI::IsMember({"thurston", "l1"}));
    cn_split->callback([&] {
        const LatticePoint p = parse_point(point_text);
        const ConeSpec spec = load_cone(p.size());
        const HilbertData h = hilbert_data(spec, bound);
        const ConeNorm norm = norm_name == "thurston" ? ConeNorm(thurston_norm_xyz) : ConeNorm(l1_norm);
        const auto s = arithmetic_split(p, h, spec, norm);
        json j{{"point", p},
               {"alpha", s.alpha},
               {"beta", s.beta},
               {"n", s.n},
               {"norm", json_integer(s.norm)},
               {"cone_constant", json_integer(s.cone_constant)},
               {"guaranteed_n", json_integer(guaranteed_multiplier(s.norm, s.cone_constant))},
               {"guaranteed", s.guaranteed},
               {"degenerate", s.degenerate}};
        j["arithmetic_upper_lC"] = s.n >= 2 ? json(to_string(arithmetic_upper(s.n))) : json(nullptr);
        print(j);
    });

    // zfold -------------------------------------------------------------
    auto* zf = app.add_subcommand("zfold", "short loops in Z-fold covers of 3-regular graphs")->require_subcommand(1);
    std::string zjson, theta_text;
    std::size_t random_vertices = 0;
    std::int64_t max_d = 3;
    auto* zf_loop = zf->add_subcommand("loop", "find and certify a short simple loop");
    auto* zj = zf_loop->add_option("--json", zjson, "graph {vertices, edges: [{u, v, d}]}");
    auto* zt = zf_loop->add_option("--theta", theta_text, "theta graph with cochain D0,D1,D2");
    auto* zr = zf_loop->add_option("--random", random_vertices, "random 3-regular graph on N vertices");
    zf_loop->add_option("--max-d", max_d, "cochain range for --random");
    zj->excludes(zt)->excludes(zr);
    zt->excludes(zr);
    zf_loop->callback([&] {
        std::optional<CochainGraph> g;
        if (!zjson.empty()) {
            g = cochain_graph_from_json(read_json_file(zjson));
        } else if (!theta_text.empty()) {
            const auto d = parse_integers(theta_text, 3, 3);
            g = theta_graph(d[0].convert_to<std::int64_t>(), d[1].convert_to<std::int64_t>(), d[2].convert_to<std::int64_t>());
        } else if (random_vertices > 0) {
            std::mt19937_64 rng(seed);
            g = random_cubic_graph(random_vertices, max_d, rng);
        } else {
            throw CLI::ValidationError("zfold loop", "give --json, --theta or --random");
        }
        const CoverLoop loop = find_short_loop(*g);
        json j = to_json(*g, loop);
        j["graph"] = to_json(*g);
        print(j);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}
