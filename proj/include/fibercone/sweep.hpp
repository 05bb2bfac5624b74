#pragma once

// End-to-end processing of (1,j,k)+ classes and parameter sweeps over the
// families (1, n^p, n^q)+ and (1, n, 1)+: invariants -> digraph -> mixing
// exponent and avoidance witness -> bounds, with CSV/JSON emission and
// power-law fits of the bounds against |chi|.

#include "fibercone/bounds.hpp"
#include "fibercone/digraph.hpp"
#include "fibercone/digraph_analysis.hpp"
#include "fibercone/magic_classes.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fibercone {

enum class FamilyKind { PQ, N11 };

inline constexpr std::size_t default_max_vertices = 5000;

struct SweepConfig {
    FamilyKind family = FamilyKind::PQ;
    unsigned p = 1;
    unsigned q = 1;
    Integer n_from = 2;
    Integer n_to = 2;
    unsigned workers = 1;
    std::size_t max_vertices = default_max_vertices;
    bool allow_large = false;

    void validate() const
    {
        if (n_from < 1 || n_to < n_from)
            throw DomainError("sweep range must be a nonempty interval of positive integers");
        if (family == FamilyKind::PQ && (p < 1 || q < 1))
            throw DomainError("family exponents must satisfy p, q >= 1");
        if (workers < 1)
            throw DomainError("worker count must be positive");
    }
};

inline PlusClass family_class(FamilyKind family, unsigned p, unsigned q, const Integer& n)
{
    return family == FamilyKind::N11 ? PlusClass(1, n, 1) : family_member(n, p, q);
}

namespace detail {

/// Source b_k and avoided vertex r_1 of the avoidance argument.
struct AvoidanceChoice {
    std::uint64_t steps = 0;
    std::string rule;
};

inline AvoidanceChoice family_witness(const Digraph& g, const MagicDigraphSpec& spec, FamilyKind family, unsigned p,
                                      unsigned q, const Integer& n)
{
    const std::size_t source = spec.b(spec.k());
    const std::size_t r1 = spec.r(1);
    const VertexSet just_r1 = VertexSet::singleton(g.vertex_count(), r1);
    auto require = [&](bool holds, const std::string& what) {
        if (!holds)
            throw InternalError("avoidance witness failed: " + what);
    };

    if (family == FamilyKind::N11) {
        const std::uint64_t m = to_size(n, "n");
        require(avoidance_at(g, source, just_r1, m), "r_1 reached from b_1 in n steps");
        return {m, "n"};
    }
    const Regime regime = classify_regime(p, q);
    if (regime == Regime::QltPlt2Q) {
        const std::uint64_t m = to_size(pow(n, 2 * q), "n^{2q}");
        require(avoidance_at(g, source, just_r1, m), "r_1 reached from b_k in n^{2q} steps");
        return {m, "n^{2q}"};
    }
    if (regime == Regime::TwoPleQ) {
        const Integer nq = pow(n, q);
        const Integer d = (nq - 1) / (pow(n, p) + 1);
        if (d >= 1) {
            VertexSet r_block(g.vertex_count());
            for (std::size_t i = 1; i <= spec.j(); ++i)
                r_block.insert(spec.r(i));
            const std::uint64_t stride = to_size(nq, "n^q");
            const std::uint64_t blocks = to_size(d, "D");
            for (std::uint64_t t = 1; t <= blocks; ++t)
                require(avoidance_at(g, source, r_block, t * stride), "R reached from b_k at a multiple of n^q");
            return {blocks * stride, "D*n^q"};
        }
    }
    return {last_avoidance(g, source, r1).steps(), "last"};
}

inline void fill_invariants(BoundReport& rep, const PlusClass& c)
{
    rep.cls = plus_to_xyz(c);
    rep.plus_j = c.j();
    rep.plus_k = c.k();
    const FiberInvariants inv = fiber_invariants(rep.cls);
    rep.norm = inv.norm;
    rep.punctures = inv.boundary_count;
    rep.genus = inv.genus;
}

inline void measure(BoundReport& rep, const PlusClass& c, std::size_t max_vertices,
                    const std::function<AvoidanceChoice(const Digraph&, const MagicDigraphSpec&)>& witness)
{
    fill_invariants(rep, c);
    if (c.i() != 1)
        throw DomainError("train-track digraphs are available for i = 1 only");
    const MagicDigraphSpec spec(to_size(c.j(), "j"), to_size(c.k(), "k"));
    rep.vertices = spec.vertex_count();
    if (rep.vertices > max_vertices)
        throw DomainError("digraph has " + std::to_string(rep.vertices) + " vertices, above the cap of " +
                          std::to_string(max_vertices));
    const Digraph g = build_magic_digraph(spec);

    rep.mixing_r = primitivity_exponent(g);
    const LowerBound lower = gadre_tsai_lower(rep.mixing_r, rep.norm, rep.punctures);
    rep.lower_lC = lower.sharp;
    rep.lower_lC_weak = lower.weak;

    const AvoidanceChoice choice = witness(g, spec);
    rep.avoid_m = choice.steps;
    rep.avoid_rule = choice.rule;
    rep.last_avoid_m = choice.rule == "last" ? choice.steps
                                             : last_avoidance(g, spec.b(spec.k()), spec.r(1)).steps();
    const UpperBound upper = avoidance_upper(rep.avoid_m);
    rep.upper_lAC = upper.arc_and_curve;
    rep.upper_lC = upper.curve;
    if (rep.lower_lC > rep.upper_lC)
        throw InternalError("lower bound " + to_string(rep.lower_lC) + " exceeds upper bound " + to_string(rep.upper_lC));
}

} // namespace detail

/// Full pipeline for a single class (1,j,k)+; the avoidance witness is the last avoidance of r_1 from b_k.
inline BoundReport analyze_plus_class(const PlusClass& c, std::size_t max_vertices = default_max_vertices)
{
    BoundReport rep;
    try {
        detail::measure(rep, c, max_vertices, [](const Digraph& g, const MagicDigraphSpec& spec) {
            return detail::AvoidanceChoice{last_avoidance(g, spec.b(spec.k()), spec.r(1)).steps(), "last"};
        });
    } catch (const std::exception& e) {
        rep.error = e.what();
    }
    return rep;
}

/// Pipeline for one family member, using the family's own avoidance horizon where one is known.
inline BoundReport analyze_member(FamilyKind family, unsigned p, unsigned q, const Integer& n,
                                  std::size_t max_vertices = default_max_vertices)
{
    BoundReport rep;
    rep.n = n;
    rep.p = family == FamilyKind::N11 ? 1 : p;
    rep.q = family == FamilyKind::N11 ? 0 : q;
    rep.regime = family == FamilyKind::N11 ? Regime::Uncovered : classify_regime(p, q);
    try {
        const PlusClass c = family_class(family, p, q, n);
        if (rep.regime != Regime::Uncovered)
            rep.mixing_bound = uniform_path_length(p, q, n);
        detail::measure(rep, c, max_vertices, [&](const Digraph& g, const MagicDigraphSpec& spec) {
            return detail::family_witness(g, spec, family, p, q, n);
        });
    } catch (const std::exception& e) {
        rep.error = e.what();
    }
    return rep;
}

/// One report per n in the range, ordered by n regardless of the worker count.
inline std::vector<BoundReport> run_sweep(const SweepConfig& cfg)
{
    cfg.validate();
    const std::size_t count = to_size(cfg.n_to - cfg.n_from + 1, "sweep length");
    const std::size_t cap = cfg.allow_large ? std::numeric_limits<std::size_t>::max() : cfg.max_vertices;
    std::vector<BoundReport> reports(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++)
            reports[i] = analyze_member(cfg.family, cfg.p, cfg.q, cfg.n_from + i, cap);
    };
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(cfg.workers, count));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(work);
    work();
    return reports;
}

// ---------------------------------------------------------------------------
// Exponent laws

enum class BoundSide { Lower, Upper };

struct FitVerdict {
    std::optional<Rational> predicted_exponent;   // r in  bound ~ |chi|^{-r}
    double fitted_slope = 0;
    double tolerance = 0;
    bool pass = false;
    std::size_t samples = 0;
    std::string note;
};

/// Predicted r for a family: 1 for (1,n,1)+; 2q/p when q<p<2q; 2 - p/q when 2p<=q;
/// and, for lower bounds only, (p+q)/q when p<q<2p.
inline std::optional<Rational> predicted_exponent(unsigned p, unsigned q, BoundSide side)
{
    if (q == 0)
        return Rational(1);
    switch (classify_regime(p, q)) {
    case Regime::QltPlt2Q: return Rational(2 * q, p);
    case Regime::TwoPleQ: return Rational(2) - Rational(p, q);
    case Regime::PltQle2P:
        if (side == BoundSide::Lower)
            return Rational(p + q, q);
        return std::nullopt;
    case Regime::Uncovered: return std::nullopt;
    }
    return std::nullopt;
}

inline double default_tolerance(unsigned q) { return q == 0 ? 0.1 : 0.2; }

inline FitVerdict verify_exponent_law(const std::vector<BoundReport>& reports, BoundSide side, double tolerance)
{
    FitVerdict verdict;
    verdict.tolerance = tolerance;
    if (reports.size() < 4)
        throw DomainError("exponent law needs at least four reports");
    for (const auto& r : reports)
        if (r.p != reports.front().p || r.q != reports.front().q)
            throw DomainError("exponent law needs reports from a single family");
    std::vector<std::pair<Rational, Rational>> samples;
    for (const auto& r : reports) {
        if (!r.ok())
            throw DomainError("exponent law input contains a failed report: " + *r.error);
        samples.emplace_back(Rational(r.norm), side == BoundSide::Upper ? r.upper_lC : r.lower_lC);
    }
    verdict.samples = samples.size();
    verdict.fitted_slope = fit_exponent(samples).slope;
    verdict.predicted_exponent = predicted_exponent(reports.front().p, reports.front().q, side);
    if (!verdict.predicted_exponent) {
        verdict.note = "no prediction";
        return verdict;
    }
    verdict.pass = std::abs(verdict.fitted_slope + to_double(*verdict.predicted_exponent)) <= tolerance;
    return verdict;
}

// ---------------------------------------------------------------------------
// Emission

inline const char* csv_header =
    "n,p,q,x,y,z,norm,punctures,genus,mixing_r,lower_lC_num,lower_lC_den,avoid_m,upper_lC_num,upper_lC_den,regime";

inline std::string reports_to_csv(const std::vector<BoundReport>& reports)
{
    std::ostringstream out;
    out << csv_header << '\n';
    for (const auto& r : reports) {
        out << r.n << ',' << r.p << ',' << r.q << ',' << r.cls.x << ',' << r.cls.y << ',' << r.cls.z << ',';
        if (r.ok()) {
            out << r.norm << ',' << r.punctures << ',' << r.genus << ',' << r.mixing_r << ',' << numerator(r.lower_lC)
                << ',' << denominator(r.lower_lC) << ',' << r.avoid_m << ',' << numerator(r.upper_lC) << ','
                << denominator(r.upper_lC) << ',';
        } else {
            out << ",,,,,,,,,";
        }
        out << regime_name(r.regime) << '\n';
    }
    return out.str();
}

inline nlohmann::json json_integer(const Integer& v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();
}

inline nlohmann::json json_rational(const Rational& q)
{
    return {{"num", json_integer(numerator(q))}, {"den", json_integer(denominator(q))}};
}

inline nlohmann::json to_json(const BoundReport& r)
{
    nlohmann::json j;
    j["n"] = json_integer(r.n);
    j["p"] = r.p;
    j["q"] = r.q;
    j["xyz"] = {json_integer(r.cls.x), json_integer(r.cls.y), json_integer(r.cls.z)};
    j["plus"] = {1, json_integer(r.plus_j), json_integer(r.plus_k)};
    j["regime"] = regime_name(r.regime);
    if (!r.ok()) {
        j["error"] = *r.error;
        return j;
    }
    j["norm"] = json_integer(r.norm);
    j["punctures"] = json_integer(r.punctures);
    j["genus"] = json_integer(r.genus);
    j["vertices"] = r.vertices;
    j["mixing_r"] = r.mixing_r;
    j["mixing_bound"] = r.mixing_bound ? json_integer(*r.mixing_bound) : nlohmann::json(nullptr);
    j["lower_lC"] = json_rational(r.lower_lC);
    j["lower_lC_weak"] = json_rational(r.lower_lC_weak);
    j["avoid_m"] = r.avoid_m;
    j["avoid_rule"] = r.avoid_rule;
    j["last_avoid_m"] = r.last_avoid_m ? nlohmann::json(*r.last_avoid_m) : nlohmann::json(nullptr);
    j["upper_lAC"] = json_rational(r.upper_lAC);
    j["upper_lC"] = json_rational(r.upper_lC);
    return j;
}

inline nlohmann::json reports_to_json(const std::vector<BoundReport>& reports)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports)
        arr.push_back(to_json(r));
    return arr;
}

inline nlohmann::json to_json(const FitVerdict& v)
{
    return {{"predicted_exponent", v.predicted_exponent ? nlohmann::json(to_string(*v.predicted_exponent))
                                                        : nlohmann::json(nullptr)},
            {"fitted_slope", v.fitted_slope},
            {"tolerance", v.tolerance},
            {"samples", v.samples},
            {"pass", v.pass},
            {"note", v.note}};
}

inline void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out.flush())
        throw std::runtime_error("failed writing '" + path + "'");
}

/// Lower bound never above upper bound, re-checked over a finished sweep.
inline std::size_t sandwich_violations(const std::vector<BoundReport>& reports)
{
    std::size_t bad = 0;
    for (const auto& r : reports)
        if (r.ok() && r.lower_lC > r.upper_lC)
            ++bad;
    return bad;
}

} // namespace fibercone
