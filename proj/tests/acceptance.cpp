// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if all pass.

#include "fibercone/bounds.hpp"
#include "fibercone/cone_monoid.hpp"
#include "fibercone/digraph.hpp"
#include "fibercone/digraph_analysis.hpp"
#include "fibercone/sweep.hpp"
#include "fibercone/zfold_cover.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace fibercone;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::vector<BoundReport> g_reports;   // every sweep, for the global sandwich

void keep(const std::vector<BoundReport>& reports) { g_reports.insert(g_reports.end(), reports.begin(), reports.end()); }

std::set<std::string> image_labels(const Digraph& g, const std::string& source, std::uint64_t m)
{
    const auto v = labels_of(g, image_after(g, VertexSet::singleton(g.vertex_count(), g.index_of(source)), m));
    return {v.begin(), v.end()};
}

std::string show(const std::set<std::string>& s)
{
    std::string out = "{";
    for (const auto& x : s)
        out += (out.size() > 1 ? "," : "") + x;
    return out + "}";
}

SweepConfig family(FamilyKind kind, unsigned p, unsigned q, long from, long to)
{
    SweepConfig cfg;
    cfg.family = kind;
    cfg.p = p;
    cfg.q = q;
    cfg.n_from = from;
    cfg.n_to = to;
    cfg.workers = std::max(1u, std::thread::hardware_concurrency());
    return cfg;
}

Outcome hilbert_example()
{
    Outcome o;
    const ConeSpec spec({{0, 1}, {3, -2}});
    const auto h = hilbert_data(spec, 10);
    o.require(h.omega == std::vector<LatticePoint>{{1, 0}, {1, 1}, {2, 3}}, "omega mismatch");
    o.require(h.omega0 == std::vector<LatticePoint>{{1, 1}, {2, 1}, {3, 3}, {3, 4}, {4, 4}}, "omega0 mismatch");
    return o;
}

Outcome interior_set_equality()
{
    Outcome o;
    const ConeSpec spec({{0, 1}, {3, -2}});
    const auto h = hilbert_data(spec, 10);
    std::size_t points = 0;
    for_each_box_point(2, 15, [&](const LatticePoint& p) {
        if (!spec.in_interior(p))
            return;
        ++points;
        try {
            o.require(verify_decomposition(p, decompose_interior(p, h, spec), h, spec), "bad decomposition of " + to_string(p));
        } catch (const std::exception& e) {
            o.require(false, to_string(p) + ": " + e.what());
        }
    });
    std::size_t combos = 0;
    for (const auto& a : h.omega0)
        for (std::int64_t k0 = 0; k0 <= 15; ++k0)
            for (std::int64_t k1 = 0; k1 <= 15; ++k1)
                for (std::int64_t k2 = 0; k2 <= 8; ++k2) {
                    const LatticePoint p = a + k0 * h.omega[0] + k1 * h.omega[1] + k2 * h.omega[2];
                    if (p[0] > 15 || p[1] > 15)
                        continue;
                    ++combos;
                    o.require(spec.in_interior(p), "combination " + to_string(p) + " not interior");
                }
    o.detail = o.pass ? std::to_string(points) + " interior points, " + std::to_string(combos) + " combinations" : o.detail;
    return o;
}

Outcome digraph_pins()
{
    Outcome o;
    const Digraph g = build_magic_digraph(MagicDigraphSpec(8, 4));
    const auto i4 = image_labels(g, "b4", 4);
    const auto i8 = image_labels(g, "b4", 8);
    o.require(i4 == std::set<std::string>{"a4", "r4"}, "img^4(b4) = " + show(i4));
    o.require(i8 == std::set<std::string>{"a4", "a3", "r4", "r8"}, "img^8(b4) = " + show(i8));
    const Digraph h = build_magic_digraph(MagicDigraphSpec(27, 9));
    const auto i27 = image_labels(h, "b9", 27);
    o.require(i27 == std::set<std::string>{"a9", "a8", "a7", "r9", "r8", "r18", "r27"}, "img^27(b9) = " + show(i27));
    return o;
}

Outcome avoidance_pins()
{
    Outcome o;
    for (auto [n, p, q] : {std::array<unsigned, 3>{2, 3, 2}, {3, 3, 2}}) {
        const MagicDigraphSpec spec(static_cast<std::size_t>(std::pow(n, p)), static_cast<std::size_t>(std::pow(n, q)));
        const Digraph g = build_magic_digraph(spec);
        const auto m = static_cast<std::uint64_t>(std::pow(n, 2 * q));
        o.require(avoidance_at(g, spec.b(spec.k()), VertexSet::singleton(g.vertex_count(), spec.r(1)), m),
                  "r1 reached at m=" + std::to_string(m));
    }
    const MagicDigraphSpec spec(3, 9);
    const Digraph g = build_magic_digraph(spec);
    VertexSet r(g.vertex_count());
    for (std::size_t i = 1; i <= 3; ++i)
        r.insert(spec.r(i));
    for (std::uint64_t t = 1; t <= 2; ++t)
        o.require(avoidance_at(g, spec.b(9), r, 9 * t), "{r1,r2,r3} reached at m=" + std::to_string(9 * t));
    return o;
}

Outcome mixing_bound()
{
    Outcome o;
    std::ostringstream summary;
    for (auto [p, q] : {std::pair<unsigned, unsigned>{3, 2}, {2, 3}, {1, 2}, {1, 3}}) {
        for (long n : {2L, 3L, 4L}) {
            const Integer vertices = 1 + pow(Integer(n), p) + 2 * pow(Integer(n), q);
            if (n == 4 && vertices > 3000)
                continue;
            const BoundReport r = analyze_member(FamilyKind::PQ, p, q, n);
            g_reports.push_back(r);
            if (!r.ok()) {
                o.require(false, *r.error);
                continue;
            }
            o.require(Integer(r.mixing_r) <= *r.mixing_bound, "(" + std::to_string(p) + "," + std::to_string(q) +
                                                                   ") n=" + std::to_string(n) + ": exponent " +
                                                                   std::to_string(r.mixing_r) + " > " +
                                                                   r.mixing_bound->str());
        }
    }
    return o;
}

Outcome cycle_combinations()
{
    Outcome o;
    for (auto [p, q] : {std::pair<unsigned, unsigned>{3, 2}, {2, 3}, {1, 2}, {1, 3}})
        for (long nn = 1; nn <= 4; ++nn) {
            const Integer n = nn;
            const Integer j = pow(n, p);
            const Integer k = pow(n, q);
            for (Integer i = 0; i <= k; ++i) {
                const auto c = cycle_combination(p, q, n, i);
                o.require(c.a >= 0 && c.b >= 0 && c.c >= 0, "negative coefficient");
                o.require(c.a * k + c.b * (k + 1) + c.c * (j + k + 1) == k_pq(p, q, n) - k + i, "length mismatch");
            }
        }
    return o;
}

Outcome n11_comparability()
{
    Outcome o;
    double worst_ratio = 0;
    for (long n : {10L, 50L, 100L, 200L}) {
        const BoundReport r = analyze_member(FamilyKind::N11, 1, 0, n);
        g_reports.push_back(r);
        if (!r.ok()) {
            o.require(false, *r.error);
            continue;
        }
        const std::string at = "n=" + std::to_string(n) + ": ";
        o.require(r.upper_lC == Rational(4, n), at + "upper " + to_string(r.upper_lC));
        o.require(r.lower_lC == Rational(1, Integer(r.mixing_r) + 30 * (n + 3) - 10 * r.punctures), at + "lower formula");
        const Rational scaled = n * r.lower_lC;
        o.require(scaled >= Rational(1, 40) && scaled <= 1, at + "n*lower = " + to_string(scaled));
        worst_ratio = std::max(worst_ratio, to_double(r.upper_lC / r.lower_lC));
    }
    o.require(worst_ratio <= 200, "ratio " + std::to_string(worst_ratio));
    if (o.pass) {
        std::ostringstream d;
        d << "max upper/lower = " << std::fixed << std::setprecision(1) << worst_ratio;
        o.detail = d.str();
    }
    return o;
}

Outcome exponent_fits()
{
    Outcome o;
    std::ostringstream d;
    d << std::fixed << std::setprecision(3);
    struct Case {
        FamilyKind kind;
        unsigned p, q;
        long from, to;
        double tol;
        const char* name;
    };
    for (const Case& c : {Case{FamilyKind::PQ, 3, 2, 4, 10, 0.2, "(3,2)"}, Case{FamilyKind::PQ, 1, 2, 4, 10, 0.2, "(1,2)"},
                          Case{FamilyKind::N11, 1, 0, 20, 200, 0.1, "(1,n,1)+"}}) {
        const auto reports = run_sweep(family(c.kind, c.p, c.q, c.from, c.to));
        keep(reports);
        try {
            const FitVerdict v = verify_exponent_law(reports, BoundSide::Upper, c.tol);
            d << c.name << " slope " << v.fitted_slope << " vs -" << to_string(*v.predicted_exponent) << "; ";
            o.require(v.pass, std::string(c.name) + " slope " + std::to_string(v.fitted_slope));
        } catch (const std::exception& e) {
            o.require(false, std::string(c.name) + ": " + e.what());
        }
    }
    if (o.pass)
        o.detail = d.str();
    return o;
}

Outcome zfold_lemma()
{
    Outcome o;
    const CochainGraph theta = theta_graph(-1, 0, 1);
    const CoverLoop loop = find_short_loop(theta);
    o.require(verify_loop(theta, loop).ok(), "theta loop not verified");
    o.require(loop.length() == 4, "theta loop length " + std::to_string(loop.length()));
    o.require(loop.length() <= 2 * lemma_R(1, 3) && lemma_R(1, 3) == 4, "theta bound");
    std::mt19937_64 rng(20240917);
    std::uniform_int_distribution<std::size_t> half(4, 10);
    std::size_t longest = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const CochainGraph g = random_cubic_graph(2 * half(rng), 3, rng);
        try {
            const CoverLoop l = find_short_loop(g);
            const LoopCheck check = verify_loop(g, l);
            o.require(check.ok(), "trial " + std::to_string(trial) + ": " + defect_name(check.defect));
            longest = std::max(longest, l.length());
        } catch (const std::exception& e) {
            o.require(false, "trial " + std::to_string(trial) + ": " + e.what());
        }
    }
    if (o.pass)
        o.detail = "100 random graphs, longest loop " + std::to_string(longest);
    return o;
}

Outcome global_sandwich()
{
    Outcome o;
    std::size_t failed = 0;
    for (const auto& r : g_reports)
        failed += r.ok() ? 0 : 1;
    o.require(failed == 0, std::to_string(failed) + " reports failed");
    const std::size_t bad = sandwich_violations(g_reports);
    o.require(bad == 0, std::to_string(bad) + " violations");
    if (o.pass)
        o.detail = std::to_string(g_reports.size()) + " reports, 0 violations";
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "Hilbert basis and interior seeds of the 2D example cone", 1, hilbert_example},
        {2, "interior lattice points = seed + generator combinations (box 15)", 5, interior_set_equality},
        {3, "image pins on Gamma(8,4) and Gamma(27,9)", 1, digraph_pins},
        {4, "avoidance pins at n^{2q} and at multiples of n^q", 2, avoidance_pins},
        {5, "mixing exponent <= k_pq + 2n^p + 3n^q", 30, mixing_bound},
        {6, "cycle combinations reach k_pq - n^q + i", 1, cycle_combinations},
        {7, "(1,n,1)+ upper 4/n and comparable lower bound", 20, n11_comparability},
        {8, "exponent-law fits of the upper bounds", 60, exponent_fits},
        {9, "short loops in Z-fold covers within 2R", 10, zfold_lemma},
        {10, "global sandwich lower <= upper", 60, global_sandwich},
    };

    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_s;
        const bool pass = o.pass && in_time;
        all = all && pass;
        std::cout << (pass ? "PASS" : "FAIL") << "  [" << std::setw(2) << c.id << "] " << c.name << "  (" << std::fixed
                  << std::setprecision(3) << secs << " s, limit " << std::setprecision(0) << c.limit_s << " s)";
        if (!in_time)
            std::cout << "  over time limit";
        if (!o.detail.empty())
            std::cout << "  " << o.detail;
        std::cout << '\n';
    }
    std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << '\n';
    return all ? 0 : 1;
}
