#pragma once

// Lower and upper bounds on the curve-complex asymptotic translation length
// l_C of a pseudo-Anosov monodromy, built from train-track digraph data, plus
// the closed-form constants used by the edge-path and cone arguments.

#include "fibercone/errors.hpp"
#include "fibercone/magic_classes.hpp"
#include "fibercone/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fibercone {

/// Exponent regimes of the family (1, n^p, n^q)+. q = 2p is routed to TwoPleQ;
/// both formulas for k_{p,q} agree there.
enum class Regime { QltPlt2Q, PltQle2P, TwoPleQ, Uncovered };

inline Regime classify_regime(unsigned p, unsigned q)
{
    if (p == 0 || q == 0)
        return Regime::Uncovered;
    if (q < p && p < 2 * q)
        return Regime::QltPlt2Q;
    if (2 * p <= q)
        return Regime::TwoPleQ;
    if (p < q)
        return Regime::PltQle2P;
    return Regime::Uncovered;
}

inline std::string_view regime_name(Regime r)
{
    switch (r) {
    case Regime::QltPlt2Q: return "QltPlt2Q";
    case Regime::PltQle2P: return "PltQle2P";
    case Regime::TwoPleQ: return "TwoPleQ";
    case Regime::Uncovered: return "uncovered";
    }
    return "uncovered";
}

/// k_{p,q}: the cycle length budget of the edge-path argument.
inline Integer k_pq(unsigned p, unsigned q, const Integer& n)
{
    if (n < 1)
        throw DomainError("k_pq needs n >= 1");
    const Integer nq = pow(n, q);
    switch (classify_regime(p, q)) {
    case Regime::QltPlt2Q: return nq * (2 * nq + 1);
    case Regime::PltQle2P: return nq * (2 * pow(n, p) + 1);
    case Regime::TwoPleQ: return nq * (2 * pow(n, q - p) + 1);
    case Regime::Uncovered: break;
    }
    throw DomainError("uncovered regime: (p,q) = (" + std::to_string(p) + "," + std::to_string(q) + ")");
}

/// Uniform edge-path length k_{p,q} + 2n^p + 3n^q, an upper bound for the mixing exponent.
inline Integer uniform_path_length(unsigned p, unsigned q, const Integer& n)
{
    return k_pq(p, q, n) + 2 * pow(n, p) + 3 * pow(n, q);
}

/// Nonnegative multiplicities of the three cycles at a_{n^q}, of lengths
/// n^q, n^q + 1 and n^p + n^q + 1, whose total length is (k_{p,q} - n^q) + i.
struct CycleCombination {
    Integer a;
    Integer b;
    Integer c;
};

inline CycleCombination cycle_combination(unsigned p, unsigned q, const Integer& n, const Integer& i)
{
    const Integer nq = pow(n, q);
    if (i < 0 || i > nq)
        throw DomainError("cycle offset must lie in [0, n^q]");
    const Regime regime = classify_regime(p, q);
    if (regime == Regime::Uncovered)
        throw DomainError("uncovered regime");
    if (regime == Regime::QltPlt2Q)
        return {2 * nq - i, i, 0};
    const Integer np1 = pow(n, p) + 1;
    const Integer c = i / np1;
    const Integer b = i - np1 * c;
    const Integer lead = regime == Regime::PltQle2P ? pow(n, p) : pow(n, q - p);
    return {2 * lead - b - c, b, c};
}

struct LowerBound {
    Integer w;         // r + 30|chi| - 10n
    Rational sharp;    // 1 / w
    Rational weak;     // 1 / (r + 30|chi|)
};

/// l_C >= 1/(r + 30|chi| - 10n) for a train track whose real branches mix in r steps.
inline LowerBound gadre_tsai_lower(std::uint64_t mixing_r, const Integer& chi_abs, const Integer& punctures)
{
    if (mixing_r == 0 || chi_abs <= 0 || punctures < 0)
        throw DomainError("lower bound needs r >= 1, |chi| >= 1, n >= 0");
    LowerBound lb;
    lb.w = Integer(mixing_r) + 30 * chi_abs - 10 * punctures;
    if (lb.w <= 0)
        throw DomainError("r + 30|chi| - 10n must be positive");
    lb.sharp = Rational(1, lb.w);
    lb.weak = Rational(1, Integer(mixing_r) + 30 * chi_abs);
    return lb;
}

struct UpperBound {
    Rational arc_and_curve;   // l_AC <= 2/m
    Rational curve;           // l_C <= 4/m
};

/// From an avoidance witness of m steps: l_AC <= 2/m and, by the 2-bilipschitz inclusion, l_C <= 4/m.
inline UpperBound avoidance_upper(const Integer& m)
{
    if (m < 1)
        throw DomainError("avoidance step count must be positive");
    return {Rational(2, m), Rational(4, m)};
}

/// l_C <= 2/(n-1) for alpha + n*beta.
inline Rational arithmetic_upper(const Integer& n)
{
    if (n < 2)
        throw DomainError("arithmetic upper bound needs n >= 2");
    return Rational(2, n - 1);
}

/// max over the interior seeds plus the sum over the generators.
inline Integer cone_constant(std::span<const Integer> omega0_norms, std::span<const Integer> omega_norms)
{
    if (omega0_norms.empty() || omega_norms.empty())
        throw DomainError("cone constant needs nonempty seed and generator lists");
    Integer best = omega0_norms.front();
    for (const Integer& v : omega0_norms)
        best = v > best ? v : best;
    Integer total = 0;
    for (const Integer& v : omega_norms)
        total += v;
    return best + total;
}

/// ceil(norm / D): the multiplier every decomposition is guaranteed to reach once norm > D.
inline Integer guaranteed_multiplier(const Integer& norm, const Integer& denominator)
{
    if (denominator <= 0)
        throw DomainError("cone constant must be positive");
    return (norm + denominator - 1) / denominator;
}

inline double log_of(const Integer& v)
{
    if (v <= 0)
        throw DomainError("log of a nonpositive value");
    const std::size_t bits = boost::multiprecision::msb(v);
    if (bits < 1000)
        return std::log(v.convert_to<double>());
    const std::size_t shift = bits - 60;
    const Integer top = v >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline double log_of(const Rational& q) { return log_of(numerator(q)) - log_of(denominator(q)); }

struct FitResult {
    double slope;
    double intercept;
    double max_residual;
};

/// Least-squares line through (log norm, log bound).
inline FitResult fit_exponent(std::span<const std::pair<Rational, Rational>> samples)
{
    if (samples.size() < 3)
        throw DomainError("exponent fit needs at least three samples");
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [norm, bound] : samples) {
        if (norm <= 0 || bound <= 0)
            throw DomainError("exponent fit needs positive samples");
        xs.push_back(log_of(norm));
        ys.push_back(log_of(bound));
    }
    const double count = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0)
        throw DomainError("exponent fit is degenerate: all norms are equal");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.max_residual = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.max_residual = std::max(fit.max_residual, std::abs(ys[i] - (fit.intercept + fit.slope * xs[i])));
    return fit;
}

/// One processed class: invariants, digraph measurements and both bounds.
struct BoundReport {
    // Family coordinates when the class is (1, n^p, n^q)+; n11 members use p = 1, q = 0.
    Integer n = 0;
    unsigned p = 0;
    unsigned q = 0;

    IntegralClass cls;
    Integer plus_j = 0;
    Integer plus_k = 0;
    Integer norm = 0;
    Integer punctures = 0;
    Integer genus = 0;
    std::size_t vertices = 0;

    std::uint64_t mixing_r = 0;
    std::optional<Integer> mixing_bound;   // k_{p,q} + 2n^p + 3n^q in covered regimes
    Rational lower_lC = 0;
    Rational lower_lC_weak = 0;

    std::uint64_t avoid_m = 0;
    std::string avoid_rule;
    std::optional<std::uint64_t> last_avoid_m;
    Rational upper_lAC = 0;
    Rational upper_lC = 0;

    Regime regime = Regime::Uncovered;
    std::optional<std::string> error;

    bool ok() const { return !error.has_value(); }
};

} // namespace fibercone
