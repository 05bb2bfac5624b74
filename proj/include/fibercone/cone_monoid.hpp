#pragma once

// Lattice points of a rational polyhedral cone P = {x : A x >= 0} in
// dimension at most 3: the irreducible generators Omega of P ∩ Z^m, the
// interior seeds Omega_0, and decompositions x = a + sum k_b b of interior
// points with a in Omega_0 and k_b >= 0.
//
// Everything is brute force over a coordinate box so that each answer can be
// re-checked independently.

#include "fibercone/bounds.hpp"
#include "fibercone/errors.hpp"
#include "fibercone/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fibercone {

using LatticePoint = std::vector<std::int64_t>;

inline std::string to_string(const LatticePoint& p)
{
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < p.size(); ++i)
        out << (i ? "," : "") << p[i];
    out << ')';
    return out.str();
}

inline LatticePoint operator+(LatticePoint a, const LatticePoint& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

inline LatticePoint operator-(LatticePoint a, const LatticePoint& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] -= b[i];
    return a;
}

inline LatticePoint operator*(std::int64_t k, LatticePoint a)
{
    for (auto& v : a)
        v *= k;
    return a;
}

inline bool is_zero(const LatticePoint& p)
{
    return std::all_of(p.begin(), p.end(), [](std::int64_t v) { return v == 0; });
}

/// Rank of an integer matrix (rows are vectors), by exact elimination.
inline std::size_t integer_rank(const std::vector<LatticePoint>& rows)
{
    if (rows.empty())
        return 0;
    const std::size_t cols = rows.front().size();
    std::vector<std::vector<Rational>> m;
    for (const auto& r : rows)
        m.emplace_back(r.begin(), r.end());
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < m.size() && m[pivot][c] == 0)
            ++pivot;
        if (pivot == m.size())
            continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][c] == 0)
                continue;
            const Rational factor = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k)
                m[r][k] -= factor * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Calls fn on every point of [-bound, bound]^dim.
template <typename Fn>
void for_each_box_point(std::size_t dim, std::int64_t bound, Fn&& fn)
{
    LatticePoint p(dim, -bound);
    while (true) {
        fn(static_cast<const LatticePoint&>(p));
        std::size_t i = 0;
        while (i < dim && p[i] == bound) {
            p[i] = -bound;
            ++i;
        }
        if (i == dim)
            return;
        ++p[i];
    }
}

/// A pointed rational cone {x : A x >= 0} with nonempty interior, 1 <= m <= 3.
class ConeSpec {
public:
    explicit ConeSpec(std::vector<LatticePoint> rows, std::int64_t interior_search_bound = 10) : rows_(std::move(rows))
    {
        if (rows_.empty())
            throw DomainError("cone needs at least one inequality");
        const std::size_t dim = rows_.front().size();
        if (dim == 0 || dim > 3)
            throw DomainError("cone dimension must be 1, 2 or 3");
        for (const auto& r : rows_) {
            if (r.size() != dim)
                throw DomainError("inequality rows have different lengths");
            if (is_zero(r))
                throw DomainError("zero inequality row");
        }
        if (integer_rank(rows_) != dim)
            throw DomainError("cone is not pointed (contains a line)");
        for_each_box_point(dim, interior_search_bound, [&](const LatticePoint& p) {
            if (!interior_witness_ && in_interior(p))
                interior_witness_ = p;
        });
        if (!interior_witness_)
            throw DomainError("cone has empty interior (no strictly interior point within the search box)");
    }

    std::size_t dimension() const { return rows_.front().size(); }
    const std::vector<LatticePoint>& rows() const { return rows_; }
    const LatticePoint& interior_witness() const { return *interior_witness_; }

    std::int64_t evaluate(std::size_t row, const LatticePoint& p) const
    {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            s += rows_[row][i] * p[i];
        return s;
    }

    bool contains(const LatticePoint& p) const
    {
        check_dim(p);
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (evaluate(r, p) < 0)
                return false;
        return true;
    }

    /// Every row strictly positive. A row vanishing at an interior point would vanish on all of P.
    bool in_interior(const LatticePoint& p) const
    {
        check_dim(p);
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (evaluate(r, p) <= 0)
                return false;
        return true;
    }

    /// Sum of the rows: positive on P \ {0} because A has full column rank.
    std::int64_t height(const LatticePoint& p) const
    {
        std::int64_t s = 0;
        for (std::size_t r = 0; r < rows_.size(); ++r)
            s += evaluate(r, p);
        return s;
    }

private:
    void check_dim(const LatticePoint& p) const
    {
        if (p.size() != dimension())
            throw DomainError("point " + to_string(p) + " has the wrong dimension");
    }

    std::vector<LatticePoint> rows_;
    std::optional<LatticePoint> interior_witness_;
};

namespace detail {

/// Whether p is a nonnegative integer combination of gens (p assumed in P).
class GeneratorCover {
public:
    GeneratorCover(const ConeSpec& spec, const std::vector<LatticePoint>& gens) : spec_(spec), gens_(gens) {}

    /// Coefficients in generator order, first found with generators tried in canonical order.
    std::optional<std::vector<std::int64_t>> represent(const LatticePoint& p)
    {
        std::vector<std::int64_t> coeffs(gens_.size(), 0);
        if (search(p, 0, coeffs))
            return coeffs;
        return std::nullopt;
    }

private:
    bool search(const LatticePoint& p, std::size_t start, std::vector<std::int64_t>& coeffs)
    {
        if (is_zero(p))
            return true;
        const auto key = std::make_pair(p, start);
        if (dead_.contains(key))
            return false;
        for (std::size_t i = start; i < gens_.size(); ++i) {
            const LatticePoint rest = p - gens_[i];
            if (!spec_.contains(rest))
                continue;
            ++coeffs[i];
            if (search(rest, i, coeffs))
                return true;
            --coeffs[i];
        }
        dead_.insert(key);
        return false;
    }

    const ConeSpec& spec_;
    const std::vector<LatticePoint>& gens_;
    std::set<std::pair<LatticePoint, std::size_t>> dead_;
};

} // namespace detail

/// Irreducible nonzero points of P ∩ Z^m inside [-bound, bound]^m, in lexicographic order.
/// Throws SearchFailure("bound too small") unless every box point of P decomposes over them.
inline std::vector<LatticePoint> hilbert_basis(const ConeSpec& spec, std::int64_t bound)
{
    if (bound < 1)
        throw DomainError("search bound must be positive");
    std::vector<LatticePoint> points;
    for_each_box_point(spec.dimension(), bound, [&](const LatticePoint& p) {
        if (!is_zero(p) && spec.contains(p))
            points.push_back(p);
    });
    std::stable_sort(points.begin(), points.end(),
                     [&](const LatticePoint& a, const LatticePoint& b) { return spec.height(a) < spec.height(b); });

    std::vector<LatticePoint> omega;
    for (const auto& p : points) {
        const bool reducible = std::any_of(omega.begin(), omega.end(), [&](const LatticePoint& g) {
            return g != p && spec.contains(p - g);
        });
        if (!reducible)
            omega.push_back(p);
    }
    std::sort(omega.begin(), omega.end());

    detail::GeneratorCover cover(spec, omega);
    for (const auto& p : points)
        if (!cover.represent(p))
            throw SearchFailure("bound too small: " + to_string(p) + " does not decompose over the generators found");
    return omega;
}

struct HilbertData {
    std::vector<LatticePoint> omega;               // generators, lexicographic
    std::vector<LatticePoint> omega0;              // interior seeds, lexicographic
    std::vector<std::vector<std::size_t>> facets;  // indices into omega lying on each facet
};

/// Facets of P as sets of generators. Rows whose tight generators span less
/// than a hyperplane are redundant and dropped; duplicate facets are merged.
inline std::vector<std::vector<std::size_t>> facet_sets(const ConeSpec& spec, const std::vector<LatticePoint>& omega)
{
    std::vector<std::vector<std::size_t>> facets;
    for (std::size_t r = 0; r < spec.rows().size(); ++r) {
        std::vector<std::size_t> tight;
        std::vector<LatticePoint> vectors;
        for (std::size_t i = 0; i < omega.size(); ++i) {
            if (spec.evaluate(r, omega[i]) == 0) {
                tight.push_back(i);
                vectors.push_back(omega[i]);
            }
        }
        if (integer_rank(vectors) + 1 != spec.dimension())
            continue;
        if (std::find(facets.begin(), facets.end(), tight) == facets.end())
            facets.push_back(std::move(tight));
    }
    return facets;
}

/// { sum of W : W ⊆ Omega nonempty, W not inside any facet }.
inline HilbertData omega0(const std::vector<LatticePoint>& omega, const ConeSpec& spec)
{
    if (omega.empty())
        throw DomainError("empty generator set");
    if (omega.size() > 20)
        throw DomainError("too many generators for subset enumeration");
    HilbertData data;
    data.omega = omega;
    data.facets = facet_sets(spec, omega);

    std::set<LatticePoint> seeds;
    const std::uint64_t subsets = std::uint64_t{1} << omega.size();
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
        const bool inside_facet = std::any_of(data.facets.begin(), data.facets.end(), [&](const auto& facet) {
            for (std::size_t i = 0; i < omega.size(); ++i)
                if (((mask >> i) & 1u) && std::find(facet.begin(), facet.end(), i) == facet.end())
                    return false;
            return true;
        });
        if (inside_facet)
            continue;
        LatticePoint sum(spec.dimension(), 0);
        for (std::size_t i = 0; i < omega.size(); ++i)
            if ((mask >> i) & 1u)
                sum = sum + omega[i];
        ensure(spec.in_interior(sum), "seed " + to_string(sum) + " is not interior");
        seeds.insert(sum);
    }
    data.omega0.assign(seeds.begin(), seeds.end());
    return data;
}

inline HilbertData hilbert_data(const ConeSpec& spec, std::int64_t bound)
{
    return omega0(hilbert_basis(spec, bound), spec);
}

struct InteriorDecomposition {
    LatticePoint seed;                       // element of omega0
    std::vector<std::int64_t> coefficients;  // k_b, aligned with omega
};

inline bool verify_decomposition(const LatticePoint& point, const InteriorDecomposition& d, const HilbertData& h,
                                 const ConeSpec& spec)
{
    if (!spec.in_interior(point))
        return false;
    if (std::find(h.omega0.begin(), h.omega0.end(), d.seed) == h.omega0.end())
        return false;
    if (d.coefficients.size() != h.omega.size())
        return false;
    LatticePoint sum = d.seed;
    for (std::size_t i = 0; i < h.omega.size(); ++i) {
        if (d.coefficients[i] < 0)
            return false;
        sum = sum + d.coefficients[i] * h.omega[i];
    }
    return sum == point;
}

/// point = a + sum k_b b with a in omega0; seeds then coefficients tried in canonical order.
inline InteriorDecomposition decompose_interior(const LatticePoint& point, const HilbertData& h, const ConeSpec& spec)
{
    if (!spec.in_interior(point))
        throw DomainError("point " + to_string(point) + " is not in the interior of the cone");
    detail::GeneratorCover cover(spec, h.omega);
    for (const auto& seed : h.omega0) {
        const LatticePoint rest = point - seed;
        if (!spec.contains(rest))
            continue;
        if (auto coeffs = cover.represent(rest)) {
            InteriorDecomposition d{seed, std::move(*coeffs)};
            ensure(verify_decomposition(point, d, h, spec), "decomposition failed verification");
            return d;
        }
    }
    throw SearchFailure("no decomposition within bounds for " + to_string(point));
}

using ConeNorm = std::function<std::int64_t(const LatticePoint&)>;

inline std::int64_t l1_norm(const LatticePoint& p)
{
    std::int64_t s = 0;
    for (auto v : p)
        s += v < 0 ? -v : v;
    return s;
}

/// x + y - z on the closed cone over the magic face.
inline std::int64_t thurston_norm_xyz(const LatticePoint& p)
{
    if (p.size() != 3)
        throw DomainError("Thurston norm needs a point (x,y,z)");
    return p[0] + p[1] - p[2];
}

struct ArithmeticSplit {
    LatticePoint alpha;
    LatticePoint beta;
    std::int64_t n = 0;
    InteriorDecomposition decomposition;
    Integer norm;
    Integer cone_constant;        // D = max over omega0 + sum over omega
    bool guaranteed = false;      // norm > D, so n >= norm / D must hold
    bool degenerate = false;      // n = 0: no arithmetic bound
};

/// point = alpha + n*beta with beta the generator of largest coefficient (ties: first in order).
inline ArithmeticSplit arithmetic_split(const LatticePoint& point, const HilbertData& h, const ConeSpec& spec,
                                        const ConeNorm& norm)
{
    ArithmeticSplit split;
    split.decomposition = decompose_interior(point, h, spec);
    const auto& k = split.decomposition.coefficients;
    const auto best = std::max_element(k.begin(), k.end());   // first maximum
    const auto idx = static_cast<std::size_t>(best - k.begin());
    split.n = *best;
    split.beta = h.omega[idx];
    split.alpha = point - split.n * split.beta;
    split.degenerate = split.n == 0;

    std::vector<Integer> seed_norms;
    std::vector<Integer> gen_norms;
    for (const auto& a : h.omega0)
        seed_norms.emplace_back(norm(a));
    for (const auto& b : h.omega)
        gen_norms.emplace_back(norm(b));
    split.cone_constant = cone_constant(seed_norms, gen_norms);
    split.norm = norm(point);
    split.guaranteed = split.norm > split.cone_constant;
    if (split.guaranteed)
        ensure(Integer(split.n) * split.cone_constant >= split.norm, "split multiplier below norm / D");
    ensure(split.alpha + split.n * split.beta == point, "split does not recompose");
    return split;
}

} // namespace fibercone
