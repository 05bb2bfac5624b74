#pragma once

// Reachability on directed multigraphs: images of vertex sets under the
// induced one-step map, mixing (primitivity) exponents, covering times and
// avoidance witnesses. Multiplicities play no role here.

#include "fibercone/digraph.hpp"
#include "fibercone/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fibercone {

/// Dense bit-per-vertex set over a fixed vertex count.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

    static VertexSet full(std::size_t universe)
    {
        VertexSet s(universe);
        for (std::size_t v = 0; v < universe; ++v)
            s.insert(v);
        return s;
    }

    static VertexSet singleton(std::size_t universe, std::size_t v)
    {
        VertexSet s(universe);
        s.insert(v);
        return s;
    }

    std::size_t universe() const { return universe_; }

    bool contains(std::size_t v) const
    {
        check(v);
        return (words_[v / 64] >> (v % 64)) & 1u;
    }

    void insert(std::size_t v)
    {
        check(v);
        words_[v / 64] |= std::uint64_t{1} << (v % 64);
    }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (std::uint64_t w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty() const
    {
        for (std::uint64_t w : words_)
            if (w != 0)
                return false;
        return true;
    }

    bool is_full() const { return count() == universe_; }

    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    VertexSet& operator|=(const VertexSet& other)
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= other.words_[i];
        return *this;
    }

    bool intersects(const VertexSet& other) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i])
                return true;
        return false;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w != 0) {
                fn(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> members() const
    {
        std::vector<std::size_t> out;
        for_each([&](std::size_t v) { out.push_back(v); });
        return out;
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    void check(std::size_t v) const
    {
        if (v >= universe_)
            throw DomainError("vertex index " + std::to_string(v) + " out of range");
    }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Set of labelled vertices of g.
inline VertexSet vertex_set(const Digraph& g, std::span<const std::string> labels)
{
    VertexSet s(g.vertex_count());
    for (const auto& l : labels)
        s.insert(g.index_of(l));
    return s;
}

inline std::vector<std::string> labels_of(const Digraph& g, const VertexSet& s)
{
    std::vector<std::string> out;
    s.for_each([&](std::size_t v) { out.push_back(g.label(v)); });
    return out;
}

/// (V-1)^2 + 1: a primitive digraph on V vertices mixes within this many steps.
inline std::uint64_t wielandt_bound(std::size_t vertex_count)
{
    const std::uint64_t v = vertex_count;
    return v == 0 ? 0 : (v - 1) * (v - 1) + 1;
}

inline VertexSet image_step(const Digraph& g, const VertexSet& s)
{
    VertexSet next(g.vertex_count());
    s.for_each([&](std::size_t u) {
        for (std::size_t w : g.out_neighbors(u))
            next.insert(w);
    });
    return next;
}

inline VertexSet image_after_stepwise(const Digraph& g, VertexSet s, std::uint64_t steps)
{
    for (std::uint64_t t = 0; t < steps && !s.empty(); ++t)
        s = image_step(g, s);
    return s;
}

/// Row v holds the image of {v} after some fixed number of steps.
class ReachPower {
public:
    static ReachPower one_step(const Digraph& g)
    {
        ReachPower p;
        p.rows_.reserve(g.vertex_count());
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            p.rows_.push_back(image_step(g, VertexSet::singleton(g.vertex_count(), v)));
        return p;
    }

    VertexSet apply(const VertexSet& s) const
    {
        VertexSet out(s.universe());
        s.for_each([&](std::size_t u) { out |= rows_[u]; });
        return out;
    }

    ReachPower squared() const
    {
        ReachPower p;
        p.rows_.reserve(rows_.size());
        for (const VertexSet& row : rows_)
            p.rows_.push_back(apply(row));
        return p;
    }

private:
    std::vector<VertexSet> rows_;
};

/// Same result as image_after_stepwise, by repeated squaring of the reach relation.
inline VertexSet image_after_doubling(const Digraph& g, VertexSet s, std::uint64_t steps)
{
    if (steps == 0)
        return s;
    ReachPower power = ReachPower::one_step(g);
    while (true) {
        if (steps & 1u)
            s = power.apply(s);
        steps >>= 1;
        if (steps == 0 || s.empty())
            return s;
        power = power.squared();
    }
}

/// Vertices reachable from s by walks of exactly `steps` edges.
inline VertexSet image_after(const Digraph& g, const VertexSet& s, std::uint64_t steps)
{
    if (steps > 4 * static_cast<std::uint64_t>(g.vertex_count()))
        return image_after_doubling(g, s, steps);
    return image_after_stepwise(g, s, steps);
}

/// Least m such that every vertex reaches every vertex by a walk of length m.
inline std::uint64_t primitivity_exponent(const Digraph& g)
{
    const std::size_t n = g.vertex_count();
    if (n == 0)
        throw DomainError("primitivity exponent of an empty digraph");
    for (std::size_t v = 0; v < n; ++v)
        if (g.out_neighbors(v).empty() || g.in_neighbors(v).empty())
            throw SearchFailure("not primitive: vertex '" + g.label(v) + "' is a source or sink");

    // sources[u] = vertices whose current image contains u. Propagating these
    // columns costs one pass over the edges per step.
    std::vector<VertexSet> sources;
    sources.reserve(n);
    for (std::size_t v = 0; v < n; ++v)
        sources.push_back(VertexSet::singleton(n, v));

    const std::uint64_t cutoff = wielandt_bound(n);
    std::vector<VertexSet> next(n, VertexSet(n));
    for (std::uint64_t m = 1; m <= cutoff; ++m) {
        bool all_full = true;
        bool changed = false;
        for (std::size_t w = 0; w < n; ++w) {
            next[w].clear();
            for (std::size_t u : g.in_neighbors(w))
                next[w] |= sources[u];
            all_full = all_full && next[w].is_full();
            changed = changed || next[w] != sources[w];
        }
        if (all_full)
            return m;
        if (!changed)
            break;   // fixed point short of full coverage
        sources.swap(next);
    }
    throw SearchFailure("not primitive");
}

/// Least m with image_after(g, {source}, m) = V.
inline std::uint64_t covering_time(const Digraph& g, std::size_t source)
{
    if (!g.every_vertex_has_in_edge())
        throw DomainError("covering time needs every vertex to have an incoming edge");
    const std::size_t n = g.vertex_count();
    VertexSet s = VertexSet::singleton(n, source);
    const std::uint64_t cutoff = wielandt_bound(n);
    for (std::uint64_t m = 0; m <= cutoff; ++m) {
        if (s.is_full())
            return m;
        s = image_step(g, s);
    }
    throw SearchFailure("never covers: '" + g.label(source) + "' does not reach every vertex at a common length");
}

/// The image of `source` after `steps` steps misses `avoided`. Only constructible when true.
class AvoidanceWitness {
public:
    static AvoidanceWitness verified(const Digraph& g, std::size_t source, std::size_t avoided, std::uint64_t steps)
    {
        if (image_after(g, VertexSet::singleton(g.vertex_count(), source), steps).contains(avoided))
            throw DomainError("'" + g.label(avoided) + "' is reached from '" + g.label(source) + "' in " +
                              std::to_string(steps) + " steps");
        return AvoidanceWitness(source, avoided, steps);
    }

    std::size_t source() const { return source_; }
    std::size_t avoided() const { return avoided_; }
    std::uint64_t steps() const { return steps_; }

private:
    AvoidanceWitness(std::size_t source, std::size_t avoided, std::uint64_t steps)
        : source_(source), avoided_(avoided), steps_(steps)
    {
    }

    std::size_t source_;
    std::size_t avoided_;
    std::uint64_t steps_;
};

/// Largest m below the covering time of `source` whose image misses `avoided`.
inline AvoidanceWitness last_avoidance(const Digraph& g, std::size_t source, std::size_t avoided)
{
    const std::uint64_t cover = covering_time(g, source);
    VertexSet s = VertexSet::singleton(g.vertex_count(), source);
    std::optional<std::uint64_t> last;
    for (std::uint64_t m = 0; m < cover; ++m) {
        if (!s.contains(avoided))
            last = m;
        s = image_step(g, s);
    }
    if (!last)
        throw SearchFailure("'" + g.label(avoided) + "' lies in every image of '" + g.label(source) + "' before coverage");
    return AvoidanceWitness::verified(g, source, avoided, *last);
}

/// True iff the image of `source` after `steps` steps is disjoint from `targets`.
inline bool avoidance_at(const Digraph& g, std::size_t source, const VertexSet& targets, std::uint64_t steps)
{
    if (steps == 0)
        throw DomainError("avoidance_at needs at least one step");
    return !image_after(g, VertexSet::singleton(g.vertex_count(), source), steps).intersects(targets);
}

/// A walk of exactly `steps` edges from source to target, if one exists.
inline std::optional<std::vector<std::size_t>> walk_of_length(const Digraph& g, std::size_t source, std::size_t target,
                                                              std::uint64_t steps)
{
    constexpr std::uint64_t max_steps = std::uint64_t{1} << 20;
    if (steps > max_steps)
        throw DomainError("walk reconstruction is limited to " + std::to_string(max_steps) + " steps");
    std::vector<VertexSet> layers{VertexSet::singleton(g.vertex_count(), source)};
    for (std::uint64_t t = 0; t < steps; ++t)
        layers.push_back(image_step(g, layers.back()));
    if (!layers.back().contains(target))
        return std::nullopt;

    std::vector<std::size_t> walk(steps + 1);
    walk[steps] = target;
    for (std::uint64_t t = steps; t > 0; --t) {
        const std::size_t cur = walk[t];
        bool found = false;
        for (std::size_t u : g.in_neighbors(cur)) {
            if (layers[t - 1].contains(u)) {
                walk[t - 1] = u;
                found = true;
                break;
            }
        }
        ensure(found, "walk reconstruction lost its predecessor");
    }
    return walk;
}

} // namespace fibercone
