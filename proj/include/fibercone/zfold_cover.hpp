#pragma once

// Short simple loops in the Z-fold cover of a 3-regular graph.
//
// An integer cochain d on a finite 3-regular graph G determines a cover G'
// whose vertices are pairs (v, level); an edge e from u to v lifts to edges
// from (u, l) to (v, l + d(e)). If |d| <= k, then G' has a simple loop of
// length at most 2R, where R is the least radius at which a 3-valent tree
// would need more edges than the (2Rk+1) levels reachable in R steps hold.

#include "fibercone/errors.hpp"
#include "fibercone/numeric.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fibercone {

/// Oriented edge u -> v carrying d; the reverse orientation carries -d.
struct CochainEdge {
    std::size_t u;
    std::size_t v;
    std::int64_t d;

    friend bool operator==(const CochainEdge&, const CochainEdge&) = default;
};

class CochainGraph {
public:
    struct Incidence {
        std::size_t edge;
        bool forward;          // traversed u -> v
        std::size_t other;
        std::int64_t shift;    // level change along this traversal
    };

    CochainGraph(std::size_t vertex_count, std::vector<CochainEdge> edges)
        : vertex_count_(vertex_count), edges_(std::move(edges)), incidences_(vertex_count)
    {
        if (vertex_count_ == 0)
            throw DomainError("cochain graph needs at least one vertex");
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const auto& edge = edges_[e];
            if (edge.u >= vertex_count_ || edge.v >= vertex_count_)
                throw DomainError("edge " + std::to_string(e) + " has an endpoint out of range");
            if (edge.d == std::numeric_limits<std::int64_t>::min())
                throw DomainError("cochain value out of range");
            incidences_[edge.u].push_back({e, true, edge.v, edge.d});
            incidences_[edge.v].push_back({e, false, edge.u, -edge.d});
        }
        for (std::size_t v = 0; v < vertex_count_; ++v)
            if (incidences_[v].size() != 3)   // a loop contributes two incidences
                throw DomainError("vertex " + std::to_string(v) + " has degree " +
                                  std::to_string(incidences_[v].size()) + ", expected 3");
    }

    std::size_t vertex_count() const { return vertex_count_; }
    const std::vector<CochainEdge>& edges() const { return edges_; }
    const std::vector<Incidence>& incidences(std::size_t v) const { return incidences_.at(v); }

    std::int64_t max_abs_cochain() const
    {
        std::int64_t k = 0;
        for (const auto& e : edges_)
            k = std::max(k, e.d < 0 ? -e.d : e.d);
        return k;
    }

private:
    std::size_t vertex_count_;
    std::vector<CochainEdge> edges_;
    std::vector<std::vector<Incidence>> incidences_;
};

/// Least R >= 1 with 3(2^R - 1) > (2Rk + 1)|E|.
inline std::uint64_t lemma_R(std::uint64_t k, std::uint64_t edge_count)
{
    if (edge_count == 0)
        throw DomainError("lemma_R needs at least one edge");
    for (std::uint64_t r = 1; r < 120; ++r) {
        const Integer tree_edges = 3 * (pow(Integer(2), static_cast<unsigned>(r)) - 1);
        const Integer level_edges = (Integer(2) * r * k + 1) * edge_count;
        if (tree_edges > level_edges)
            return r;
    }
    throw DomainError("lemma_R out of range");
}

struct CoverVertex {
    std::size_t vertex;
    std::int64_t level;

    friend auto operator<=>(const CoverVertex&, const CoverVertex&) = default;
};

struct CoverStep {
    std::size_t edge;
    bool forward;

    friend bool operator==(const CoverStep&, const CoverStep&) = default;
};

/// Closed walk in the cover, as a start vertex and a sequence of edge traversals.
struct CoverLoop {
    CoverVertex start;
    std::vector<CoverStep> steps;

    std::size_t length() const { return steps.size(); }
};

/// Levels [-L, L] of the cover, indexed densely.
class CoverWindow {
public:
    CoverWindow(const CochainGraph& g, std::int64_t half_width) : g_(g), half_width_(half_width)
    {
        if (half_width < 0)
            throw DomainError("window half-width must be nonnegative");
    }

    std::int64_t half_width() const { return half_width_; }
    std::size_t size() const { return g_.vertex_count() * static_cast<std::size_t>(2 * half_width_ + 1); }
    bool contains(const CoverVertex& x) const { return x.level >= -half_width_ && x.level <= half_width_; }

    std::size_t index(const CoverVertex& x) const
    {
        if (!contains(x))
            throw DomainError("cover vertex outside the window");
        return x.vertex * static_cast<std::size_t>(2 * half_width_ + 1) + static_cast<std::size_t>(x.level + half_width_);
    }

    /// Identifier of the lifted edge: base edge and the level of its u-end.
    std::pair<std::size_t, std::int64_t> lifted_edge(const CoverVertex& from, const CoverStep& step) const
    {
        const auto& e = g_.edges()[step.edge];
        return {step.edge, step.forward ? from.level : from.level - e.d};
    }

private:
    const CochainGraph& g_;
    std::int64_t half_width_;
};

/// Vertices visited by the loop, start repeated at the end. Throws on an invalid traversal.
inline std::vector<CoverVertex> loop_vertices(const CochainGraph& g, const CoverLoop& loop)
{
    std::vector<CoverVertex> out{loop.start};
    for (const CoverStep& s : loop.steps) {
        if (s.edge >= g.edges().size())
            throw DomainError("loop uses unknown edge " + std::to_string(s.edge));
        const auto& e = g.edges()[s.edge];
        const CoverVertex cur = out.back();
        if (cur.vertex != (s.forward ? e.u : e.v))
            throw DomainError("loop step " + std::to_string(out.size() - 1) + " does not start at the current vertex");
        out.push_back(s.forward ? CoverVertex{e.v, cur.level + e.d} : CoverVertex{e.u, cur.level - e.d});
    }
    return out;
}

enum class LoopDefect { None, Empty, InvalidProjection, NotClosed, NotSimple, RepeatedEdge, TooLong };

inline const char* defect_name(LoopDefect d)
{
    switch (d) {
    case LoopDefect::None: return "ok";
    case LoopDefect::Empty: return "empty";
    case LoopDefect::InvalidProjection: return "invalid-projection";
    case LoopDefect::NotClosed: return "not-closed";
    case LoopDefect::NotSimple: return "not-simple";
    case LoopDefect::RepeatedEdge: return "repeated-edge";
    case LoopDefect::TooLong: return "too-long";
    }
    return "unknown";
}

struct LoopCheck {
    LoopDefect defect = LoopDefect::None;
    std::uint64_t bound = 0;   // 2 * lemma_R(max |d|, |E|)

    bool ok() const { return defect == LoopDefect::None; }
};

inline LoopCheck verify_loop(const CochainGraph& g, const CoverLoop& loop)
{
    LoopCheck check;
    check.bound = 2 * lemma_R(static_cast<std::uint64_t>(g.max_abs_cochain()), g.edges().size());
    if (loop.steps.empty()) {
        check.defect = LoopDefect::Empty;
        return check;
    }
    std::vector<CoverVertex> vs;
    try {
        vs = loop_vertices(g, loop);
    } catch (const DomainError&) {
        check.defect = LoopDefect::InvalidProjection;
        return check;
    }
    if (loop.start.vertex >= g.vertex_count()) {
        check.defect = LoopDefect::InvalidProjection;
        return check;
    }
    if (vs.back() != vs.front()) {
        check.defect = LoopDefect::NotClosed;
        return check;
    }
    const std::set<CoverVertex> distinct(vs.begin(), vs.end() - 1);
    if (distinct.size() != vs.size() - 1) {
        check.defect = LoopDefect::NotSimple;
        return check;
    }
    std::set<std::pair<std::size_t, std::int64_t>> used;
    for (std::size_t i = 0; i < loop.steps.size(); ++i) {
        const auto& s = loop.steps[i];
        const auto& e = g.edges()[s.edge];
        const std::int64_t u_level = s.forward ? vs[i].level : vs[i].level - e.d;
        if (!used.emplace(s.edge, u_level).second) {
            check.defect = LoopDefect::RepeatedEdge;
            return check;
        }
    }
    if (loop.length() > check.bound)
        check.defect = LoopDefect::TooLong;
    return check;
}

/// Shortest simple loop through the lifts of G, found by breadth-first search
/// from every level-0 vertex out to radius R inside the window L = Rk + 1.
inline CoverLoop find_short_loop(const CochainGraph& g)
{
    const auto k = static_cast<std::uint64_t>(g.max_abs_cochain());
    const std::uint64_t radius = lemma_R(k, g.edges().size());
    const CoverWindow window(g, static_cast<std::int64_t>(radius * k + 1));

    constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(window.size(), unseen);
    std::vector<CoverVertex> parent(window.size());
    std::vector<CoverStep> parent_step(window.size());
    std::optional<CoverLoop> best;

    auto path_up = [&](CoverVertex x, CoverVertex stop) {
        std::vector<CoverStep> steps;   // from stop down to x, in walk order
        while (x != stop) {
            const std::size_t ix = window.index(x);
            steps.push_back(parent_step[ix]);
            x = parent[ix];
        }
        std::reverse(steps.begin(), steps.end());
        return steps;
    };

    for (std::size_t root_vertex = 0; root_vertex < g.vertex_count(); ++root_vertex) {
        const CoverVertex root{root_vertex, 0};
        std::vector<CoverVertex> order{root};
        dist[window.index(root)] = 0;
        for (std::size_t head = 0; head < order.size(); ++head) {
            const CoverVertex x = order[head];
            const std::size_t dx = dist[window.index(x)];
            if (dx >= radius)
                continue;
            for (const auto& inc : g.incidences(x.vertex)) {
                const CoverVertex y{inc.other, x.level + inc.shift};
                ensure(window.contains(y), "cover search left the window");
                const std::size_t iy = window.index(y);
                if (dist[iy] != unseen)
                    continue;
                dist[iy] = dx + 1;
                parent[iy] = x;
                parent_step[iy] = {inc.edge, inc.forward};
                order.push_back(y);
            }
        }

        for (const CoverVertex& x : order) {
            const std::size_t ix = window.index(x);
            for (const auto& inc : g.incidences(x.vertex)) {
                const CoverVertex y{inc.other, x.level + inc.shift};
                if (!window.contains(y))   // only reachable past the search radius
                    continue;
                const std::size_t iy = window.index(y);
                if (dist[iy] == unseen)
                    continue;
                const CoverStep step{inc.edge, inc.forward};
                const auto lifted = window.lifted_edge(x, step);
                const bool tree_edge_of_x = x != root && window.lifted_edge(parent[ix], parent_step[ix]) == lifted;
                const bool tree_edge_of_y = y != root && window.lifted_edge(parent[iy], parent_step[iy]) == lifted;
                if (tree_edge_of_x || tree_edge_of_y)
                    continue;
                const std::size_t candidate = dist[ix] + dist[iy] + 1;
                if (best && candidate >= best->length())
                    continue;

                // Lowest common ancestor of x and y in the search tree.
                CoverVertex a = x;
                CoverVertex b = y;
                while (dist[window.index(a)] > dist[window.index(b)])
                    a = parent[window.index(a)];
                while (dist[window.index(b)] > dist[window.index(a)])
                    b = parent[window.index(b)];
                while (a != b) {
                    a = parent[window.index(a)];
                    b = parent[window.index(b)];
                }
                CoverLoop loop{a, path_up(x, a)};
                loop.steps.push_back(step);
                std::vector<CoverStep> back = path_up(y, a);
                std::reverse(back.begin(), back.end());
                for (auto s : back)
                    loop.steps.push_back({s.edge, !s.forward});
                if (!best || loop.length() < best->length())
                    best = std::move(loop);
            }
        }
        for (const CoverVertex& x : order)
            dist[window.index(x)] = unseen;
    }

    if (!best)
        throw InternalError("no loop found within the cover window");
    const LoopCheck check = verify_loop(g, *best);
    ensure(check.ok(), std::string("cover loop failed verification: ") + defect_name(check.defect));
    return *best;
}

/// Two vertices joined by three parallel edges u -> v with cochain values d0, d1, d2.
inline CochainGraph theta_graph(std::int64_t d0, std::int64_t d1, std::int64_t d2)
{
    return CochainGraph(2, {{0, 1, d0}, {0, 1, d1}, {0, 1, d2}});
}

/// Uniform random pairing of 3n half-edges; pairings with loops or parallel
/// edges are rejected and redrawn. Cochain values are uniform in [-max_abs_d, max_abs_d].
inline CochainGraph random_cubic_graph(std::size_t vertex_count, std::int64_t max_abs_d, std::mt19937_64& rng)
{
    if (vertex_count < 4 || vertex_count % 2 != 0)
        throw DomainError("a simple 3-regular graph needs an even vertex count >= 4");
    std::vector<std::size_t> stubs;
    for (std::size_t v = 0; v < vertex_count; ++v)
        for (int c = 0; c < 3; ++c)
            stubs.push_back(v);
    std::uniform_int_distribution<std::int64_t> cochain(-max_abs_d, max_abs_d);
    while (true) {
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::set<std::pair<std::size_t, std::size_t>> seen;
        bool simple = true;
        for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
            const auto u = std::min(stubs[i], stubs[i + 1]);
            const auto v = std::max(stubs[i], stubs[i + 1]);
            simple = u != v && seen.emplace(u, v).second;
        }
        if (!simple)
            continue;
        std::vector<CochainEdge> edges;
        for (const auto& [u, v] : seen)
            edges.push_back({u, v, cochain(rng)});
        return CochainGraph(vertex_count, std::move(edges));
    }
}

// ---------------------------------------------------------------------------
// JSON: {"vertices": N | [labels...], "edges": [{"u": 0, "v": 1, "d": -1}, ...]}

inline CochainGraph cochain_graph_from_json(const nlohmann::json& doc)
{
    try {
        const auto& vs = doc.at("vertices");
        const std::size_t count = vs.is_array() ? vs.size() : vs.get<std::size_t>();
        std::vector<CochainEdge> edges;
        for (const auto& e : doc.at("edges"))
            edges.push_back({e.at("u").get<std::size_t>(), e.at("v").get<std::size_t>(), e.value("d", std::int64_t{0})});
        return CochainGraph(count, std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed cochain graph document: ") + e.what());
    }
}

inline nlohmann::json to_json(const CochainGraph& g)
{
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges())
        edges.push_back({{"u", e.u}, {"v", e.v}, {"d", e.d}});
    return {{"vertices", g.vertex_count()}, {"edges", edges}};
}

inline nlohmann::json to_json(const CochainGraph& g, const CoverLoop& loop)
{
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& v : loop_vertices(g, loop))
        vertices.push_back({{"vertex", v.vertex}, {"level", v.level}});
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : loop.steps)
        steps.push_back({{"edge", s.edge}, {"forward", s.forward}});
    const LoopCheck check = verify_loop(g, loop);
    return {{"length", loop.length()},
            {"vertices", vertices},
            {"steps", steps},
            {"certificate",
             {{"verified", check.ok()},
              {"reason", defect_name(check.defect)},
              {"k", g.max_abs_cochain()},
              {"edge_count", g.edges().size()},
              {"R", lemma_R(static_cast<std::uint64_t>(g.max_abs_cochain()), g.edges().size())},
              {"bound", check.bound}}}};
}

} // namespace fibercone
