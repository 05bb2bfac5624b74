#pragma once

// Finite directed multigraphs with labelled vertices, the train-track digraphs
// of the classes (1,j,k)+, and their JSON/DOT serializations.

#include "fibercone/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace fibercone {

struct Edge {
    std::size_t from;
    std::size_t to;
    std::uint64_t multiplicity;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable directed multigraph. Parallel edges are stored as one Edge with a multiplicity.
class Digraph {
public:
    Digraph() = default;

    static Digraph from_edges(std::vector<std::string> labels, const std::vector<Edge>& edges)
    {
        Digraph g;
        g.labels_ = std::move(labels);
        g.index_labels();
        std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> merged;
        for (const Edge& e : edges) {
            if (e.from >= g.labels_.size() || e.to >= g.labels_.size())
                throw FormatError("edge endpoint out of range");
            if (e.multiplicity > 0)
                merged[{e.from, e.to}] += e.multiplicity;
        }
        for (const auto& [key, mult] : merged)
            g.edges_.push_back({key.first, key.second, mult});
        g.index_edges();
        return g;
    }

    /// matrix[i][j] is the number of edges from vertex j to vertex i.
    static Digraph from_matrix(std::vector<std::string> labels, const std::vector<std::vector<std::uint64_t>>& matrix)
    {
        const std::size_t n = labels.size();
        if (matrix.size() != n)
            throw FormatError("adjacency matrix has " + std::to_string(matrix.size()) + " rows for " + std::to_string(n) + " labels");
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < n; ++i) {
            if (matrix[i].size() != n)
                throw FormatError("adjacency matrix is not square (row " + std::to_string(i) + ")");
            for (std::size_t j = 0; j < n; ++j)
                if (matrix[i][j] > 0)
                    edges.push_back({j, i, matrix[i][j]});
        }
        return from_edges(std::move(labels), edges);
    }

    std::size_t vertex_count() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t v) const { return labels_.at(v); }

    std::size_t index_of(const std::string& label) const
    {
        const auto it = index_.find(label);
        if (it == index_.end())
            throw DomainError("unknown vertex label '" + label + "'");
        return it->second;
    }

    /// Edges sorted by (from, to), one entry per distinct pair.
    const std::vector<Edge>& edges() const { return edges_; }

    /// Total number of edges counting multiplicity.
    std::uint64_t edge_count() const
    {
        std::uint64_t total = 0;
        for (const Edge& e : edges_)
            total += e.multiplicity;
        return total;
    }

    std::span<const std::size_t> out_neighbors(std::size_t v) const { return out_.at(v); }
    std::span<const std::size_t> in_neighbors(std::size_t v) const { return in_.at(v); }

    std::uint64_t multiplicity(std::size_t from, std::size_t to) const
    {
        const auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{from, to},
                                         [](const Edge& e, const std::pair<std::size_t, std::size_t>& key) {
                                             return std::pair{e.from, e.to} < key;
                                         });
        if (it != edges_.end() && it->from == from && it->to == to)
            return it->multiplicity;
        return 0;
    }

    bool has_edge(std::size_t from, std::size_t to) const { return multiplicity(from, to) > 0; }

    std::vector<std::vector<std::uint64_t>> adjacency_matrix() const
    {
        std::vector<std::vector<std::uint64_t>> m(vertex_count(), std::vector<std::uint64_t>(vertex_count(), 0));
        for (const Edge& e : edges_)
            m[e.to][e.from] = e.multiplicity;
        return m;
    }

    bool every_vertex_has_in_edge() const
    {
        return std::none_of(in_.begin(), in_.end(), [](const auto& in) { return in.empty(); });
    }

    friend bool operator==(const Digraph& a, const Digraph& b)
    {
        return a.labels_ == b.labels_ && a.edges_ == b.edges_;
    }

private:
    void index_labels()
    {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (!index_.emplace(labels_[i], i).second)
                throw FormatError("duplicate vertex label '" + labels_[i] + "'");
    }

    void index_edges()
    {
        out_.assign(labels_.size(), {});
        in_.assign(labels_.size(), {});
        for (const Edge& e : edges_) {
            out_[e.from].push_back(e.to);
            in_[e.to].push_back(e.from);
        }
    }

    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

// ---------------------------------------------------------------------------
// Train-track digraphs of (1,j,k)+

class MagicDigraphSpec {
public:
    MagicDigraphSpec(std::size_t j, std::size_t k) : j_(j), k_(k)
    {
        if (j == 0 || k == 0)
            throw DomainError("digraph of (1,j,k)+ needs j >= 1 and k >= 1");
    }

    std::size_t j() const { return j_; }
    std::size_t k() const { return k_; }

    // Vertex order: s, a_1..a_k, r_1..r_j, b_1..b_k.
    std::size_t vertex_count() const { return 1 + j_ + 2 * k_; }
    std::size_t s() const { return 0; }
    std::size_t a(std::size_t i) const { return checked(i, k_, 'a'); }
    std::size_t r(std::size_t i) const { return k_ + checked(i, j_, 'r'); }
    std::size_t b(std::size_t i) const { return k_ + j_ + checked(i, k_, 'b'); }

private:
    static std::size_t checked(std::size_t i, std::size_t limit, char family)
    {
        if (i < 1 || i > limit)
            throw DomainError(std::string("vertex index ") + family + std::to_string(i) + " out of range");
        return i;
    }

    std::size_t j_;
    std::size_t k_;
};

/// Gamma_{(1,j,k)+}. For k = 1 the edge b_1 -> a_1 is absent and a_1 carries a self-loop.
inline Digraph build_magic_digraph(const MagicDigraphSpec& spec)
{
    const std::size_t j = spec.j();
    const std::size_t k = spec.k();

    std::vector<std::string> labels;
    labels.reserve(spec.vertex_count());
    labels.emplace_back("s");
    for (std::size_t i = 1; i <= k; ++i)
        labels.push_back("a" + std::to_string(i));
    for (std::size_t i = 1; i <= j; ++i)
        labels.push_back("r" + std::to_string(i));
    for (std::size_t i = 1; i <= k; ++i)
        labels.push_back("b" + std::to_string(i));

    std::vector<Edge> edges;
    auto add = [&](std::size_t from, std::size_t to) { edges.push_back({from, to, 1}); };

    add(spec.s(), spec.a(1));
    for (std::size_t i = 1; i < k; ++i)
        add(spec.a(i), spec.a(i + 1));
    add(spec.a(k), spec.a(1));
    add(spec.a(k), spec.s());
    add(spec.a(k), spec.r(1));
    for (std::size_t i = 1; i < j; ++i)
        add(spec.r(i), spec.r(i + 1));
    add(spec.r(j), spec.s());
    add(spec.r(j), spec.b(1));
    for (std::size_t i = 1; i < k; ++i)
        add(spec.b(i), spec.b(i + 1));
    if (k > 1)
        add(spec.b(k), spec.a(1));
    add(spec.b(k), spec.r(1));

    return Digraph::from_edges(std::move(labels), edges);
}

struct PathCertificate {
    std::string name;
    std::vector<std::size_t> walk;   // vertex sequence, walk.size() - 1 edges

    std::size_t length() const { return walk.empty() ? 0 : walk.size() - 1; }
};

/// The four walks the edge-path arguments for Gamma_{(1,j,k)+} rely on:
/// three cycles through a_k and the path r_1 -> ... -> s
/// of length j+2k through every vertex.
inline std::array<PathCertificate, 4> certify_edge_paths(const MagicDigraphSpec& spec, const Digraph& g)
{
    const std::size_t j = spec.j();
    const std::size_t k = spec.k();
    if (k < 2)
        throw DomainError("path certificates need k >= 2");
    if (g.vertex_count() != spec.vertex_count())
        throw DomainError("digraph does not match the (1,j,k)+ layout");

    auto a_chain = [&](std::vector<std::size_t>& w) {
        for (std::size_t i = 1; i <= k; ++i)
            w.push_back(spec.a(i));
    };

    std::array<PathCertificate, 4> certs;

    certs[0].name = "cycle a_k -> a_1 -> ... -> a_k";
    certs[0].walk.push_back(spec.a(k));
    a_chain(certs[0].walk);

    certs[1].name = "cycle a_k -> s -> a_1 -> ... -> a_k";
    certs[1].walk = {spec.a(k), spec.s()};
    a_chain(certs[1].walk);

    certs[2].name = "cycle a_k -> r_1 -> ... -> r_j -> s -> a_1 -> ... -> a_k";
    certs[2].walk.push_back(spec.a(k));
    for (std::size_t i = 1; i <= j; ++i)
        certs[2].walk.push_back(spec.r(i));
    certs[2].walk.push_back(spec.s());
    a_chain(certs[2].walk);

    certs[3].name = "path r_1 -> ... -> r_j -> b_1 -> ... -> b_k -> a_1 -> ... -> a_k -> s";
    for (std::size_t i = 1; i <= j; ++i)
        certs[3].walk.push_back(spec.r(i));
    for (std::size_t i = 1; i <= k; ++i)
        certs[3].walk.push_back(spec.b(i));
    a_chain(certs[3].walk);
    certs[3].walk.push_back(spec.s());

    const std::array<std::size_t, 4> expected_lengths{k, k + 1, j + k + 1, j + 2 * k};
    for (std::size_t c = 0; c < certs.size(); ++c) {
        const auto& w = certs[c].walk;
        for (std::size_t step = 0; step + 1 < w.size(); ++step)
            ensure(g.has_edge(w[step], w[step + 1]),
                   certs[c].name + ": missing edge " + g.label(w[step]) + " -> " + g.label(w[step + 1]));
        ensure(certs[c].length() == expected_lengths[c], certs[c].name + ": unexpected length");
    }
    for (std::size_t c = 0; c < 3; ++c)
        ensure(certs[c].walk.front() == certs[c].walk.back(), certs[c].name + ": not closed");

    std::vector<bool> seen(g.vertex_count(), false);
    for (std::size_t v : certs[3].walk)
        seen[v] = true;
    ensure(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }), certs[3].name + ": misses a vertex");
    return certs;
}

// ---------------------------------------------------------------------------
// Serialization

/// {"labels": [...], "adjacency": [[...]]} with adjacency[i][j] = multiplicity of j -> i.
inline nlohmann::json to_json(const Digraph& g)
{
    return nlohmann::json{{"labels", g.labels()}, {"adjacency", g.adjacency_matrix()}};
}

inline Digraph digraph_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object() || !doc.contains("labels") || !doc.contains("adjacency"))
        throw FormatError("digraph document needs 'labels' and 'adjacency'");
    try {
        auto labels = doc.at("labels").get<std::vector<std::string>>();
        auto matrix = doc.at("adjacency").get<std::vector<std::vector<std::uint64_t>>>();
        return Digraph::from_matrix(std::move(labels), matrix);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed digraph document: ") + e.what());
    }
}

/// Graphviz text with one edge line per unit of multiplicity.
inline std::string export_dot(const Digraph& g, const std::string& name = "G")
{
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (const auto& label : g.labels())
        out << "  \"" << label << "\";\n";
    for (const Edge& e : g.edges())
        for (std::uint64_t m = 0; m < e.multiplicity; ++m)
            out << "  \"" << g.label(e.from) << "\" -> \"" << g.label(e.to) << "\";\n";
    out << "}\n";
    return out.str();
}

} // namespace fibercone
