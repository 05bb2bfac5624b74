#include "fibercone/zfold_cover.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fibercone;

namespace {

// Cube graph Q3 with the zero cochain; Gray-code order gives a Hamiltonian cycle.
CochainGraph cube_graph()
{
    std::vector<CochainEdge> edges;
    for (std::size_t v = 0; v < 8; ++v)
        for (std::size_t bit : {1u, 2u, 4u})
            if (v < (v ^ bit))
                edges.push_back({v, v ^ bit, 0});
    return CochainGraph(8, edges);
}

std::size_t edge_index(const CochainGraph& g, std::size_t a, std::size_t b)
{
    for (std::size_t e = 0; e < g.edges().size(); ++e)
        if ((g.edges()[e].u == a && g.edges()[e].v == b) || (g.edges()[e].u == b && g.edges()[e].v == a))
            return e;
    throw std::logic_error("no such edge");
}

} // namespace

TEST(ZfoldCover, LemmaRExamples)
{
    EXPECT_EQ(lemma_R(1, 3), 4u);
    EXPECT_EQ(lemma_R(0, 3), 2u);
    EXPECT_EQ(lemma_R(2, 30), 9u);
    EXPECT_THROW(lemma_R(1, 0), DomainError);
}

TEST(ZfoldCover, LemmaRIsMinimal)
{
    for (std::uint64_t k = 0; k <= 6; ++k)
        for (std::uint64_t e = 1; e <= 60; ++e) {
            const auto r = lemma_R(k, e);
            auto holds = [&](std::uint64_t x) { return 3 * ((std::uint64_t{1} << x) - 1) > (2 * x * k + 1) * e; };
            EXPECT_TRUE(holds(r));
            if (r > 1) {
                EXPECT_FALSE(holds(r - 1));
            }
        }
}

TEST(ZfoldCover, GraphValidation)
{
    EXPECT_THROW(CochainGraph(2, {{0, 1, 0}}), DomainError);
    EXPECT_THROW(CochainGraph(2, {{0, 2, 0}, {0, 1, 0}, {0, 1, 0}}), DomainError);
    EXPECT_THROW(CochainGraph(0, {}), DomainError);
    // A self-loop counts twice toward the degree.
    EXPECT_NO_THROW(CochainGraph(2, {{0, 0, 1}, {0, 1, 0}, {1, 1, 2}}));
}

TEST(ZfoldCover, ThetaExample)
{
    const CochainGraph g = theta_graph(-1, 0, 1);
    const CoverLoop loop = find_short_loop(g);
    const LoopCheck check = verify_loop(g, loop);
    EXPECT_TRUE(check.ok());
    EXPECT_EQ(loop.length(), 4u);
    EXPECT_EQ(check.bound, 8u);
    // Two distinct lifts of the d = 0 edge.
    const auto vs = loop_vertices(g, loop);
    std::set<std::int64_t> lifts;
    for (std::size_t i = 0; i < loop.steps.size(); ++i)
        if (loop.steps[i].edge == 1)
            lifts.insert(loop.steps[i].forward ? vs[i].level : vs[i + 1].level);
    EXPECT_EQ(lifts.size(), 2u);
}

TEST(ZfoldCover, VerifyRejectsBadLoops)
{
    const CochainGraph g = theta_graph(-1, 0, 1);
    EXPECT_EQ(verify_loop(g, {{0, 0}, {}}).defect, LoopDefect::Empty);

    const CoverLoop backtrack{{0, 0}, {{0, true}, {0, false}}};
    EXPECT_FALSE(verify_loop(g, backtrack).ok());
    EXPECT_EQ(verify_loop(g, backtrack).defect, LoopDefect::RepeatedEdge);

    const CoverLoop open{{0, 0}, {{1, true}, {0, false}}};
    EXPECT_EQ(verify_loop(g, open).defect, LoopDefect::NotClosed);

    const CoverLoop wrong_start{{1, 0}, {{1, true}}};
    EXPECT_EQ(verify_loop(g, wrong_start).defect, LoopDefect::InvalidProjection);
    const CoverLoop unknown_edge{{0, 0}, {{7, true}}};
    EXPECT_EQ(verify_loop(g, unknown_edge).defect, LoopDefect::InvalidProjection);

    // Figure-eight through the same cover vertex twice.
    const CochainGraph z = theta_graph(0, 0, 0);
    const CoverLoop eight{{0, 0}, {{0, true}, {1, false}, {0, true}, {2, false}}};
    EXPECT_EQ(verify_loop(z, eight).defect, LoopDefect::NotSimple);
}

TEST(ZfoldCover, VerifyFlagsLoopsBeyondTheBound)
{
    const CochainGraph g = cube_graph();
    const std::size_t gray[] = {0, 1, 3, 2, 6, 7, 5, 4, 0};
    CoverLoop loop{{0, 0}, {}};
    for (std::size_t i = 0; i + 1 < std::size(gray); ++i) {
        const std::size_t e = edge_index(g, gray[i], gray[i + 1]);
        loop.steps.push_back({e, g.edges()[e].u == gray[i]});
    }
    const auto check = verify_loop(g, loop);
    EXPECT_EQ(check.bound, 6u);
    EXPECT_EQ(check.defect, LoopDefect::TooLong);
    EXPECT_EQ(find_short_loop(g).length(), 4u);
}

TEST(ZfoldCover, SelfLoopGraphs)
{
    const CochainGraph flat(2, {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}});
    EXPECT_EQ(find_short_loop(flat).length(), 1u);
    const CochainGraph shifted(2, {{0, 0, 1}, {0, 1, 0}, {1, 1, -1}});
    const CoverLoop loop = find_short_loop(shifted);
    EXPECT_TRUE(verify_loop(shifted, loop).ok());
}

TEST(ZfoldCover, JsonRoundTrip)
{
    std::mt19937_64 rng(11);
    const CochainGraph g = random_cubic_graph(10, 3, rng);
    const CochainGraph h = cochain_graph_from_json(nlohmann::json::parse(to_json(g).dump()));
    EXPECT_EQ(h.edges(), g.edges());
    EXPECT_EQ(h.vertex_count(), g.vertex_count());
    const auto doc = to_json(g, find_short_loop(g));
    EXPECT_TRUE(doc["certificate"]["verified"].get<bool>());
    EXPECT_THROW(cochain_graph_from_json(nlohmann::json::parse(R"({"edges": []})")), FormatError);
    EXPECT_EQ(cochain_graph_from_json(nlohmann::json::parse(
                  R"({"vertices": ["p", "q"], "edges": [{"u":0,"v":1,"d":-1},{"u":0,"v":1},{"u":0,"v":1,"d":1}]})"))
                  .edges()[1]
                  .d,
              0);
}

TEST(ZfoldCover, RandomCubicGraphsAreSimpleAndSeeded)
{
    std::mt19937_64 a(5);
    std::mt19937_64 b(5);
    const CochainGraph g = random_cubic_graph(12, 3, a);
    EXPECT_EQ(g.edges(), random_cubic_graph(12, 3, b).edges());
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& e : g.edges()) {
        EXPECT_NE(e.u, e.v);
        EXPECT_TRUE(pairs.emplace(e.u, e.v).second);
        EXPECT_LE(std::abs(e.d), 3);
    }
    EXPECT_THROW(random_cubic_graph(7, 1, a), DomainError);
}

TEST(ZfoldCoverProperty, LemmaBoundOnRandomGraphs)
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> half(4, 10);
    for (int trial = 0; trial < 100; ++trial) {
        const CochainGraph g = random_cubic_graph(2 * half(rng), 3, rng);
        const CoverLoop loop = find_short_loop(g);
        const LoopCheck check = verify_loop(g, loop);
        ASSERT_TRUE(check.ok()) << "trial " << trial << ": " << defect_name(check.defect);
        ASSERT_LE(loop.length(), check.bound);
        // Window sufficiency: a loop of length <= 2R stays within levels [-Rk, Rk] of its start.
        const auto k = g.max_abs_cochain();
        const auto r = static_cast<std::int64_t>(lemma_R(static_cast<std::uint64_t>(k), g.edges().size()));
        for (const auto& v : loop_vertices(g, loop))
            ASSERT_LE(std::abs(v.level - loop.start.level), r * k);
    }
}
