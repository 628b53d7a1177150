#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"

using namespace dacos;

namespace {
CompiledCircuit native(const char* name) {
    const auto p = preset(name);
    return compile_code(p.tableau, p.native);
}

MultiGraph graph_of(std::size_t n, const std::vector<Edge>& edges) {
    MultiGraph g;
    g.n = n;
    for (const auto& [a, b] : edges) g.edges.push_back({a, b, EdgeOrigin::Unknown});
    return g;
}

// Independent check: is there a proper colouring with `colours` colours? Plain backtracking.
bool colourable(const MultiGraph& g, std::size_t colours) {
    std::vector<std::size_t> col(g.edges.size(), 0);
    auto ok = [&](std::size_t e, std::size_t c) {
        for (std::size_t f = 0; f < e; ++f)
            if (col[f] == c && (g.edges[f].u == g.edges[e].u || g.edges[f].u == g.edges[e].v ||
                                g.edges[f].v == g.edges[e].u || g.edges[f].v == g.edges[e].v))
                return false;
        return true;
    };
    auto rec = [&](auto&& self, std::size_t e) -> bool {
        if (e == g.edges.size()) return true;
        for (std::size_t c = 0; c < colours; ++c)
            if (ok(e, c)) {
                col[e] = c;
                if (self(self, e + 1)) return true;
            }
        return false;
    };
    return rec(rec, 0);
}
}  // namespace

TEST(Scheduler, PresetLayerCounts) {
    const std::pair<const char*, std::size_t> want[] = {{"iceberg4", 2}, {"five_one_three", 6}, {"steane", 4}};
    for (const auto& [name, layers] : want) {
        const auto c = native(name);
        const auto g = build_multigraph(c);
        const auto la = chromatic_index(g);
        EXPECT_EQ(la.size(), layers) << name;
        EXPECT_TRUE(la.exact);
        EXPECT_TRUE(verify_layers(g, la));
        const auto prog = schedule_program(c);
        EXPECT_EQ(prog.cz_layers(), layers) << name;
        EXPECT_TRUE(prog.layers_disjoint());
    }
}

TEST(Scheduler, MultiplicityOfPresetGraphs) {
    EXPECT_EQ(build_multigraph(native("steane")).multiplicity(), 1U);
    EXPECT_EQ(build_multigraph(native("five_one_three")).multiplicity(), 2U);
    CompiledCircuit empty;
    empty.n = 3;
    const auto g = build_multigraph(empty);
    EXPECT_TRUE(g.edges.empty());
    EXPECT_EQ(chromatic_index(g).size(), 0U);
    EXPECT_TRUE(verify_layers(g, {}));
}

TEST(Scheduler, ExactAgreesWithBacktrackingOracle) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 3 + rng() % 5;
        std::vector<Edge> edges;
        const std::size_t m = 1 + rng() % 10;
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t a = rng() % n, b = rng() % n;
            if (a == b) continue;
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        if (edges.empty()) continue;
        const auto g = graph_of(n, edges);
        const auto la = chromatic_index(g);
        ASSERT_TRUE(verify_layers(g, la));
        EXPECT_TRUE(colourable(g, la.size()));
        EXPECT_FALSE(colourable(g, la.size() - 1));
    }
}

// Random compiled circuits: bound sandwich, and the heuristic never beats the exact optimum.
TEST(Scheduler, RandomCircuitsRespectBounds) {
    std::mt19937_64 rng(55);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + rng() % 7;
        const auto tab = oracle::random_tableau(n, 1 + rng() % (n - 1), rng);
        const auto c = compile_code(tab);
        const auto g = build_multigraph(c);
        const auto exact = chromatic_index(g, 64);
        ASSERT_TRUE(verify_layers(g, exact));
        const std::size_t d = g.max_degree();
        EXPECT_GE(exact.size(), d);
        EXPECT_LE(exact.size(), (3 * d) / 2);
        EXPECT_LE(exact.size(), g.upper_bound());
        EXPECT_LE(g.multiplicity(), 2U);
        const auto heur = chromatic_index(g, 0);
        if (!g.edges.empty()) {
            EXPECT_FALSE(heur.exact);
            EXPECT_GE(heur.size(), exact.size());
        }
        // Executable program reproduces the encoder's action.
        const auto prog = schedule_program(c);
        ASSERT_TRUE(prog.layers_disjoint());
        for (int s = 0; s < 5; ++s) {
            PauliString p(n);
            for (std::size_t q = 0; q < n; ++q) {
                p.x[q] = rng() & 1U;
                p.z[q] = rng() & 1U;
            }
            EXPECT_EQ(propagate(prog, p), propagate(c, p));
        }
    }
}

TEST(Scheduler, VerifyLayersRejectsBadAssignments) {
    const auto g = graph_of(3, {{0, 1}, {1, 2}});
    LayerAssignment clash;
    clash.layers = {{g.edges[0], g.edges[1]}};
    EXPECT_FALSE(verify_layers(g, clash));  // incident edges share a layer
    LayerAssignment missing;
    missing.layers = {{g.edges[0]}};
    EXPECT_FALSE(verify_layers(g, missing));
    LayerAssignment good;
    good.layers = {{g.edges[0]}, {g.edges[1]}};
    EXPECT_TRUE(verify_layers(g, good));
    LayerAssignment padded = good;
    padded.layers.push_back({});
    padded.layers.push_back({});
    EXPECT_FALSE(verify_layers(g, padded));  // above floor(3 delta / 2)
}

TEST(Scheduler, UpperBoundFormula) {
    // Shannon triangle: three double edges, delta = 4, chi' = 6 = floor(3 delta / 2).
    const auto tri = graph_of(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {0, 2}, {0, 2}});
    EXPECT_EQ(tri.max_degree(), 4U);
    EXPECT_EQ(tri.upper_bound(), 6U);
    EXPECT_EQ(chromatic_index(tri).size(), 6U);
    // A star: bound collapses to delta.
    const auto star = graph_of(4, {{0, 1}, {0, 2}, {0, 3}});
    EXPECT_EQ(star.upper_bound(), 3U);
    EXPECT_EQ(chromatic_index(star).size(), 3U);
}

TEST(Scheduler, Deterministic) {
    const auto g = build_multigraph(native("five_one_three"));
    EXPECT_EQ(layers_json(chromatic_index(g)).dump(), layers_json(chromatic_index(g)).dump());
    EXPECT_THROW(chromatic_index(graph_of(2, {{1, 1}})), std::invalid_argument);
}

TEST(Scheduler, DotExport) {
    const auto c = native("iceberg4");
    const auto dot = graph_dot(build_multigraph(c), &c);
    EXPECT_NE(dot.find("graph G {"), std::string::npos);
    EXPECT_NE(dot.find("0 -- 3 [label=\"U1\"]"), std::string::npos);
    EXPECT_NE(dot.find("1 -- 3 [label=\"U2\"]"), std::string::npos);
}
