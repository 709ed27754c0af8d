#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "pec/constructions.hpp"
#include "pec/hypercube.hpp"
#include "pec/solver.hpp"
#include "pec/verify.hpp"

using namespace pec;

TEST_CASE("lower_bounds", "[solver]") {
    auto lb = lower_bounds(oracles::complete(5));
    REQUIRE(lb[0] == std::pair<std::string, int>{"max_degree", 4});
    REQUIRE(lb[1] == std::pair<std::string, int>{"log_order", 3});
    auto lbp = lower_bounds(oracles::path_graph(9));
    REQUIRE(lbp[0].second == 2);
    REQUIRE(lbp[1].second == 4);
    auto lbs = lower_bounds(oracles::complete_bipartite(1, 7));
    REQUIRE(lbs[0].second == 7);
    REQUIRE(lbs[1].second == 3);
}

TEST_CASE("knn_spec_lower_bound matches the worked values", "[solver]") {
    REQUIRE(knn_spec_lower_bound(5) == 8);
    REQUIRE(knn_spec_lower_bound(9) == 14);
    REQUIRE(knn_spec_lower_bound(13) == 16);
    REQUIRE_THROWS_AS(knn_spec_lower_bound(1), PreconditionError);
}

TEST_CASE("solve_p exact values", "[solver]") {
    REQUIRE(solve_p(oracles::complete(5)).value == 7);
    REQUIRE(solve_p(oracles::cycle_graph(5)).value == 4);
    REQUIRE(solve_p(oracles::path_graph(4)).value == 2);
}

TEST_CASE("solve_spec exact values", "[solver]") {
    REQUIRE(solve_spec(oracles::complete(3)).value == 3);
    REQUIRE(solve_spec(oracles::complete(5)).value == 7);
    SECTION("Example 2.9's graph separates p from p-hat") {
        Graph g = oracles::triangle_with_tail();
        REQUIRE(solve_p(g).value == 4);
        REQUIRE(solve_spec(g).value == 5);
    }
}

TEST_CASE("solve_conflict_free exact values", "[solver]") {
    REQUIRE(solve_conflict_free(oracles::cycle_graph(8)).value == 4);
    REQUIRE(solve_conflict_free(oracles::path_graph(8)).value == 3);
    SECTION("the broom T_4 needs five colors") {
        SolveBudget wide;
        wide.max_edges = 16;
        REQUIRE(solve_conflict_free(broom(4), wide).value == 5);
    }
}

TEST_CASE("witnesses re-verify with exactly `value` colors", "[solver]") {
    for (const Graph& g : {oracles::complete(4), oracles::cycle_graph(7), oracles::path_graph(6)}) {
        SolveResult rp = solve_p(g);
        REQUIRE(rp.witness);
        REQUIRE(rp.witness->color_count() == rp.value);
        REQUIRE(check_parity_coloring(*rp.witness).valid);
        SolveResult rs = solve_spec(g);
        REQUIRE(rs.witness->color_count() == rs.value);
        REQUIRE(check_spec(*rs.witness).valid);
        SolveResult rc = solve_conflict_free(g);
        REQUIRE(rc.witness->color_count() == rc.value);
        REQUIRE(check_conflict_free(*rc.witness).valid);
    }
}

TEST_CASE("status handling", "[solver]") {
    SECTION("K_9 is refused under the default budget") {
        SolveResult r = solve_p(oracles::complete(9));
        REQUIRE(r.status == SolveStatus::oversize);
        REQUIRE_FALSE(r.witness.has_value());
        REQUIRE(r.value >= 8);  // the degree bound survives
    }
    SECTION("a tiny node budget yields timeout with a usable bound") {
        SolveBudget tiny;
        tiny.max_nodes = 5;
        SolveResult r = solve_p(oracles::complete(5), tiny);
        REQUIRE(r.status == SolveStatus::timeout);
        REQUIRE(r.value >= 4);
        REQUIRE(r.value <= 7);
    }
    SECTION("an edgeless graph needs zero colors") {
        Graph g = Graph::from_edges(3, {});
        REQUIRE(solve_p(g).value == 0);
    }
}

TEST_CASE("value ordering p-hat >= p >= bounds", "[solver][property]") {
    std::mt19937 rng(61);
    for (int iter = 0; iter < 25; ++iter) {
        Graph g = oracles::random_graph(rng, 6);
        if (g.edge_count() > 10) continue;
        SolveResult rp = solve_p(g);
        SolveResult rs = solve_spec(g);
        REQUIRE(rs.value >= rp.value);
        for (auto& [name, bound] : rp.lower_bounds) REQUIRE(rp.value >= bound);
        SolveResult rc = solve_conflict_free(g);
        REQUIRE(rc.value >= rp.value);
    }
}

TEST_CASE("edge deletion moves p by at most one", "[solver][property]") {
    std::mt19937 rng(67);
    int done = 0;
    while (done < 20) {
        Graph g = oracles::random_graph(rng, 6);
        if (g.edge_count() < 2 || g.edge_count() > 8) continue;
        ++done;
        int p = solve_p(g).value;
        EdgeId victim = static_cast<EdgeId>(rng() % g.edge_count());
        std::vector<std::pair<int, int>> rest;
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            if (e != victim) rest.emplace_back(g.edge(e).u, g.edge(e).v);
        int p_minus = solve_p(Graph::from_edges(g.vertex_count(), rest)).value;
        REQUIRE(p_minus <= p);
        REQUIRE(p <= p_minus + 1);
    }
}

TEST_CASE("solver agrees with brute-force enumeration", "[solver][property]") {
    std::mt19937 rng(71);
    int done = 0;
    while (done < 15) {
        Graph g = oracles::random_graph(rng, 5);
        if (g.edge_count() > 5) continue;
        ++done;
        int p_brute = oracles::brute_force_minimum(
            g, [](const EdgeColoring& f) { return check_parity_coloring(f).valid; });
        REQUIRE(solve_p(g).value == p_brute);
        int c_brute = oracles::brute_force_minimum(
            g, [](const EdgeColoring& f) { return check_conflict_free(f).valid; });
        REQUIRE(solve_conflict_free(g).value == c_brute);
        int s_brute = oracles::brute_force_minimum(
            g, [](const EdgeColoring& f) { return check_spec(f).valid; });
        REQUIRE(solve_spec(g).value == s_brute);
    }
}

TEST_CASE("P_{2^j+1} is critical", "[solver]") {
    for (int j = 1; j <= 3; ++j) {
        int n = (1 << j) + 1;
        Graph p = oracles::path_graph(n);
        int full = solve_p(p).value;
        REQUIRE(full == j + 1);
        for (EdgeId victim = 0; victim < p.edge_count(); ++victim) {
            std::vector<std::pair<int, int>> rest;
            for (EdgeId e = 0; e < p.edge_count(); ++e)
                if (e != victim) rest.emplace_back(p.edge(e).u, p.edge(e).v);
            REQUIRE(solve_p(Graph::from_edges(n, rest)).value < full);
        }
    }
}

TEST_CASE("every 3-color parity coloring of K_4 is canonical", "[solver]") {
    Graph g = oracles::complete(4);
    // The three perfect matchings of K_4 as sorted edge-id classes.
    std::vector<std::set<std::set<EdgeId>>> dummy;
    std::set<std::set<std::set<int>>> seen_partitions;
    auto canonical_partition = [&] {
        EdgeColoring f = canonical(2);
        std::set<std::set<int>> part;
        for (const auto& cls : f.classes()) part.insert(std::set<int>(cls.begin(), cls.end()));
        return part;
    }();
    int found = 0;
    std::vector<int> colors(6, 0);
    while (true) {
        EdgeColoring f =
            EdgeColoring::from_colors(g, std::vector<ColorId>(colors.begin(), colors.end()), 3);
        bool three = *std::max_element(colors.begin(), colors.end()) == 2 &&
                     *std::min_element(colors.begin(), colors.end()) == 0;
        if (three && !oracles::has_parity_path(f)) {
            ++found;
            std::set<std::set<int>> part;
            for (const auto& cls : f.classes()) part.insert(std::set<int>(cls.begin(), cls.end()));
            REQUIRE(part == canonical_partition);
        }
        int e = 5;
        while (e >= 0 && colors[e] == 2) colors[e--] = 0;
        if (e < 0) break;
        ++colors[e];
    }
    REQUIRE(found == 6);  // 3! color permutations of the one partition
}
