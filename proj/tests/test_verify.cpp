#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "pec/constructions.hpp"
#include "pec/hypercube.hpp"
#include "pec/verify.hpp"

using namespace pec;

namespace {

/// C_6 with two pendant edges at one vertex; the spanning walk from one
/// pendant vertex to the other is colored a,b,a,c,b,d,c,d (Example 2.10).
EdgeColoring example_2_10(bool recolored) {
    Graph g = parse_graph("p1 v0\nv0 v1\nv1 v2\nv2 v3\nv3 v4\nv4 v5\nv5 v0\nv0 p2\n");
    std::string doc = "p1 v0 a\nv0 v1 b\nv1 v2 a\nv2 v3 c\nv3 v4 b\n";
    doc += recolored ? "v4 v5 a\n" : "v4 v5 d\n";
    doc += "v5 v0 c\nv0 p2 d\n";
    return parse_coloring(g, doc);
}

/// Example 3.13: a 40-color edge-coloring of K_11 that satisfies the
/// 4-constraint but admits no completion to a parity coloring.
EdgeColoring example_3_13() {
    Graph g = oracles::complete(11);
    std::vector<int> color(g.edge_count(), -1);
    int cyc[11] = {0, 1, 2, 3, 4, 5, 1, 3, 5, 2, 4};
    auto eid = [&](int a, int b) { return *g.edge_between(a, b); };
    for (int i = 0; i < 11; ++i) color[eid(i, (i + 1) % 11)] = cyc[i];
    for (int c = 1; c <= 5; ++c) {
        std::vector<std::pair<int, int>> own;
        for (int i = 0; i < 11; ++i)
            if (cyc[i] == c) own.emplace_back(i, (i + 1) % 11);
        auto [a, b] = own[0];
        auto [x, y] = own[1];
        color[eid(a, x)] = color[eid(b, y)] = c + 5;
        color[eid(a, y)] = color[eid(b, x)] = c + 10;
    }
    int next = 16;
    for (int e = 0; e < g.edge_count(); ++e)
        if (color[e] == -1) color[e] = next++;
    return EdgeColoring::from_colors(g, std::vector<ColorId>(color.begin(), color.end()), next);
}

}  // namespace

TEST_CASE("check_parity_coloring basics", "[verify]") {
    SECTION("canonical K_4 is a parity coloring") {
        REQUIRE(check_parity_coloring(canonical(2)).valid);
    }
    SECTION("P_3 with both edges alike fails with the 2-edge path") {
        Graph g = parse_graph("a b\nb c\n");
        EdgeColoring f = parse_coloring(g, "a b 1\nb c 1\n");
        Verdict v = check_parity_coloring(f);
        REQUIRE_FALSE(v.valid);
        REQUIRE(v.method == VerifyMethod::exhaustive);
        REQUIRE(v.certificate);
        REQUIRE(v.certificate->kind == CertificateKind::parity_path);
        REQUIRE(v.certificate->walk.length() == 2);
        REQUIRE(certificate_ok(f, *v.certificate));
    }
    SECTION("C_4 colored a,b,a,b is a parity coloring") {
        EdgeColoring f = parse_coloring(oracles::cycle_graph(4), "0 1 a\n1 2 b\n2 3 a\n3 0 b\n");
        REQUIRE(check_parity_coloring(f).valid);
    }
    SECTION("oversize graphs are refused, not misjudged") {
        EdgeColoring f = canonical(3);  // 28 edges
        REQUIRE_THROWS_AS(check_parity_coloring(f, VerifyOptions{20}), OversizeError);
    }
}

TEST_CASE("parity_space shapes", "[verify]") {
    SECTION("canonical K_4 spans exactly {111}") {
        Gf2Basis b = parity_space(canonical(2));
        REQUIRE(b.width() == 3);
        REQUIRE(b.rank() == 1);
        REQUIRE(b.rows()[0] == BitVec::from_string("111"));
    }
    SECTION("a single edge has the empty space") {
        EdgeColoring f = parse_coloring(parse_graph("a b\n"), "a b 1\n");
        REQUIRE(parity_space(f).rank() == 0);
    }
    SECTION("P_3 colored 1,2 completes with one virtual color to span 111") {
        EdgeColoring f = parse_coloring(parse_graph("a b\nb c\n"), "a b 1\nb c 2\n");
        Gf2Basis b = parity_space(f);
        REQUIRE(b.width() == 3);
        REQUIRE(b.rank() == 1);
        REQUIRE(b.rows()[0] == BitVec::from_string("111"));
    }
}

TEST_CASE("check_spec on the paper's examples", "[verify]") {
    SECTION("canonical K_8 is a spec") {
        REQUIRE(check_spec(canonical(3)).valid);
    }
    SECTION("Example 2.10 is an optimal parity coloring but not a spec") {
        EdgeColoring f = example_2_10(false);
        REQUIRE(check_parity_coloring(f).valid);
        Verdict v = check_spec(f);
        REQUIRE_FALSE(v.valid);
        REQUIRE(v.method == VerifyMethod::algebraic);
        REQUIRE(v.certificate);
        REQUIRE(v.certificate->kind == CertificateKind::open_parity_walk);
        REQUIRE(certificate_ok(f, *v.certificate));
    }
    SECTION("recoloring the cycle's d edge to a yields a spec") {
        REQUIRE(check_spec(example_2_10(true)).valid);
    }
}

TEST_CASE("check_cycles_parity", "[verify]") {
    SECTION("the hypercube coordinate coloring passes") {
        REQUIRE(check_cycles_parity(hypercube_coloring(3)).valid);
    }
    SECTION("a properly colored triangle fails") {
        EdgeColoring f = parse_coloring(oracles::cycle_graph(3), "0 1 a\n1 2 b\n2 0 c\n");
        Verdict v = check_cycles_parity(f);
        REQUIRE_FALSE(v.valid);
        REQUIRE(v.certificate);
        REQUIRE(v.certificate->kind == CertificateKind::bad_cycle);
        REQUIRE(certificate_ok(f, *v.certificate));
    }
    SECTION("C_4 colored a,b,a,b passes") {
        EdgeColoring f = parse_coloring(oracles::cycle_graph(4), "0 1 a\n1 2 b\n2 3 a\n3 0 b\n");
        REQUIRE(check_cycles_parity(f).valid);
    }
}

TEST_CASE("check_conflict_free", "[verify]") {
    SECTION("a rainbow star is conflict-free") {
        EdgeColoring f = parse_coloring(parse_graph("c a\nc b\nc d\n"), "c a 1\nc b 2\nc d 3\n");
        REQUIRE(check_conflict_free(f).valid);
    }
    SECTION("no 3-coloring of C_8 with classes (4,2,2) works") {
        EdgeColoring f = parse_coloring(oracles::cycle_graph(8),
                                        "0 1 a\n1 2 b\n2 3 a\n3 4 c\n4 5 a\n5 6 b\n6 7 a\n7 0 c\n");
        Verdict v = check_conflict_free(f);
        REQUIRE_FALSE(v.valid);
        REQUIRE(v.certificate);
        REQUIRE(v.certificate->kind == CertificateKind::conflict_path);
        REQUIRE(certificate_ok(f, *v.certificate));
    }
    SECTION("P_4 colored 1,2,1 is conflict-free") {
        EdgeColoring f = parse_coloring(oracles::path_graph(4), "0 1 1\n1 2 2\n2 3 1\n");
        REQUIRE(check_conflict_free(f).valid);
    }
}

TEST_CASE("check_four_constraint", "[verify]") {
    SECTION("perfect-matching classes satisfy the strong form") {
        REQUIRE(check_four_constraint(canonical(2), false).valid);
        REQUIRE(check_four_constraint(canonical(3), false).valid);
    }
    SECTION("K_4 with classes {ab,cd},{ac},{bd},{ad},{bc} violates it") {
        Graph g = parse_graph("a b\na c\na d\nb c\nb d\nc d\n");
        EdgeColoring f = parse_coloring(g, "a b 1\na c 2\na d 3\nb c 4\nb d 5\nc d 1\n");
        Verdict v = check_four_constraint(f, false);
        REQUIRE_FALSE(v.valid);
        REQUIRE(v.certificate);
        REQUIRE(v.certificate->kind == CertificateKind::four_constraint_violation);
        REQUIRE(v.certificate->walk.vertices().size() == 4);
        // weak mode also catches this one: both cross edges exist in K_4
        REQUIRE_FALSE(check_four_constraint(f, true).valid);
    }
    SECTION("weak mode only constrains complete quadruples") {
        // path a-b, x-y same color, b-x an edge, a-y missing: strong fails,
        // weak passes.
        Graph g = parse_graph("a b\nb x\nx y\n");
        EdgeColoring f = parse_coloring(g, "a b 1\nb x 2\nx y 1\n");
        REQUIRE_FALSE(check_four_constraint(f, false).valid);
        REQUIRE(check_four_constraint(f, true).valid);
    }
}

TEST_CASE("Example 3.13 separates the 4-constraint from parity colorings", "[verify][slow]") {
    EdgeColoring f = example_3_13();
    REQUIRE(f.color_count() == 40);
    REQUIRE(check_four_constraint(f, false).valid);
    REQUIRE(check_four_constraint(f, true).valid);
    Verdict v = check_parity_coloring(f, VerifyOptions{60});
    REQUIRE_FALSE(v.valid);
    REQUIRE(certificate_ok(f, *v.certificate));
    REQUIRE_FALSE(check_spec(f).valid);
}

TEST_CASE("recognizer agrees with the walk-state oracle", "[verify][property]") {
    std::mt19937 rng(31);
    for (int iter = 0; iter < 2000; ++iter) {
        Graph g = oracles::random_graph(rng, 6);
        EdgeColoring f = oracles::random_coloring(rng, g, 6);
        CAPTURE(serialize_coloring(f));
        Verdict v = check_spec(f);
        REQUIRE(v.valid == !oracles::has_open_parity_walk(f));
        if (v.certificate) REQUIRE(certificate_ok(f, *v.certificate));
    }
}

TEST_CASE("every valid spec is a valid parity coloring", "[verify][property]") {
    std::mt19937 rng(37);
    for (int iter = 0; iter < 500; ++iter) {
        Graph g = oracles::random_graph(rng, 6);
        EdgeColoring f = oracles::random_coloring(rng, g, 6);
        if (check_spec(f).valid) {
            REQUIRE(check_parity_coloring(f).valid);
        }
    }
}

TEST_CASE("parity verdicts match the path-enumeration oracle", "[verify][property]") {
    std::mt19937 rng(41);
    for (int iter = 0; iter < 400; ++iter) {
        Graph g = oracles::random_graph(rng, 6);
        EdgeColoring f = oracles::random_coloring(rng, g, 5);
        REQUIRE(check_parity_coloring(f).valid == !oracles::has_parity_path(f));
    }
}

TEST_CASE("on complete graphs the weight-1 scan is the whole story", "[verify][property]") {
    std::mt19937 rng(43);
    for (int iter = 0; iter < 300; ++iter) {
        int n = 3 + static_cast<int>(rng() % 4);
        Graph g = oracles::complete(n);
        EdgeColoring f = oracles::random_coloring(rng, g, 6);
        bool spec = check_spec(f).valid;
        bool unit = parity_space(f).weight1_in_span().has_value();
        REQUIRE(spec == !unit);
    }
}

TEST_CASE("verdict certificates re-verify across checkers", "[verify][property]") {
    std::mt19937 rng(47);
    for (int iter = 0; iter < 400; ++iter) {
        Graph g = oracles::random_graph(rng, 6);
        EdgeColoring f = oracles::random_coloring(rng, g, 4);
        for (const Verdict& v :
             {check_parity_coloring(f), check_spec(f), check_cycles_parity(f),
              check_conflict_free(f), check_four_constraint(f, false),
              check_four_constraint(f, true)}) {
            if (v.certificate) REQUIRE(certificate_ok(f, *v.certificate));
        }
    }
}
