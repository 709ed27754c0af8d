#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "pec/graph.hpp"

using namespace pec;

TEST_CASE("parse_graph builds dense indices in first-appearance order", "[graph]") {
    Graph g = parse_graph("a b\nb c\n");
    REQUIRE(g.vertex_count() == 3);
    REQUIRE(g.edge_count() == 2);
    REQUIRE(g.label(0) == "a");
    REQUIRE(g.label(1) == "b");
    REQUIRE(g.label(2) == "c");
    REQUIRE(g.edge_between(0, 1).has_value());
    REQUIRE(g.edge_between(2, 1).has_value());
    REQUIRE_FALSE(g.edge_between(0, 2).has_value());
}

TEST_CASE("parse_graph accepts K_5 as all ten pairs", "[graph]") {
    std::string text = "# complete graph\n";
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            text += std::to_string(i) + " " + std::to_string(j) + "\n";
    Graph g = parse_graph(text);
    REQUIRE(g.vertex_count() == 5);
    REQUIRE(g.edge_count() == 10);
}

TEST_CASE("parse_graph rejects loops and duplicates with line numbers", "[graph]") {
    REQUIRE_THROWS_MATCHES(parse_graph("a a\n"), ParseError,
                           Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("loop")));
    try {
        parse_graph("a b\nb a\n");
        FAIL("expected duplicate edge rejection");
    } catch (const ParseError& e) {
        REQUIRE(e.line() == 2);
        REQUIRE(std::string(e.what()).find("duplicate") != std::string::npos);
    }
}

TEST_CASE("parse_graph handles the directed header", "[graph]") {
    Graph d = parse_graph("directed\nu v\nv w\n");
    REQUIRE(d.directed());
    REQUIRE(d.edge_between(0, 1).has_value());
    REQUIRE_FALSE(d.edge_between(1, 0).has_value());
}

TEST_CASE("graph serialization round-trips idempotently", "[graph]") {
    for (const char* text : {"a b\nb c\nc a\n", "directed\nx y\ny z\n", "0 1\n# hi\n1 2\n\n2 3\n"}) {
        std::string once = serialize_graph(parse_graph(text));
        std::string twice = serialize_graph(parse_graph(once));
        REQUIRE(once == twice);
    }
}

TEST_CASE("parse_coloring assigns dense color indices", "[graph]") {
    Graph g = parse_graph("a b\nb c\n");
    EdgeColoring f = parse_coloring(g, "a b 1\nb c 2\n");
    REQUIRE(f.color_count() == 2);
    REQUIRE(f.color_label(0) == "1");
    REQUIRE(f.color_label(1) == "2");
}

TEST_CASE("parse_coloring on the canonical K_4 gives three perfect matchings", "[graph]") {
    // f(uv) = u + v over labels {00,01,10,11}
    Graph g = parse_graph("00 01\n00 10\n00 11\n01 10\n01 11\n10 11\n");
    EdgeColoring f = parse_coloring(g,
                                    "00 01 01\n00 10 10\n00 11 11\n"
                                    "01 10 11\n01 11 10\n10 11 01\n");
    REQUIRE(f.color_count() == 3);
    for (int size : f.class_sizes()) REQUIRE(size == 2);
}

TEST_CASE("parse_coloring rejects bad documents", "[graph]") {
    Graph g = parse_graph("a b\nb c\n");
    REQUIRE_THROWS_MATCHES(parse_coloring(g, "a b 1\n"), ParseError,
                           Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("uncolored")));
    REQUIRE_THROWS_AS(parse_coloring(g, "a b 1\nb c 2\na b 1\n"), ParseError);
    REQUIRE_THROWS_AS(parse_coloring(g, "a b 1\na c 2\n"), ParseError);
}

TEST_CASE("coloring serialization round-trips", "[graph]") {
    Graph g = parse_graph("a b\nb c\nc a\n");
    EdgeColoring f = parse_coloring(g, "a b red\nb c blue\nc a red\n");
    std::string doc = serialize_coloring(f);
    EdgeColoring f2 = parse_coloring(g, doc);
    REQUIRE(f2.colors() == f.colors());
    REQUIRE(serialize_coloring(f2) == doc);
}

TEST_CASE("parity_vector basics", "[graph]") {
    Graph g = parse_graph("a b\nb c\n");
    EdgeColoring f = parse_coloring(g, "a b 1\nb c 2\n");
    SECTION("empty walk is the zero vector") {
        REQUIRE(parity_vector(f, Walk({0})).zero());
    }
    SECTION("an edge traversed there and back cancels") {
        REQUIRE(parity_vector(f, Walk({0, 1, 0})).zero());
    }
    SECTION("walk along a non-edge is rejected") {
        REQUIRE_THROWS_AS(parity_vector(f, Walk({0, 2})), Error);
    }
}

TEST_CASE("canonical K_4 triangle has all three bits set", "[graph]") {
    Graph g = parse_graph("00 01\n00 10\n00 11\n01 10\n01 11\n10 11\n");
    EdgeColoring f = parse_coloring(g,
                                    "00 01 01\n00 10 10\n00 11 11\n"
                                    "01 10 11\n01 11 10\n10 11 01\n");
    // 00 -> 01 -> 10 -> 00 uses color names 01, 11, 10.
    BitVec pi = parity_vector(f, Walk({0, 1, 2, 0}));
    REQUIRE(pi.weight() == 3);
}

TEST_CASE("parity bit i flips exactly on color-i traversals", "[graph][property]") {
    std::mt19937 rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        Graph g = oracles::random_graph(rng, 7);
        EdgeColoring f = oracles::random_coloring(rng, g, 5);
        // random walk
        std::vector<VertexId> walk{static_cast<VertexId>(rng() % g.vertex_count())};
        BitVec expected(f.color_count());
        for (int step = 0; step < 12; ++step) {
            auto nb = g.neighbors(walk.back());
            if (nb.empty()) break;
            auto [w, e] = nb[rng() % nb.size()];
            walk.push_back(w);
            expected.flip(f.color_of(e));
            REQUIRE(parity_vector(f, Walk(walk)) == expected);
        }
    }
}

TEST_CASE("parity of a concatenation is the xor of the parts", "[graph][property]") {
    std::mt19937 rng(12);
    for (int iter = 0; iter < 300; ++iter) {
        Graph g = oracles::random_graph(rng, 7);
        EdgeColoring f = oracles::random_coloring(rng, g, 5);
        std::vector<VertexId> a{static_cast<VertexId>(rng() % g.vertex_count())};
        for (int step = 0; step < 6; ++step) {
            auto nb = g.neighbors(a.back());
            if (nb.empty()) break;
            a.push_back(nb[rng() % nb.size()].first);
        }
        std::vector<VertexId> b{a.back()};
        for (int step = 0; step < 6; ++step) {
            auto nb = g.neighbors(b.back());
            if (nb.empty()) break;
            b.push_back(nb[rng() % nb.size()].first);
        }
        std::vector<VertexId> joined = a;
        joined.insert(joined.end(), b.begin() + 1, b.end());
        REQUIRE(parity_vector(f, Walk(joined)) ==
                (parity_vector(f, Walk(a)) ^ parity_vector(f, Walk(b))));
    }
}

TEST_CASE("walk classification", "[graph]") {
    Walk closed({0, 1, 2, 0});
    REQUIRE(closed.is_closed());
    REQUIRE_FALSE(closed.is_path());
    Walk open({0, 1, 2});
    REQUIRE_FALSE(open.is_closed());
    REQUIRE(open.is_path());
    REQUIRE(open.length() == 2);
    REQUIRE(open.reversed().vertices() == std::vector<VertexId>{2, 1, 0});
}

TEST_CASE("induced subgraph keeps labels and maps edges", "[graph]") {
    Graph g = oracles::complete(5);
    auto [sub, old_ids] = g.induced({0, 2, 4});
    REQUIRE(sub.vertex_count() == 3);
    REQUIRE(sub.edge_count() == 3);
    REQUIRE(sub.label(1) == "2");
    for (EdgeId e = 0; e < sub.edge_count(); ++e) REQUIRE(old_ids[e] < g.edge_count());
}
