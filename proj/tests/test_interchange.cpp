#include <doctest.h>

#include "kneser/interchange.hpp"

using namespace kneser;

TEST_CASE("round trip of generator and explicit instances") {
    for (int r = 2; r <= 3; ++r) {
        auto h = kneser_hypergraph(full_family(7, 2), r);
        for (const auto& g : {h, h.materialized(), sample(h, {0.4, 11, SampleMode::coupled})}) {
            auto text = emit(g);
            auto back = parse(text);
            CHECK(back.hypergraph.materialize() == g.materialize());
            CHECK(emit(back.hypergraph) == text);
            CHECK(back.hypergraph.family()->sets() == g.family()->sets());
        }
    }
}

TEST_CASE("stable family and coloring survive") {
    auto h = kneser_hypergraph(stable_family(8, 2, 2), 2);
    Coloring c = standard_coloring(*h.family(), 2);
    auto back = parse(emit(h, c));
    REQUIRE(back.coloring);
    CHECK(back.coloring->colors == c.colors);
    CHECK(back.hypergraph.vertex_count() == h.vertex_count());
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(parse("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"n":5})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"n":5,"k":2,"r":2,"vertices":[[1,2],[1,2]],"edges":[]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"n":5,"k":2,"r":2,"vertices":[[1,2],[3,4]],"edges":[[0,7]]})"), std::invalid_argument);
    auto blown = Hypergraph::from_edges(2, 2, {0, 1});
    CHECK_THROWS_AS(to_json(blown), std::invalid_argument);
}

TEST_CASE("certificate and witness serialization") {
    auto cert = exact_chi(kneser_hypergraph(full_family(5, 2), 2));
    auto j = to_json(cert);
    CHECK(j["chi"] == 3);
    CHECK(j["exact"] == true);
    WitnessReport w;
    w.which = WitnessCase::ii;
    w.level = 1;
    w.alpha = 2;
    w.parts = {VertexSet::from_elements(6, {1, 2, 3})};
    w.counts = {3};
    auto wj = to_json(w);
    CHECK(wj["case"] == "ii");
    CHECK(wj["i"] == 1);
    CHECK(wj["parts"][0] == json::array({1, 2, 3}));
}
