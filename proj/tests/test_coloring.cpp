#include <doctest.h>

#include "kneser/bounds.hpp"
#include "kneser/coloring.hpp"
#include "kneser/rng.hpp"

using namespace kneser;

namespace {

// Smallest c admitting a proper coloring, by trying all c^N assignments.
int brute_chi(const Hypergraph& h) {
    const int n = static_cast<int>(h.vertex_count());
    if (n == 0) return 0;
    for (int c = 1;; ++c) {
        std::vector<Color> col(n, 0);
        while (true) {
            if (!validate(h, Coloring{col, c})) return c;
            int i = 0;
            while (i < n && ++col[i] == static_cast<Color>(c)) col[i++] = 0;
            if (i == n) break;
        }
    }
}

Hypergraph random_hypergraph(int n, int r, double p, std::uint64_t seed) {
    std::vector<VertexId> flat;
    SplitMix rng(seed);
    for_each_k_subset(n, r, [&](std::uint64_t bits) {
        if (rng.uniform() >= p) return;
        for (int i = 0; i < n; ++i)
            if (bits >> i & 1) flat.push_back(i);
    });
    return Hypergraph::from_edges(r, n, flat);
}

}  // namespace

TEST_CASE("validate finds monochromatic edges") {
    auto h = kneser_hypergraph(full_family(5, 2), 2);
    auto bad = validate(h, Coloring{std::vector<Color>(10, 0), 1});
    REQUIRE(bad);
    CHECK(bad->size() == 2);
    CHECK_THROWS_AS(validate(h, Coloring{std::vector<Color>(3, 0), 1}), std::invalid_argument);
    CHECK(Coloring::from_colors({0, 2, 2}).palette_size == 3);
    CHECK(Coloring::from_colors({0, 2, 2}).colors_used() == 2);
}

TEST_CASE("standard coloring is proper with the formula's palette") {
    for (int r = 2; r <= 3; ++r)
        for (int k = 1; k <= 4; ++k)
            for (int n = r * k; n <= 14; ++n) {
                if (binom_u64(n, k) > 400) continue;
                auto h = kneser_hypergraph(full_family(n, k), r);
                auto c = standard_coloring(n, k, r);
                REQUIRE(c.palette_size == chromatic_formula(n, k, r));
                REQUIRE_FALSE(validate(h, c).has_value());
                for (Color x : c.colors) REQUIRE(static_cast<int>(x) < c.palette_size);
            }
    auto sf = stable_family(7, 2, 2);
    CHECK_FALSE(validate(kneser_hypergraph(sf, 2), standard_coloring(sf, 2)).has_value());
}

TEST_CASE("exact_chi against brute force on random small hypergraphs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int r = 2 + static_cast<int>(seed % 2);
        const int n = 5 + static_cast<int>(seed % 4);
        auto h = random_hypergraph(n, r, 0.5, seed);
        auto cert = exact_chi(h);
        REQUIRE(cert.exact);
        REQUIRE(cert.chi == brute_chi(h));
        REQUIRE_FALSE(validate(h, cert.witness).has_value());
        CHECK(packing_lower(h) <= cert.chi);
        CHECK(greedy_upper(h).palette_size >= cert.chi);
    }
}

TEST_CASE("exact_chi on Kneser and Schrijver graphs") {
    struct Row { int n, k, r, s, chi; };
    for (auto row : {Row{5, 2, 2, 1, 3}, Row{6, 2, 2, 1, 4}, Row{7, 2, 2, 1, 5}, Row{7, 3, 2, 1, 3}, Row{8, 3, 2, 1, 4},
                     Row{5, 2, 2, 2, 3}, Row{6, 2, 2, 2, 4}, Row{6, 2, 3, 1, 2}, Row{9, 2, 3, 1, 3}}) {
        auto h = kneser_hypergraph(row.s == 1 ? full_family(row.n, row.k) : stable_family(row.n, row.k, row.s), row.r);
        auto cert = exact_chi(h);
        CHECK(cert.exact);
        CHECK(cert.chi == row.chi);
        CHECK(cert.lower <= cert.chi);
    }
}

TEST_CASE("formula grid for small Kneser hypergraphs") {
    for (int r = 2; r <= 3; ++r)
        for (int k = 1; k <= 3; ++k)
            for (int n = r * k; n <= r * k + 4; ++n) {
                if (binom_u64(n, k) > 60) continue;
                auto cert = exact_chi(kneser_hypergraph(full_family(n, k), r));
                REQUIRE(cert.exact);
                CHECK(cert.chi == chromatic_formula(n, k, r));
            }
}

TEST_CASE("chromatic number is monotone under adding edges") {
    auto h = kneser_hypergraph(full_family(6, 2), 2).materialized();
    auto flat = h.explicit_edges();
    int prev = 0;
    for (std::size_t keep = 0; keep <= flat.size() / 2; keep += 5) {
        std::vector<VertexId> sub(flat.begin(), flat.begin() + 2 * keep);
        int chi = exact_chi(Hypergraph::from_edges(2, h.vertex_count(), sub)).chi;
        CHECK(chi >= prev);
        prev = chi;
    }
}

TEST_CASE("is_colorable decisions and deadline") {
    auto h = kneser_hypergraph(full_family(5, 2), 2);
    CHECK(is_colorable(h, 2).decision == Decision::exhausted);
    auto yes = is_colorable(h, 3);
    REQUIRE(yes.decision == Decision::colorable);
    CHECK_FALSE(validate(h, *yes.coloring).has_value());

    SolverLimits past;
    past.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    auto big = kneser_hypergraph(full_family(9, 3), 2);
    auto cert = exact_chi(big, past);
    CHECK(cert.lower <= cert.upper);
    CHECK_FALSE(validate(big, cert.witness).has_value());
}

TEST_CASE("edge cases") {
    auto empty = Hypergraph::from_edges(2, 4, {});
    CHECK(exact_chi(empty).chi == 1);
    auto none = Hypergraph::from_edges(2, 0, {});
    CHECK(exact_chi(none).chi == 0);
    CHECK(packing_lower(none) == 0);
}
