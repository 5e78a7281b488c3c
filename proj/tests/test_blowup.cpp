#include <doctest.h>

#include <algorithm>

#include "kneser/blowup.hpp"
#include "kneser/bounds.hpp"
#include "kneser/rng.hpp"

using namespace kneser;

namespace {

std::vector<VertexId> sorted_edges(const Hypergraph& h) { return h.materialized().explicit_edges(); }

Coloring random_coloring(std::size_t size, int palette, std::uint64_t seed) {
    SplitMix rng(seed);
    std::vector<Color> c(size);
    for (auto& x : c) x = static_cast<Color>(rng.below(palette));
    return Coloring{std::move(c), palette};
}

}  // namespace

TEST_CASE("blow-up sizes") {
    auto edge = Hypergraph::from_edges(2, 2, {0, 1});
    auto b = blow_up(edge, 2);
    CHECK(b.vertex_count() == 4);
    CHECK(edge_count(b) == 4);
    auto pet = kneser_hypergraph(full_family(5, 2), 2);
    auto p3 = blow_up(pet, 3);
    CHECK(p3.vertex_count() == 30);
    CHECK(edge_count(p3) == 135);
    CHECK(sorted_edges(blow_up(pet, 1)) == sorted_edges(pet));
    for (int m = 1; m <= 4; ++m) {
        auto h3 = kneser_hypergraph(full_family(6, 2), 3);
        auto b3 = blow_up(h3, m);
        CHECK(b3.vertex_count() == 15u * m);
        CHECK(edge_count(b3) == 15 * m * m * m);
    }
}

TEST_CASE("blow-up keeps the chromatic number") {
    std::vector<Hypergraph> hs{Hypergraph::from_edges(2, 2, {0, 1}), kneser_hypergraph(full_family(5, 2), 2),
                               kneser_hypergraph(full_family(6, 2), 3)};
    for (const auto& h : hs) {
        const int chi = exact_chi(h).chi;
        for (int m = 2; m <= 3; ++m) CHECK(exact_chi(blow_up(h, m)).chi == chi);
    }
}

TEST_CASE("quotient map checks") {
    auto pet = kneser_hypergraph(full_family(5, 2), 2);
    QuotientMap id{pet, 1, {}, 10};
    for (VertexId v = 0; v < 10; ++v) id.table.push_back(v);
    CHECK(check_quotient(id).ok());
    CHECK(sorted_edges(apply_quotient(id)) == sorted_edges(pet));

    QuotientMap collide{pet, 2, {}, 10};
    for (VertexId v = 0; v < 10; ++v) collide.table.insert(collide.table.end(), {v, v});
    CHECK(check_quotient(collide).condition == QuotientCondition::copies_collide);

    auto edge = Hypergraph::from_edges(2, 2, {0, 1});
    QuotientMap collapse{edge, 1, {0, 0}, 1};
    CHECK(check_quotient(collapse).condition == QuotientCondition::edge_collapses);
    CHECK_THROWS_AS(apply_quotient(collapse), std::invalid_argument);

    QuotientMap miss{edge, 1, {0, 1}, 3};
    auto chk = check_quotient(miss);
    CHECK(chk.condition == QuotientCondition::not_surjective);
    CHECK(chk.first == 2);
}

TEST_CASE("Kneser quotient realizes KG^r_{n,k}") {
    struct Row { int n, k, l, r; };
    for (auto row : {Row{6, 1, 1, 2}, Row{8, 2, 1, 2}, Row{9, 2, 1, 3}, Row{7, 1, 2, 2}}) {
        auto f = kneser_quotient(row.n, row.k, row.l, row.r);
        REQUIRE(check_quotient(f).ok());
        CHECK(f.m == static_cast<int>(binom_u64(row.k + row.l, row.k)));
        auto image = apply_quotient(f);
        CHECK(sorted_edges(image) == sorted_edges(kneser_hypergraph(full_family(row.n, row.k), row.r)));
    }
    CHECK_THROWS_AS(kneser_quotient(5, 2, 1, 2), std::invalid_argument);
}

TEST_CASE("majority color") {
    // subsets of {1,2,3} in colex order: {1,2},{1,3},{2,3},...
    auto idx = [](std::initializer_list<int> e) { return colex_rank(VertexSet::from_elements(4, e)); };
    std::vector<Color> c(6, 0);
    c[idx({1, 2})] = 1;
    c[idx({1, 3})] = 1;
    c[idx({2, 3})] = 2;
    const auto s123 = VertexSet::from_elements(4, {1, 2, 3}).bits();
    CHECK(majority_color(s123, Coloring{c, 3}, 4, 2).first == 1);
    CHECK(majority_color(s123, Coloring{c, 3}, 4, 2).second == 2);
    c[idx({1, 2})] = 2;
    c[idx({1, 3})] = 1;
    c[idx({2, 3})] = 0;
    CHECK(majority_color(s123, Coloring{c, 3}, 4, 2).first == 0);
    auto lift = majority_lift(Coloring{std::vector<Color>(6, 0), 1}, 4, 2, 3);
    CHECK(lift.colors == std::vector<Color>(4, 0));
    CHECK_THROWS(majority_lift(Coloring{c, 3}, 4, 2, 1));
}

TEST_CASE("majority class meets the pigeonhole bound") {
    const int n = 8, k = 2, d = 3;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto kappa = random_coloring(binom_u64(n, k), d, seed);
        for (int q = k; q <= 5; ++q) {
            const auto need = (binom_u64(q, k) + d - 1) / d;
            for_each_k_subset(n, q, [&](std::uint64_t set) { REQUIRE(majority_color(set, kappa, n, k).second >= need); });
        }
    }
}

TEST_CASE("monochromatic multipartite pieces") {
    auto edge = Hypergraph::from_edges(2, 2, {0, 1});
    Coloring one{std::vector<Color>(8, 0), 1};
    auto got = find_mono_multipartite(edge, 4, one, 1);
    REQUIRE(got);
    CHECK(got->parts[0].size() == 4);
    CHECK(verify_mono_parts(edge, 4, one, 1, *got));

    auto h = kneser_hypergraph(full_family(6, 2), 2);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto c = random_coloring(15 * 6, 3, seed);
        auto mono = find_mono_multipartite(h, 6, c, 3);
        REQUIRE(mono);
        REQUIRE(mono->parts.size() == 2);
        for (const auto& part : mono->parts) REQUIRE(part.size() == 2);
        REQUIRE(verify_mono_parts(h, 6, c, 3, *mono));
    }
    CHECK_THROWS_AS(find_mono_multipartite(h, 6, random_coloring(90, 4, 1), 3), std::invalid_argument);

    // d >= chi: a lifted proper coloring gives nothing
    auto pet = kneser_hypergraph(full_family(5, 2), 2);
    auto base = standard_coloring(5, 2, 2);
    std::vector<Color> lifted;
    for (Color x : base.colors) lifted.insert(lifted.end(), 2, x);
    CHECK_FALSE(find_mono_multipartite(pet, 2, Coloring{lifted, 3}, 3).has_value());
}

TEST_CASE("witness search") {
    const int n = 10, k = 2, l = 1, r = 2;
    const auto sched = schedule(n, k, l, r);
    CHECK(sched.d == 5);
    auto constant = lemma1_witness(n, k, l, r, Coloring{std::vector<Color>(45, 0), 5});
    REQUIRE(constant.status == WitnessStatus::found);
    CHECK(constant.report->which == WitnessCase::i);
    CHECK(constant.report->level == 0);
    CHECK(constant.report->alpha == 0);

    auto merged = standard_coloring(10, 2, 2);
    for (auto& x : merged.colors) x = std::min<Color>(x, 4);
    merged.palette_size = 5;
    auto m = lemma1_witness(n, k, l, r, merged);
    REQUIRE(m.status == WitnessStatus::found);
    CHECK(validate_witness(*m.report, sched, merged));

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto kappa = random_coloring(45, 5, seed);
        auto w = lemma1_witness(n, k, l, r, kappa);
        REQUIRE(w.status == WitnessStatus::found);
        REQUIRE(validate_witness(*w.report, sched, kappa));
        // tampering breaks validation
        auto bad = *w.report;
        bad.alpha = (bad.alpha + 1) % 5;
        CHECK_FALSE(validate_witness(bad, sched, kappa));
    }
    auto capped = lemma1_witness(n, k, l, r, random_coloring(45, 5, 3), 1);
    CHECK(capped.status != WitnessStatus::no_witness);
}
