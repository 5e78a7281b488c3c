#include <doctest.h>

#include <cmath>

#include "kneser/bounds.hpp"

using namespace kneser;

namespace {

constexpr double kTol = 1e-12;

double sum_components(const BoundReport& b) {
    double s = 0;
    for (const auto& t : b.components) s += t.ln_value;
    return s;
}

bool close(double a, double b) { return std::fabs(a - b) <= kTol * std::max(1.0, std::fabs(b)); }

}  // namespace

TEST_CASE("chromatic formula") {
    CHECK(chromatic_formula(5, 2, 2) == 3);
    CHECK(chromatic_formula(9, 2, 3) == 3);
    for (int r = 2; r <= 5; ++r)
        for (int k = 1; k <= 4; ++k) CHECK(chromatic_formula(r * k, k, r) == 2);
    for (int n = 4; n <= 20; ++n) CHECK(chromatic_formula(n, 2, 2) == n - 2);
    CHECK(chromatic_formula(3, 2, 2) == 1);
}

TEST_CASE("schedule (100,5,2,2)") {
    auto s = schedule(100, 5, 2, 2);
    CHECK(s.beta == 1.0);
    CHECK(s.s == 5.0);
    CHECK(s.u == 3);
    CHECK(s.d == 87);
    CHECK(s.q == std::vector<int>{7, 14, 28, 56});
    CHECK(s.t[0] == 1);
    CHECK(s.z[0] == 1);
    // z_1 = ceil(C(14,5)/(2*5*14)) = ceil(2002/140) = 15
    CHECK(s.z[1] == 15);
    CHECK(s.t[1] == 24);  // ceil(2002/87)
}

TEST_CASE("schedule invariants on a grid") {
    for (int r = 2; r <= 4; ++r)
        for (int k = 1; k <= 6; ++k)
            for (int l = 1; l <= 4; ++l)
                for (int n = r * (k + l); n <= 120; n += 7) {
                    Schedule s;
                    try {
                        s = schedule(n, k, l, r);
                    } catch (const std::invalid_argument&) {
                        continue;
                    }
                    REQUIRE(s.q.size() == static_cast<std::size_t>(s.u) + 1);
                    REQUIRE(s.q[0] == k + l);
                    REQUIRE(s.q.back() <= n);
                    const double lb1 = r == 2 ? 1.0 : std::pow(l, 1.0 / (r - 1));
                    // the ceiling can add one on top of the doubling estimate
                    for (int i = 1; i <= s.u; ++i) REQUIRE(s.q[i] <= 2 * lb1 * s.q[i - 1] + 1);
                    for (int i = 0; i <= s.u; ++i) {
                        REQUIRE(s.t[i] == ceil_div(binom_exact(s.q[i], k), s.d));
                        REQUIRE(s.t[i] >= 1);
                    }
                    // t_0 coincides with the t of the first-moment argument
                    REQUIRE(s.t[0] == ceil_div(binom_exact(k + l, k), chromatic_formula(n, k + l, r) - 1));
                    if (r == 2) REQUIRE(s.s == 5.0);
                }
    CHECK(schedule(100, 5, 2, 4).s == doctest::Approx(9 * std::cbrt(2.0) * 5));
    CHECK_THROWS_AS(schedule(10, 5, 2, 2), std::invalid_argument);
}

TEST_CASE("thm1 bound") {
    auto b = thm1_bound(1, 4, 2, 2, 0.5);
    CHECK(close(b.ln_bound.ln, std::log(2.25)));
    CHECK(close(sum_components(b), b.ln_bound.ln));
    CHECK(close(thm1_bound(15, 3, 3, 2, 0.5).ln_bound.ln, std::log(67.5)));
    CHECK(close(thm1_bound(1, 3, 1, 2, 0.3).ln_bound.ln, 9 * std::log(0.7)));
    CHECK(b.vacuous);
    CHECK_THROWS_AS(thm1_bound(1, 4, 2, 2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(thm1_bound(1, 4, 2, 2, 1.0), std::invalid_argument);
    CHECK(thm1_bound(0, 4, 2, 2, 0.5).ln_bound.zero);
}

TEST_CASE("first-moment condition") {
    CHECK(close(lemma31_lhs(100, 5, 2, 2, 0.5), 6 * (7 * std::log(20.0) + std::log(87.0)) - 0.5));
    // d = 1: n=6,k=2,l=1 gives chi(KG_{6,3}) = 2
    CHECK(close(lemma31_lhs(6, 2, 1, 2, 0.5), 6 * (3 * std::log(3.0)) - 0.5 * 9));
    CHECK_THROWS_AS(lemma31_lhs(5, 2, 1, 2, 0.5), std::invalid_argument);
    for (double p = 0.1; p < 1; p += 0.2) CHECK(lemma31_lhs(100, 5, 2, 2, p) > lemma31_lhs(100, 5, 2, 2, p + 0.1));
}

TEST_CASE("case bounds") {
    auto s = schedule(100, 5, 2, 2);
    auto ci = case_i_bound(s, 0, 0.5);
    // z_0 = 1: 2 ln C(100,7) + 2 ln 21 + 1^2 ln 0.5
    const double hand = 2 * log_binom(100, 7).ln + 2 * std::log(21.0) + std::log(0.5);
    CHECK(close(ci.ln_bound.ln, hand));
    CHECK(close(sum_components(ci), ci.ln_bound.ln));
    CHECK(case_i_bound(s, 0, 1.0).ln_bound.zero);

    auto cii = case_ii_bound(s, 0, 0.5);
    // q_1 = 14, z_1 = 15, t_0 = 1
    const double hand2 = 2 * 14 * std::log(100.0) + 2 * log_binom(binom_exact(14, 5), BigCount(15)).ln + 1 * 15 * std::log(0.5);
    CHECK(close(cii.ln_bound.ln, hand2));
    CHECK_THROWS_AS(case_ii_bound(s, s.u, 0.5), std::out_of_range);
    CHECK_THROWS_AS(case_i_bound(s, s.u + 1, 0.5), std::out_of_range);
}

TEST_CASE("per-level divergence expressions") {
    auto s = schedule(100, 5, 2, 2);
    auto [first, second] = lemma42_lhs(s, 0, 0.5);
    const double ln_n = std::log(100.0);
    CHECK(close(first, 6 * (7 * ln_n + 1 * std::log(2 * 5 * 7.0)) - 0.5));
    REQUIRE(second);
    CHECK(close(*second, 6 * (14 * ln_n + 15 * std::log(2 * 5 * 14.0)) - 0.5 * 1 * 15));
    CHECK_FALSE(lemma42_lhs(s, s.u, 0.5).second.has_value());
    CHECK(lemma42_lhs(s, 1, 0.9).first < lemma42_lhs(s, 1, 0.1).first);
}

TEST_CASE("threshold predicates") {
    auto g = threshold_check(100, 10, 10, 2, 1.0);
    REQUIRE(g.size() == 1);
    CHECK(g[0].holds);
    CHECK(close(g[0].ln_lhs, std::log(184756.0)));
    CHECK(threshold_check(100, 10, 10, 3, 1.0).size() == 2);
    CHECK(threshold_check(100, 10, 10, 4, 1.0).size() == 2);
    for (int r = 2; r <= 5; ++r)
        for (int k = 2; k <= 12; k += 2)
            for (double c = 0.01; c < 1e6; c *= 10) {
                auto a = threshold_check(200, k, k, r, c);
                auto b = threshold_check(200, k, k, r, 2 * c);
                for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i].holds || !b[i].holds));
            }
}

TEST_CASE("upper condition") {
    CHECK(close(upper_cond(16, 1, 1, 2, 0.5), std::log(0.25)));
    // l = 0: C(2,2) * C(4,2) = 6
    CHECK(close(upper_cond(20, 2, 0, 2, 0.5), std::log(20.0) + 6 * std::log(0.5)));
    CHECK(upper_cond(16, 1, 1, 2, 0.6) < upper_cond(16, 1, 1, 2, 0.5));
}

TEST_CASE("shadow bound") {
    // d >= C(k+l,k) gives part size 1
    auto b = shadow_bound(100, 2, 1, 5, 2, 0.5);
    CHECK(close(b.ln_bound.ln, std::log(100.0) + 2 * std::log(3.0) + std::log(0.5)));
    // full family (8,2,1): matches thm1 with |E| replaced by |H|
    const int d = chromatic_formula(8, 3, 2) - 1;
    auto sh = shadow_bound(binom_exact(8, 2), 2, 1, d, 2, 0.4);
    auto t1 = thm1_bound(binom_exact(8, 2), 3, d, 2, 0.4);
    CHECK(close(sh.ln_bound.ln, t1.ln_bound.ln));
    CHECK(shadow_bound(100, 2, 1, 5, 2, 1.0).ln_bound.zero);
}

TEST_CASE("edge count formula") {
    CHECK(kneser_edge_count(5, 2, 2) == 15);
    CHECK(kneser_edge_count(6, 2, 3) == 15);
    CHECK(kneser_edge_count(4, 2, 2) == 3);
    CHECK(kneser_edge_count(5, 2, 3) == 0);
}

TEST_CASE("evaluators are deterministic") {
    auto s = schedule(100, 5, 2, 3);
    CHECK(case_i_bound(s, 1, 0.3).ln_bound == case_i_bound(s, 1, 0.3).ln_bound);
    CHECK(lemma31_lhs(90, 4, 3, 3, 0.2) == lemma31_lhs(90, 4, 3, 3, 0.2));
}
