#include "kneser/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace kneser {

int chromatic_formula(int n, int k, int r) {
    if (r < 2) throw std::invalid_argument("chromatic_formula: r must be at least 2");
    if (n < r * k) return 1;
    int num = n - r * (k - 1);
    return (num + r - 2) / (r - 1);
}

namespace {

// Snaps values within rounding noise of an integer onto it, so that exact
// powers such as 4^{3/2} = 8 do not pick up a spurious ceiling step.
long double snap(long double x) {
    long double nearest = std::round(x);
    return std::fabs(x - nearest) < 1e-9L * std::max<long double>(1, std::fabs(x)) ? nearest : x;
}

long double ceil_real(long double x) { return std::ceil(snap(x)); }

bool is_integral(long double x) { return snap(x) == std::round(x); }

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
}

// (1-p)-exponent term; -infinity at p = 1 is reported as an exact zero bound.
double ln_one_minus(double p) { return std::log1p(-p); }

BoundReport assemble(std::vector<BoundTerm> terms, std::vector<std::pair<std::string, std::string>> params, bool zero) {
    BoundReport rep;
    rep.components = std::move(terms);
    rep.parameters = std::move(params);
    double sum = 0.0;
    for (const auto& t : rep.components) sum += t.ln_value;
    if (zero || std::isinf(sum)) {
        rep.ln_bound = LogReal::of_zero();
    } else {
        rep.ln_bound = LogReal::from_ln(sum);
        rep.vacuous = sum >= 0.0;
    }
    return rep;
}

std::string str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string str(const BigCount& v) { return v.str(); }

}  // namespace

Schedule schedule(int n, int k, int l, int r) {
    if (r < 2 || k < 1 || l < 0) throw std::invalid_argument("schedule: need r >= 2, k >= 1, l >= 0");
    if (n < r * (k + l)) throw std::invalid_argument("schedule: need n >= r(k+l)");
    Schedule s;
    s.n = n;
    s.k = k;
    s.l = l;
    s.r = r;
    s.beta = (r == 2) ? 1.0 : static_cast<double>(r) / (r - 1);
    s.d = chromatic_formula(n, k + l, r) - 1;
    if (s.d < 1) throw std::invalid_argument("schedule: d = chi(KG^r_{n,k+l}) - 1 must be positive");

    const long double l_beta = (r == 2) ? l : snap(std::pow(static_cast<long double>(l), static_cast<long double>(r) / (r - 1)));
    const long double base = k + l_beta;
    const long double l_beta_minus_one = (r == 2) ? 1.0L : snap(std::pow(static_cast<long double>(l), 1.0L / (r - 1)));

    if (r == 2) {
        s.u = -1;
        while ((static_cast<long long>(k + l) << (s.u + 1)) <= n) ++s.u;
    } else {
        s.u = static_cast<int>(std::floor(snap(std::log2(static_cast<long double>(n) / base))));
    }
    if (s.u < 0) throw std::invalid_argument("schedule: u < 0");

    long double s_val = (2 * r + 1) * l_beta_minus_one;
    if (r > 3) s_val *= k;
    s.s = static_cast<double>(s_val);

    s.q.push_back(k + l);
    for (int i = 1; i <= s.u; ++i) s.q.push_back(static_cast<int>(ceil_real(std::ldexp(base, i))));

    for (int qi : s.q) {
        BigCount subsets = binom_exact(qi, k);
        s.t.push_back(ceil_div(subsets, s.d));
        if (is_integral(s_val)) {
            BigCount denom = BigCount(2) * static_cast<long long>(std::llround(s_val)) * qi;
            s.z.push_back(ceil_div(subsets, denom));
        } else {
            long double ratio = subsets.convert_to<long double>() / (2.0L * s_val * qi);
            s.z.push_back(BigCount(static_cast<long long>(std::ceil(ratio))));
        }
    }
    return s;
}

BoundReport thm1_bound(const BigCount& edges, int m, int d, int r, double p) {
    if (m < 1 || d < 1) throw std::invalid_argument("thm1_bound: m and d must be positive");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("thm1_bound: p must lie in (0,1)");
    const int part = (m + d - 1) / d;
    std::vector<BoundTerm> terms;
    bool zero = edges <= 0;
    terms.push_back({"edges", zero ? 0.0 : ln_big(edges)});
    terms.push_back({"part_choices", r * log_binom(m, part).ln});
    terms.push_back({"empty_multipartite", std::pow(static_cast<double>(part), r) * ln_one_minus(p)});
    return assemble(std::move(terms),
                    {{"edges", str(edges)}, {"m", std::to_string(m)}, {"d", std::to_string(d)}, {"r", std::to_string(r)},
                     {"p", str(p)}, {"part", std::to_string(part)}},
                    zero);
}

double lemma31_lhs(int n, int k, int l, int r, double p) {
    if (n < r * k) throw std::invalid_argument("lemma31_lhs: need n >= rk");
    int d = chromatic_formula(n, k + l, r) - 1;
    if (d < 1) throw std::invalid_argument("lemma31_lhs: d must be positive");
    double t = to_double(ceil_div(binom_exact(k + l, k), d));
    return 3.0 * r * ((k + l) * std::log(static_cast<double>(n) / k) + t * std::log(static_cast<double>(d))) - p * std::pow(t, r);
}

BoundReport case_i_bound(const Schedule& sched, int i, double p) {
    if (i < 0 || i > sched.u) throw std::out_of_range("case_i_bound: level outside [0,u]");
    check_probability(p);
    const int r = sched.r, qi = sched.q[i];
    const BigCount subsets = binom_exact(qi, sched.k);
    const BigCount& z = sched.z[i];
    std::vector<BoundTerm> terms;
    terms.push_back({"set_choices", r * log_binom(sched.n, qi).ln});
    terms.push_back({"subset_choices", r * log_binom(subsets, z).ln});
    terms.push_back({"empty_event", std::pow(to_double(z), r) * ln_one_minus(p)});
    return assemble(std::move(terms), {{"i", std::to_string(i)}, {"q", std::to_string(qi)}, {"z", str(z)}, {"p", str(p)}}, p == 1.0);
}

BoundReport case_ii_bound(const Schedule& sched, int i, double p) {
    if (i < 0 || i >= sched.u) throw std::out_of_range("case_ii_bound: level outside [0,u-1]");
    check_probability(p);
    const int r = sched.r, qn = sched.q[i + 1];
    const BigCount subsets = binom_exact(qn, sched.k);
    const BigCount& z = sched.z[i + 1];
    const BigCount& t = sched.t[i];
    std::vector<BoundTerm> terms;
    terms.push_back({"set_choices", static_cast<double>(r) * qn * std::log(static_cast<double>(sched.n))});
    terms.push_back({"subset_choices", r * log_binom(subsets, z).ln});
    terms.push_back({"empty_event", to_double(t) * std::pow(to_double(z), r - 1) * ln_one_minus(p)});
    return assemble(std::move(terms),
                    {{"i", std::to_string(i)}, {"q_next", std::to_string(qn)}, {"t", str(t)}, {"z_next", str(z)}, {"p", str(p)}},
                    p == 1.0);
}

std::pair<double, std::optional<double>> lemma42_lhs(const Schedule& sched, int i, double p) {
    if (i < 0 || i > sched.u) throw std::out_of_range("lemma42_lhs: level outside [0,u]");
    const int r = sched.r;
    const double ln_n = std::log(static_cast<double>(sched.n));
    auto level_term = [&](int j) {
        double q = sched.q[j];
        return 3.0 * r * (q * ln_n + to_double(sched.z[j]) * std::log(2.0 * sched.s * q));
    };
    double first = level_term(i) - p * std::pow(to_double(sched.z[i]), r);
    std::optional<double> second;
    if (i < sched.u) second = level_term(i + 1) - p * to_double(sched.t[i]) * std::pow(to_double(sched.z[i + 1]), r - 1);
    return {first, second};
}

std::vector<Predicate> threshold_check(int n, int k, int l, int r, double c) {
    if (!(c > 0)) throw std::invalid_argument("threshold_check: constant must be positive");
    const double ln_c = std::log(c);
    const double lnln_n = std::log(std::log(static_cast<double>(n)));
    const double ln_kl = std::log(static_cast<double>(k + l));
    const double ln_l = std::log(static_cast<double>(l));
    const double base_binom = log_binom(k + l, k).ln;
    auto make = [](std::string name, double lhs, double rhs) { return Predicate{std::move(name), lhs, rhs, lhs >= rhs}; };

    std::vector<Predicate> out;
    if (r == 2) {
        out.push_back(make("graph_base_level", base_binom, ln_c + std::log(static_cast<double>(n)) + lnln_n));
        return out;
    }
    const double beta = static_cast<double>(r) / (r - 1);
    const double l_beta = static_cast<double>(snap(std::pow(static_cast<long double>(l), static_cast<long double>(beta))));
    const int q1 = static_cast<int>(ceil_real(2.0L * (k + l_beta)));
    const double first_binom = log_binom(q1, k).ln;
    if (r == 3) {
        out.push_back(make("r3_base_level", 3 * base_binom, ln_c + 4 * ln_kl + 1.5 * ln_l + lnln_n));
        out.push_back(make("r3_first_level", 2 * first_binom, ln_c + 3 * ln_kl + ln_l + lnln_n));
        return out;
    }
    const double ln_k = std::log(static_cast<double>(k));
    out.push_back(make("r_base_level", r * base_binom, ln_c + r * ln_k + (r + 1) * ln_kl + beta * ln_l + lnln_n));
    out.push_back(make("r_first_level", (r - 1) * first_binom,
                       ln_c + (r - 1) * ln_k + ln_kl + (r - 1) * std::log(k + l_beta) + ln_l + lnln_n));
    return out;
}

double upper_cond(int n, int k, int l, int r, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("upper_cond: p must lie in (0,1)");
    BigCount product = 1;
    for (int i = 1; i <= r; ++i) product *= binom_exact(l + i * k, k);
    return std::log(static_cast<double>(n)) + to_double(product) * ln_one_minus(p);
}

BoundReport shadow_bound(const BigCount& family_size, int k, int l, int d, int r, double p) {
    if (d < 1) throw std::invalid_argument("shadow_bound: d must be positive");
    check_probability(p);
    const BigCount block = binom_exact(k + l, k);
    const BigCount part = ceil_div(block, d);
    bool zero = family_size <= 0 || p == 1.0;
    std::vector<BoundTerm> terms;
    terms.push_back({"family", family_size > 0 ? ln_big(family_size) : 0.0});
    terms.push_back({"part_choices", r * log_binom(block, part).ln});
    terms.push_back({"empty_multipartite", std::pow(to_double(part), r) * ln_one_minus(p)});
    return assemble(std::move(terms),
                    {{"family_size", str(family_size)}, {"k", std::to_string(k)}, {"l", std::to_string(l)}, {"d", std::to_string(d)},
                     {"r", std::to_string(r)}, {"p", str(p)}, {"part", str(part)}},
                    zero);
}

BigCount kneser_edge_count(int n, int k, int r) {
    if (n < r * k) return 0;
    BigCount ordered = 1;
    for (int j = 0; j < r; ++j) ordered *= binom_exact(n - j * k, k);
    BigCount factorial = 1;
    for (int j = 2; j <= r; ++j) factorial *= j;
    return ordered / factorial;
}

}  // namespace kneser
