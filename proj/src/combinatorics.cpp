#include "kneser/combinatorics.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace kneser {

double LogReal::value() const { return zero ? 0.0 : std::exp(ln); }

VertexSet::VertexSet(int n, std::uint64_t bits) : n_(n), bits_(bits) {
    if (n < 0 || n > kMaxGround) throw std::invalid_argument("ground size out of range: " + std::to_string(n));
    if (n < kMaxGround && (bits >> n) != 0) throw std::invalid_argument("element outside ground set");
}

VertexSet VertexSet::from_elements(int n, const std::vector<int>& elements) {
    std::uint64_t bits = 0;
    for (int e : elements) {
        if (e < 1 || e > n) throw std::invalid_argument("element " + std::to_string(e) + " outside [1," + std::to_string(n) + "]");
        std::uint64_t bit = std::uint64_t{1} << (e - 1);
        if (bits & bit) throw std::invalid_argument("repeated element " + std::to_string(e));
        bits |= bit;
    }
    return VertexSet(n, bits);
}

int VertexSet::size() const { return std::popcount(bits_); }

bool VertexSet::contains(int element) const {
    return element >= 1 && element <= n_ && ((bits_ >> (element - 1)) & 1u);
}

int VertexSet::min_element() const { return bits_ ? std::countr_zero(bits_) + 1 : 0; }

int VertexSet::max_element() const { return bits_ ? 64 - std::countl_zero(bits_) : 0; }

std::vector<int> VertexSet::elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
}

std::string VertexSet::to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int e : elements()) {
        if (!first) os << ',';
        os << e;
        first = false;
    }
    os << '}';
    return os.str();
}

BigCount binom_exact(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigCount acc = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        acc *= (n - k + i);
        acc /= i;
    }
    return acc;
}

BigCount binom_exact(const BigCount& n, const BigCount& k) {
    if (n < 0 || k < 0 || k > n) return 0;
    BigCount kk = k > n - k ? BigCount(n - k) : k;
    if (kk > 1'000'000) throw std::overflow_error("binom_exact: lower index too large for exact evaluation");
    BigCount acc = 1;
    for (BigCount i = 1; i <= kk; ++i) {
        acc *= (n - kk + i);
        acc /= i;
    }
    return acc;
}

namespace {

// Kahan-compensated sum of ln((n-kk+i)/i), i = 1..kk.
template <typename Real>
Real log_binom_by_terms(Real n, std::int64_t kk) {
    Real sum = 0, comp = 0;
    for (std::int64_t i = 1; i <= kk; ++i) {
        Real term = std::log((n - Real(kk) + Real(i)) / Real(i)) - comp;
        Real t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    return sum;
}

constexpr std::int64_t kTermLimit = 4096;

}  // namespace

LogReal log_binom(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) return LogReal::of_zero();
    std::int64_t kk = std::min(k, n - k);
    if (kk <= kTermLimit) return LogReal::from_ln(static_cast<double>(log_binom_by_terms<long double>(n, kk)));
    long double v = std::lgamma(static_cast<long double>(n) + 1) - std::lgamma(static_cast<long double>(k) + 1) -
                    std::lgamma(static_cast<long double>(n - k) + 1);
    return LogReal::from_ln(static_cast<double>(v));
}

LogReal log_binom(const BigCount& n, const BigCount& k) {
    if (n < 0 || k < 0 || k > n) return LogReal::of_zero();
    if (n <= std::numeric_limits<std::int64_t>::max()) return log_binom(n.convert_to<std::int64_t>(), k.convert_to<std::int64_t>());
    BigCount kk = k > n - k ? BigCount(n - k) : k;
    long double big_n = n.convert_to<long double>();
    if (kk <= kTermLimit) return LogReal::from_ln(static_cast<double>(log_binom_by_terms<long double>(big_n, kk.convert_to<std::int64_t>())));
    long double big_k = kk.convert_to<long double>();
    long double v = std::lgamma(big_n + 1) - std::lgamma(big_k + 1) - std::lgamma(big_n - big_k + 1);
    return LogReal::from_ln(static_cast<double>(v));
}

namespace {

struct PascalTable {
    std::uint64_t c[kMaxGround + 1][kMaxGround + 1] = {};
    PascalTable() {
        for (int n = 0; n <= kMaxGround; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
        }
    }
};

const PascalTable& pascal() {
    static const PascalTable table;
    return table;
}

}  // namespace

std::uint64_t binom_u64(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (n <= kMaxGround) return pascal().c[n][k];
    BigCount b = binom_exact(n, k);
    if (b > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial coefficient exceeds 64 bits");
    return b.convert_to<std::uint64_t>();
}

double ln_big(const BigCount& x) {
    if (x <= 0) throw std::domain_error("ln_big of non-positive value");
    const std::size_t msb = boost::multiprecision::msb(x);
    if (msb < 16000) return static_cast<double>(std::log(x.convert_to<long double>()));
    const std::size_t shift = msb - 62;
    const BigCount top = x / boost::multiprecision::pow(BigCount(2), static_cast<unsigned>(shift));
    return std::log(static_cast<double>(top.convert_to<std::uint64_t>())) + static_cast<double>(shift) * std::log(2.0);
}

double to_double(const BigCount& x) { return x.convert_to<double>(); }

BigCount ceil_div(const BigCount& a, const BigCount& b) {
    if (b <= 0) throw std::domain_error("ceil_div by non-positive divisor");
    BigCount q = a / b;
    if (q * b < a) ++q;
    return q;
}

std::uint64_t colex_rank(const VertexSet& s) {
    std::uint64_t rank = 0;
    int j = 1;
    for (std::uint64_t b = s.bits(); b; b &= b - 1, ++j) rank += binom_u64(std::countr_zero(b), j);
    return rank;
}

VertexSet colex_unrank(std::uint64_t rank, int k, int n) {
    if (k < 0 || k > n || n > kMaxGround) throw std::out_of_range("colex_unrank: bad (k,n)");
    if (rank >= binom_u64(n, k)) throw std::out_of_range("colex_unrank: rank " + std::to_string(rank) + " out of range");
    std::uint64_t bits = 0;
    int upper = n;
    for (int j = k; j >= 1; --j) {
        // largest position p < upper with C(p, j) <= rank
        int p = upper - 1;
        while (binom_u64(p, j) > rank) --p;
        bits |= std::uint64_t{1} << p;
        rank -= binom_u64(p, j);
        upper = p;
    }
    return VertexSet(n, bits);
}

std::uint64_t next_colex(std::uint64_t mask, int limit) {
    if (mask == 0) return 0;
    unsigned __int128 x = mask;
    unsigned __int128 c = x & (~x + 1);
    unsigned __int128 r = x + c;
    unsigned __int128 next = (((r ^ x) >> 2) / c) | r;
    if ((next >> limit) != 0) return 0;
    return static_cast<std::uint64_t>(next);
}

void for_each_k_subset(int n, int k, const std::function<void(std::uint64_t)>& visit) {
    if (k < 0 || k > n) return;
    if (k == 0) {
        visit(0);
        return;
    }
    std::uint64_t mask = (k == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
    for (; mask != 0; mask = next_colex(mask, n)) visit(mask);
}

void for_each_k_submask(std::uint64_t mask, int k, const std::function<void(std::uint64_t)>& visit) {
    int positions[64];
    int m = 0;
    for (std::uint64_t b = mask; b; b &= b - 1) positions[m++] = std::countr_zero(b);
    for_each_k_subset(m, k, [&](std::uint64_t idx) {
        std::uint64_t sub = 0;
        for (std::uint64_t b = idx; b; b &= b - 1) sub |= std::uint64_t{1} << positions[std::countr_zero(b)];
        visit(sub);
    });
}

bool is_stable(const VertexSet& set, int s, bool cyclic) {
    auto el = set.elements();
    for (std::size_t j = 1; j < el.size(); ++j)
        if (el[j] - el[j - 1] < s) return false;
    if (cyclic && !el.empty() && el.front() + set.ground_size() - el.back() < s) return false;
    return true;
}

void for_each_stable(int n, int k, int s, const std::function<void(const VertexSet&)>& visit) {
    for_each_k_subset(n, k, [&](std::uint64_t bits) {
        VertexSet set(n, bits);
        if (is_stable(set, s)) visit(set);
    });
}

std::vector<VertexSet> enumerate_stable(int n, int k, int s) {
    std::vector<VertexSet> out;
    for_each_stable(n, k, s, [&](const VertexSet& v) { out.push_back(v); });
    return out;
}

BigCount stable_count_bound(int n, int k, int r) {
    return binom_exact(static_cast<std::int64_t>(n) - static_cast<std::int64_t>(r - 1) * (k - 1), k);
}

BigCount linear_stable_count(int n, int k, int r) {
    if (r < 1) throw std::invalid_argument("linear_stable_count: r must be positive");
    std::map<std::pair<int, int>, BigCount> memo;
    std::function<BigCount(int, int)> f = [&](int m, int j) -> BigCount {
        if (j == 0) return 1;  // the empty set, whatever the ground
        if (m <= 0) return 0;
        auto key = std::make_pair(m, j);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        BigCount v = f(m - 1, j) + f(m - r, j - 1);
        memo.emplace(key, v);
        return v;
    };
    return f(n, k);
}

}  // namespace kneser
