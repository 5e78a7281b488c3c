#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kneser {

/// Exact non-negative integer count.
using BigCount = boost::multiprecision::cpp_int;

/// Largest supported ground set; subsets are stored as 64-bit masks.
inline constexpr int kMaxGround = 64;

/// Natural logarithm of a non-negative quantity. Exact zero is carried as a
/// flag because ln 0 has no finite representation.
struct LogReal {
    double ln = 0.0;
    bool zero = false;

    static LogReal of_zero() { return {0.0, true}; }
    static LogReal from_ln(double v) { return {v, false}; }

    /// exp(ln), or 0 for exact zero.
    double value() const;
    bool operator==(const LogReal&) const = default;
};

/// A k-subset of the ground set {1..n}. Element e lives at bit e-1.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(int n, std::uint64_t bits);

    /// Builds from 1-based elements; throws on out-of-range or repeated elements.
    static VertexSet from_elements(int n, const std::vector<int>& elements);

    int ground_size() const { return n_; }
    std::uint64_t bits() const { return bits_; }
    int size() const;
    bool contains(int element) const;
    bool disjoint(const VertexSet& other) const { return (bits_ & other.bits_) == 0; }
    bool subset_of(const VertexSet& other) const { return (bits_ & ~other.bits_) == 0; }
    int min_element() const;
    int max_element() const;
    std::vector<int> elements() const;
    std::string to_string() const;

    bool operator==(const VertexSet& o) const { return n_ == o.n_ && bits_ == o.bits_; }

private:
    int n_ = 0;
    std::uint64_t bits_ = 0;
};

/// C(n,k); zero when k<0 or k>n.
BigCount binom_exact(std::int64_t n, std::int64_t k);
BigCount binom_exact(const BigCount& n, const BigCount& k);

/// ln C(n,k); exact zero when k is out of range.
LogReal log_binom(std::int64_t n, std::int64_t k);

/// ln C(N,z) for counts too large for 64 bits.
LogReal log_binom(const BigCount& n, const BigCount& k);

/// C(n,k) in 64 bits; throws std::overflow_error when it does not fit.
std::uint64_t binom_u64(int n, int k);

/// Natural log of a positive big count.
double ln_big(const BigCount& x);
double to_double(const BigCount& x);

/// ceil(a/b) for b>0.
BigCount ceil_div(const BigCount& a, const BigCount& b);

/// Colexicographic rank of a k-set among all k-subsets of its ground set.
std::uint64_t colex_rank(const VertexSet& s);

/// Inverse of colex_rank. Throws std::out_of_range for rank >= C(n,k).
VertexSet colex_unrank(std::uint64_t rank, int k, int n);

/// Next mask with the same popcount in increasing numeric order, which is
/// exactly colex order. Returns 0 when the sequence would leave `limit` bits.
std::uint64_t next_colex(std::uint64_t mask, int limit);

/// Visits every k-subset of {1..n} in colex order.
void for_each_k_subset(int n, int k, const std::function<void(std::uint64_t)>& visit);

/// Visits every k-element sub-mask of `mask`, in colex order.
void for_each_k_submask(std::uint64_t mask, int k, const std::function<void(std::uint64_t)>& visit);

/// s-stable k-subsets of {1..n} (cyclic gap condition included), colex order.
void for_each_stable(int n, int k, int s, const std::function<void(const VertexSet&)>& visit);
std::vector<VertexSet> enumerate_stable(int n, int k, int s);

/// True when the gaps between consecutive elements are all >= s; the
/// wrap-around gap is checked too when `cyclic` is set.
bool is_stable(const VertexSet& set, int s, bool cyclic = true);

/// C(n-(r-1)(k-1), k): upper bound on the number of r-stable k-sets.
BigCount stable_count_bound(int n, int k, int r);

/// Number of k-subsets of {1..n} with consecutive gaps >= r, wrap-around
/// gap ignored. Computed through f(n,k) = f(n-1,k) + f(n-r,k-1).
BigCount linear_stable_count(int n, int k, int r);

}  // namespace kneser
