#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kneser/combinatorics.hpp"

namespace kneser {

/// ceil((n - r(k-1)) / (r-1)); 1 when n < rk (no edges).
int chromatic_formula(int n, int k, int r);

/// Level sizes and color-class thresholds for the refined argument.
struct Schedule {
    int n = 0, k = 0, l = 0, r = 2;
    double beta = 1.0;
    double s = 0.0;  // kept real; only used inside the z ceiling
    int u = 0;
    int d = 0;
    std::vector<int> q;
    std::vector<BigCount> t;
    std::vector<BigCount> z;
};

/// Throws std::invalid_argument when n < r(k+l), d < 1 or u < 0.
Schedule schedule(int n, int k, int l, int r);

struct BoundTerm {
    std::string name;
    double ln_value = 0.0;
};

/// ln of a union-bound failure probability with its additive components.
struct BoundReport {
    LogReal ln_bound;
    std::vector<BoundTerm> components;
    std::vector<std::pair<std::string, std::string>> parameters;
    bool vacuous = false;  // bound >= 1
};

/// ln(|E| C(m, ceil(m/d))^r (1-p)^{ceil(m/d)^r}).
BoundReport thm1_bound(const BigCount& edges, int m, int d, int r, double p);

/// 3r((k+l) ln(n/k) + t ln d) - p t^r with t = ceil(C(k+l,k)/d).
double lemma31_lhs(int n, int k, int l, int r, double p);

/// Case (i) event at level i.
BoundReport case_i_bound(const Schedule& sched, int i, double p);
/// Case (ii) event at level i, simplified right-hand form.
BoundReport case_ii_bound(const Schedule& sched, int i, double p);

/// The two per-level expressions whose divergence to -infinity is required;
/// the second is absent at i = u.
std::pair<double, std::optional<double>> lemma42_lhs(const Schedule& sched, int i, double p);

struct Predicate {
    std::string name;
    double ln_lhs = 0.0;
    double ln_rhs = 0.0;  // includes ln C
    bool holds = false;
};

/// The ">>" conditions relevant for r, evaluated as LHS >= C * RHS in log space.
std::vector<Predicate> threshold_check(int n, int k, int l, int r, double c);

/// ln n + (prod_{i=1}^r C(l+ik, k)) ln(1-p).
double upper_cond(int n, int k, int l, int r, double p);

/// Failure term for the k-th shadow family of size |H|.
BoundReport shadow_bound(const BigCount& family_size, int k, int l, int d, int r, double p);

/// Exact |E(KG^r_{n,k})| = n! / (k!^r (n-rk)! r!).
BigCount kneser_edge_count(int n, int k, int r);

}  // namespace kneser
