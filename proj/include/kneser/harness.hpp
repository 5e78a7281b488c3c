#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kneser/coloring.hpp"

namespace kneser {

/// Which vertex family an experiment runs on.
struct FamilySpec {
    enum class Kind { full, stable, shadow };
    Kind kind = Kind::full;
    int s = 2;  // stable: gap; shadow: gap of the base family (1 = all sets)
    int l = 1;  // shadow: base sets have k + l elements
};

Family build_family(const FamilySpec& spec, int n, int k);

struct ExperimentConfig {
    FamilySpec family;
    int n = 0, k = 0, r = 2;
    std::vector<double> p_grid;
    int trials = 1;
    std::uint64_t seed = 0;
    int deadline_ms = 0;  // per trial; 0 = no deadline
    std::string out;      // CSV path; empty = no file
    int threads = 0;      // 0 = hardware concurrency
    bool record_timing = false;

    /// Throws std::invalid_argument when a field is out of range.
    void check() const;
};

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    double p = 0.0;
    std::uint64_t edges = 0;
    int chi_lo = 0;
    int chi_hi = 0;
    bool exact = false;
    double runtime_ms = 0.0;
};

struct SummaryRow {
    double p = 0.0;
    int d = 0;
    int exact_trials = 0;
    int at_most_d = 0;
    double frequency = 0.0;
    double std_error = 0.0;
    double bound = 1.0;  // min(1, union bound) on Pr[chi <= d]; 1 when none applies
};

struct McResult {
    std::vector<TrialRecord> records;  // sorted by (trial, p)
    std::vector<SummaryRow> summary;
    int full_chi = 0;
    bool censored = false;
};

/// Samples every (trial, p) pair with the coupled per-trial seed and solves
/// each sample. Output is identical for every thread count.
McResult mc_run(const ExperimentConfig& cfg);

inline constexpr const char* kTrialCsvHeader = "trial,seed,p,edges,chi_lo,chi_hi,exact,runtime_ms";

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records, bool with_timing);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

/// Best union bound on Pr[chi(KG^r_{n,k}(p)) <= d], taken over the
/// realizations inside blow-ups of KG^r_{n,k+l}; 1 when none applies.
double union_bound_at_most(int n, int k, int r, int d, double p);

/// Chromatic number of the coupled samples of h at each p.
std::vector<ChiCertificate> coupled_curve(const Hypergraph& h, const std::vector<double>& p_grid, std::uint64_t seed,
                                          const SolverLimits& limits = {});

struct WindowResult {
    VertexSet window;
    bool from_family = false;  // found among the low-overlap windows
};

/// Starting points of the consecutive low-overlap windows of width w in [n].
std::vector<int> window_starts(int n, int w);

/// A set A of size rk+l with no sampled edge among the members inside A.
/// Throws std::invalid_argument when rk+l > n or the sample has no family.
std::optional<WindowResult> empty_window_search(const Hypergraph& sample, int l);

/// A inside gets color 0; every other set is colored by the position of its
/// smallest element outside A, in windows of r-1 positions. The palette is
/// chromatic_formula(n,k,r) - floor(l/(r-1)). Throws if A holds an edge.
Coloring improved_coloring(const Hypergraph& sample, const VertexSet& window);

struct UpperTrial {
    std::uint64_t seed = 0;
    std::uint64_t edges = 0;
    std::optional<WindowResult> window;
    std::optional<Coloring> coloring;
    bool proper = false;
};

struct UpperReport {
    int n = 0, k = 0, r = 2, l = 0;
    double p = 0.0;
    std::vector<UpperTrial> trials;
    int successes = 0;
    double upper_cond = 0.0;
    BigCount product_count;   // prod_{i=1}^r C(l+ik, k)
    BigCount window_edges;    // edges of KG^r on a window of size rk+l
    int palette = 0;
};

UpperReport run_upper_pipeline(int n, int k, int r, int l, double p, int seeds, std::uint64_t master_seed);

}  // namespace kneser
