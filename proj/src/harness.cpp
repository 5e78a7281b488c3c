#include "kneser/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "kneser/bounds.hpp"
#include "kneser/rng.hpp"

namespace kneser {

Family build_family(const FamilySpec& spec, int n, int k) {
    switch (spec.kind) {
        case FamilySpec::Kind::full:
            return full_family(n, k);
        case FamilySpec::Kind::stable:
            return stable_family(n, k, spec.s);
        case FamilySpec::Kind::shadow: {
            Family base = spec.s > 1 ? stable_family(n, k + spec.l, spec.s) : full_family(n, k + spec.l);
            return shadow(base, k);
        }
    }
    throw std::invalid_argument("unknown family kind");
}

void ExperimentConfig::check() const {
    if (n < 1 || n > kMaxGround || k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n <= 64");
    if (r < 2) throw std::invalid_argument("r must be at least 2");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (p_grid.empty()) throw std::invalid_argument("empty p-grid");
    for (double p : p_grid)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p-grid value outside [0,1]");
    if (!std::is_sorted(p_grid.begin(), p_grid.end())) throw std::invalid_argument("p-grid must be sorted");
    if (deadline_ms < 0) throw std::invalid_argument("negative deadline");
    if (family.kind == FamilySpec::Kind::stable && family.s < 1) throw std::invalid_argument("stable gap must be positive");
}

double union_bound_at_most(int n, int k, int r, int d, double p) {
    if (d < 1 || !(p > 0.0 && p < 1.0)) return 1.0;
    double best = 1.0;
    for (int l = 1; r * (k + l) <= n; ++l) {
        // any d below chi(KG^r_{n,k+l}) admits the blow-up argument
        if (chromatic_formula(n, k + l, r) - 1 < d) break;
        auto rep = thm1_bound(kneser_edge_count(n, k + l, r), static_cast<int>(binom_u64(k + l, k)), d, r, p);
        best = std::min(best, rep.ln_bound.value());
    }
    return best;
}

namespace {

template <typename Task>
void run_parallel(std::size_t count, int threads, Task&& task) {
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(failure_lock);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

SolverLimits limits_for(int deadline_ms) {
    SolverLimits lim;
    if (deadline_ms > 0) lim.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(deadline_ms);
    return lim;
}

std::string format_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

}  // namespace

McResult mc_run(const ExperimentConfig& cfg) {
    cfg.check();
    std::ofstream out;
    if (!cfg.out.empty()) {
        out.open(cfg.out, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output path " + cfg.out);
    }

    const auto family = std::make_shared<const Family>(build_family(cfg.family, cfg.n, cfg.k));
    const Hypergraph full = Hypergraph::kneser(family, cfg.r).materialized();

    McResult result;
    {
        auto cert = exact_chi(full);
        if (!cert.exact) throw std::runtime_error("full hypergraph chromatic number not resolved");
        result.full_chi = cert.chi;
    }

    const std::size_t grid = cfg.p_grid.size();
    result.records.resize(static_cast<std::size_t>(cfg.trials) * grid);
    run_parallel(result.records.size(), cfg.threads, [&](std::size_t idx) {
        const int trial = static_cast<int>(idx / grid);
        const double p = cfg.p_grid[idx % grid];
        TrialRecord rec;
        rec.trial = trial;
        rec.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(trial));
        rec.p = p;
        auto start = std::chrono::steady_clock::now();
        Hypergraph hs = sample(full, {p, rec.seed, SampleMode::coupled});
        rec.edges = static_cast<std::uint64_t>(hs.explicit_edges().size() / cfg.r);
        auto cert = exact_chi(hs, limits_for(cfg.deadline_ms));
        rec.chi_lo = cert.lower;
        rec.chi_hi = cert.upper;
        rec.exact = cert.exact;
        rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        result.records[idx] = rec;
    });

    for (const auto& rec : result.records) result.censored |= !rec.exact;

    for (std::size_t g = 0; g < grid; ++g) {
        const double p = cfg.p_grid[g];
        for (int d = 1; d <= result.full_chi; ++d) {
            SummaryRow row;
            row.p = p;
            row.d = d;
            for (const auto& rec : result.records) {
                if (rec.p != p || !rec.exact) continue;
                ++row.exact_trials;
                if (rec.chi_hi <= d) ++row.at_most_d;
            }
            if (row.exact_trials > 0) {
                row.frequency = static_cast<double>(row.at_most_d) / row.exact_trials;
                row.std_error = std::sqrt(row.frequency * (1 - row.frequency) / row.exact_trials);
            }
            if (cfg.family.kind == FamilySpec::Kind::full) row.bound = union_bound_at_most(cfg.n, cfg.k, cfg.r, d, p);
            result.summary.push_back(row);
        }
    }

    if (out.is_open()) {
        write_trials_csv(out, result.records, cfg.record_timing);
        std::ofstream summary(cfg.out + ".summary.csv", std::ios::binary | std::ios::trunc);
        if (!summary) throw std::runtime_error("cannot open summary path " + cfg.out + ".summary.csv");
        write_summary_csv(summary, result.summary);
    }
    return result;
}

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records, bool with_timing) {
    os << kTrialCsvHeader << '\n';
    for (const auto& r : records) {
        os << r.trial << ',' << r.seed << ',' << format_p(r.p) << ',' << r.edges << ',' << r.chi_lo << ',' << r.chi_hi << ','
           << (r.exact ? 1 : 0) << ',';
        if (with_timing) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", r.runtime_ms);
            os << buf;
        }
        os << '\n';
    }
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
    os << "p,d,exact_trials,at_most_d,frequency,std_error,bound\n";
    for (const auto& r : rows)
        os << format_p(r.p) << ',' << r.d << ',' << r.exact_trials << ',' << r.at_most_d << ',' << format_p(r.frequency) << ','
           << format_p(r.std_error) << ',' << format_p(r.bound) << '\n';
}

std::vector<ChiCertificate> coupled_curve(const Hypergraph& h, const std::vector<double>& p_grid, std::uint64_t seed,
                                          const SolverLimits& limits) {
    const Hypergraph full = h.materialized();
    std::vector<ChiCertificate> out;
    out.reserve(p_grid.size());
    for (double p : p_grid) out.push_back(exact_chi(sample(full, {p, seed, SampleMode::coupled}), limits));
    return out;
}

std::vector<int> window_starts(int n, int w) {
    std::vector<int> starts;
    const int step = std::max(1, w - 1);
    for (int a = 1; a + w - 1 <= n; a += step) starts.push_back(a);
    return starts;
}

namespace {

std::vector<std::uint64_t> edge_unions(const Hypergraph& h) {
    const Family& f = *h.family();
    std::vector<std::uint64_t> unions;
    h.for_each_edge([&](std::span<const VertexId> e) {
        std::uint64_t u = 0;
        for (auto v : e) u |= f[v].bits();
        unions.push_back(u);
    });
    return unions;
}

bool window_is_empty(const std::vector<std::uint64_t>& unions, std::uint64_t window) {
    return std::none_of(unions.begin(), unions.end(), [&](std::uint64_t u) { return (u & ~window) == 0; });
}

constexpr std::uint64_t kExhaustiveWindowCap = 5'000'000;

}  // namespace

std::optional<WindowResult> empty_window_search(const Hypergraph& hs, int l) {
    const Family* f = hs.family();
    if (!f) throw std::invalid_argument("empty_window_search: sample has no family");
    const int n = f->ground_size(), k = f->set_size(), r = hs.uniformity();
    const int w = r * k + l;
    if (l < 0 || w > n) throw std::invalid_argument("empty_window_search: window size rk+l exceeds n");

    const auto unions = edge_unions(hs);
    for (int a : window_starts(n, w)) {
        std::uint64_t window = ((w == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << w) - 1)) << (a - 1);
        if (window_is_empty(unions, window)) return WindowResult{VertexSet(n, window), true};
    }
    if (binom_u64(n, w) > kExhaustiveWindowCap) return std::nullopt;
    std::optional<WindowResult> found;
    for_each_k_subset(n, w, [&](std::uint64_t window) {
        if (!found && window_is_empty(unions, window)) found = WindowResult{VertexSet(n, window), false};
    });
    return found;
}

Coloring improved_coloring(const Hypergraph& hs, const VertexSet& window) {
    const Family* f = hs.family();
    if (!f) throw std::invalid_argument("improved_coloring: sample has no family");
    const int n = f->ground_size(), k = f->set_size(), r = hs.uniformity();
    const int l = window.size() - r * k;
    if (window.ground_size() != n || l < 0) throw std::invalid_argument("improved_coloring: window must have rk+l elements of [n]");
    if (!window_is_empty(edge_unions(hs), window.bits())) throw std::invalid_argument("improved_coloring: window contains a sampled edge");

    // 1-based positions of the elements outside the window
    std::vector<int> position(n + 1, 0);
    int next = 0;
    for (int e = 1; e <= n; ++e)
        if (!window.contains(e)) position[e] = ++next;

    Coloring c;
    c.palette_size = chromatic_formula(n, k, r) - l / (r - 1);
    c.colors.reserve(f->size());
    for (const auto& s : *f) {
        if (s.subset_of(window)) {
            c.colors.push_back(0);
            continue;
        }
        const int lowest_outside = VertexSet(n, s.bits() & ~window.bits()).min_element();
        c.colors.push_back(static_cast<Color>((position[lowest_outside] + r - 2) / (r - 1)));
    }
    for (auto col : c.colors)
        if (static_cast<int>(col) >= c.palette_size) throw std::logic_error("improved_coloring: color outside palette");
    return c;
}

UpperReport run_upper_pipeline(int n, int k, int r, int l, double p, int seeds, std::uint64_t master_seed) {
    UpperReport rep;
    rep.n = n;
    rep.k = k;
    rep.r = r;
    rep.l = l;
    rep.p = p;
    rep.upper_cond = upper_cond(n, k, l, r, p);
    rep.product_count = 1;
    for (int i = 1; i <= r; ++i) rep.product_count *= binom_exact(l + i * k, k);
    rep.window_edges = kneser_edge_count(r * k + l, k, r);
    rep.palette = chromatic_formula(n, k, r) - l / (r - 1);

    const Hypergraph full = kneser_hypergraph(full_family(n, k), r).materialized();
    for (int t = 0; t < seeds; ++t) {
        UpperTrial trial;
        trial.seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
        Hypergraph hs = sample(full, {p, trial.seed, SampleMode::coupled});
        trial.edges = hs.explicit_edges().size() / r;
        trial.window = empty_window_search(hs, l);
        if (trial.window) {
            trial.coloring = improved_coloring(hs, trial.window->window);
            trial.proper = !validate(hs, *trial.coloring).has_value();
            ++rep.successes;
        }
        rep.trials.push_back(std::move(trial));
    }
    return rep;
}

}  // namespace kneser
