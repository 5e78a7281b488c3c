#include "kneser/coloring.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

namespace kneser {

Coloring Coloring::from_colors(std::vector<Color> colors) {
    Coloring c;
    c.palette_size = colors.empty() ? 0 : static_cast<int>(*std::max_element(colors.begin(), colors.end())) + 1;
    c.colors = std::move(colors);
    return c;
}

int Coloring::colors_used() const { return static_cast<int>(std::set<Color>(colors.begin(), colors.end()).size()); }

std::optional<std::vector<VertexId>> validate(const Hypergraph& h, const Coloring& c) {
    if (c.colors.size() != h.vertex_count())
        throw std::invalid_argument("coloring has " + std::to_string(c.colors.size()) + " entries for " +
                                    std::to_string(h.vertex_count()) + " vertices");
    std::optional<std::vector<VertexId>> bad;
    // generator mode cannot stop early, so remember only the first hit
    h.for_each_edge([&](std::span<const VertexId> e) {
        if (bad) return;
        Color col = c.colors[e[0]];
        for (auto v : e.subspan(1))
            if (c.colors[v] != col) return;
        bad.emplace(e.begin(), e.end());
    });
    return bad;
}

Color standard_color(const VertexSet& s, int n, int k, int r) {
    int i = s.min_element();
    if (i <= n - r * k + 1) return static_cast<Color>((i + r - 2) / (r - 1));
    return 0;
}

namespace {

int standard_palette(int n, int k, int r) {
    int num = n - r * (k - 1);
    return (num + r - 2) / (r - 1);
}

}  // namespace

Coloring standard_coloring(const Family& f, int r) {
    const int n = f.ground_size(), k = f.set_size();
    if (r < 2) throw std::invalid_argument("standard_coloring: r must be at least 2");
    if (n < r * k) throw std::invalid_argument("standard_coloring: needs n >= rk");
    Coloring c;
    c.palette_size = standard_palette(n, k, r);
    c.colors.reserve(f.size());
    for (const auto& s : f) c.colors.push_back(standard_color(s, n, k, r));
    return c;
}

Coloring standard_coloring(int n, int k, int r) {
    if (n < r * k) throw std::invalid_argument("standard_coloring: needs n >= rk");
    return standard_coloring(full_family(n, k), r);
}

namespace {

// Explicit edge list plus per-vertex incidence.
struct Incidence {
    int r = 2;
    std::size_t n = 0;
    std::vector<VertexId> edges;
    std::vector<std::vector<std::uint32_t>> incident;

    explicit Incidence(const Hypergraph& h) : r(h.uniformity()), n(h.vertex_count()), edges(h.materialize()), incident(n) {
        for (std::size_t e = 0; e * r < edges.size(); ++e)
            for (int j = 0; j < r; ++j) incident[edges[e * r + j]].push_back(static_cast<std::uint32_t>(e));
    }

    std::size_t edge_total() const { return edges.size() / r; }
    const VertexId* edge(std::uint32_t e) const { return edges.data() + static_cast<std::size_t>(e) * r; }
};

constexpr int kUncolored = -1;

// True when coloring v with col would complete a monochromatic edge.
bool completes_mono(const Incidence& inc, const std::vector<int>& color, VertexId v, int col) {
    for (auto e : inc.incident[v]) {
        const VertexId* t = inc.edge(e);
        bool mono = true;
        for (int j = 0; j < inc.r && mono; ++j)
            if (t[j] != v && color[t[j]] != col) mono = false;
        if (mono) return true;
    }
    return false;
}

std::vector<VertexId> degree_order(const Incidence& inc) {
    std::vector<VertexId> order(inc.n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexId a, VertexId b) { return inc.incident[a].size() > inc.incident[b].size(); });
    return order;
}

Coloring greedy_with(const Incidence& inc, const std::vector<VertexId>& order) {
    std::vector<int> color(inc.n, kUncolored);
    int palette = 0;
    for (auto v : order) {
        int col = 0;
        while (completes_mono(inc, color, v, col)) ++col;
        color[v] = col;
        palette = std::max(palette, col + 1);
    }
    Coloring c;
    c.palette_size = palette;
    c.colors.assign(color.begin(), color.end());
    return c;
}

// Backtracking search for a weak c-coloring.
class Search {
public:
    Search(const Incidence& inc, int c, const SolverLimits& limits)
        : inc_(inc), c_(c), limits_(limits), color_(inc.n, kUncolored), removed_(inc.n, 0) {
        full_ = (c_ >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << c_) - 1);
        for (std::size_t v = 0; v < inc.n; ++v) degree_.push_back(inc.incident[v].size());
    }

    Decision run() {
        if (inc_.n == 0) return Decision::colorable;
        return descend(0, -1) ? Decision::colorable : (timed_out_ ? Decision::timed_out : Decision::exhausted);
    }

    std::uint64_t nodes() const { return nodes_; }
    Coloring coloring() const {
        Coloring c;
        c.palette_size = c_;
        c.colors.assign(color_.begin(), color_.end());
        return c;
    }

private:
    // Colors open to v: its domain cut to [0, max_used + 1].
    std::uint64_t options(VertexId v, int max_used) const {
        int top = std::min(c_ - 1, max_used + 1);
        std::uint64_t window = (top >= 63) ? ~std::uint64_t{0} : ((std::uint64_t{2} << top) - 1);
        return full_ & ~removed_[v] & window;
    }

    bool out_of_time() {
        if (timed_out_) return true;
        if (limits_.deadline && (nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > *limits_.deadline) timed_out_ = true;
        return timed_out_;
    }

    // Colors v and forbids col wherever an edge is one vertex short of being
    // monochromatic. Returns false on a domain wipeout.
    bool assign(VertexId v, int col) {
        color_[v] = col;
        const std::uint64_t bit = std::uint64_t{1} << col;
        for (auto e : inc_.incident[v]) {
            const VertexId* t = inc_.edge(e);
            int same = 0;
            VertexId open = 0;
            int open_count = 0;
            for (int j = 0; j < inc_.r; ++j) {
                int cj = color_[t[j]];
                if (cj == col)
                    ++same;
                else if (cj == kUncolored) {
                    ++open_count;
                    open = t[j];
                }
            }
            if (same == inc_.r) return false;
            if (same == inc_.r - 1 && open_count == 1 && !(removed_[open] & bit)) {
                removed_[open] |= bit;
                trail_.emplace_back(open, bit);
                if ((full_ & ~removed_[open]) == 0) return false;
            }
        }
        return true;
    }

    void undo(VertexId v, std::size_t mark) {
        while (trail_.size() > mark) {
            auto [u, bit] = trail_.back();
            removed_[u] &= ~bit;
            trail_.pop_back();
        }
        color_[v] = kUncolored;
    }

    bool descend(std::size_t colored, int max_used) {
        ++nodes_;
        if (out_of_time()) return false;
        if (colored == inc_.n) return true;

        // most constrained vertex, ties to higher degree
        VertexId pick = 0;
        int best = 65;
        for (VertexId v = 0; v < inc_.n; ++v) {
            if (color_[v] != kUncolored) continue;
            int opts = std::popcount(options(v, max_used));
            if (opts < best || (opts == best && degree_[v] > degree_[pick])) {
                best = opts;
                pick = v;
                if (opts == 0) return false;
            }
        }

        std::uint64_t choices = options(pick, max_used);
        for (; choices; choices &= choices - 1) {
            int col = std::countr_zero(choices);
            std::size_t mark = trail_.size();
            if (assign(pick, col) && descend(colored + 1, std::max(max_used, col))) return true;
            undo(pick, mark);
            if (timed_out_) return false;
        }
        return false;
    }

    const Incidence& inc_;
    int c_;
    SolverLimits limits_;
    std::uint64_t full_ = 0;
    std::vector<int> color_;
    std::vector<std::uint64_t> removed_;
    std::vector<std::size_t> degree_;
    std::vector<std::pair<VertexId, std::uint64_t>> trail_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

ColorabilityResult decide(const Incidence& inc, int c, const SolverLimits& limits) {
    if (c < 1) throw std::invalid_argument("is_colorable: c must be positive");
    ColorabilityResult out;
    if (static_cast<std::size_t>(c) >= inc.n) {
        std::vector<Color> distinct(inc.n);
        std::iota(distinct.begin(), distinct.end(), 0);
        Coloring col;
        col.colors = std::move(distinct);
        col.palette_size = c;
        out.decision = Decision::colorable;
        out.coloring = std::move(col);
        return out;
    }
    if (c > 64) throw std::invalid_argument("is_colorable: palettes above 64 colors are not supported");
    Search search(inc, c, limits);
    out.decision = search.run();
    out.nodes = search.nodes();
    if (out.decision == Decision::colorable) out.coloring = search.coloring();
    return out;
}

bool is_hyperclique_extension(const Hypergraph& h, const std::vector<VertexId>& members, VertexId v) {
    const int r = h.uniformity();
    if (static_cast<int>(members.size()) < r - 1) return true;
    // every (r-1)-subset of members together with v must be an edge
    std::vector<VertexId> tuple(r);
    bool ok = true;
    for_each_k_subset(static_cast<int>(members.size()), r - 1, [&](std::uint64_t pick) {
        if (!ok) return;
        int j = 0;
        for (std::uint64_t b = pick; b; b &= b - 1) tuple[j++] = members[std::countr_zero(b)];
        tuple[r - 1] = v;
        if (!h.has_edge(tuple)) ok = false;
    });
    return ok;
}

}  // namespace

Coloring greedy_upper(const Hypergraph& h, const std::vector<VertexId>& order) {
    Incidence inc(h);
    if (order.empty()) {
        std::vector<VertexId> identity(inc.n);
        std::iota(identity.begin(), identity.end(), 0);
        return greedy_with(inc, identity);
    }
    if (order.size() != inc.n) throw std::invalid_argument("greedy_upper: order is not a permutation of the vertices");
    return greedy_with(inc, order);
}

int packing_lower(const Hypergraph& h) {
    const int r = h.uniformity();
    if (h.vertex_count() == 0) return 0;
    std::size_t best = 1;
    if (h.is_generator()) {
        std::uint64_t used = 0;
        std::size_t packed = 0;
        for (const auto& s : *h.family()) {
            if (s.bits() & used) continue;
            used |= s.bits();
            ++packed;
        }
        best = std::max(best, packed);
    } else if (!h.explicit_edges().empty()) {
        Incidence inc(h);
        auto order = degree_order(inc);
        std::size_t seeds = std::min<std::size_t>(inc.edge_total(), 64);
        for (std::size_t e = 0; e < seeds; ++e) {
            std::vector<VertexId> members(inc.edge(static_cast<std::uint32_t>(e)), inc.edge(static_cast<std::uint32_t>(e)) + r);
            for (auto v : order) {
                if (std::find(members.begin(), members.end(), v) != members.end()) continue;
                if (is_hyperclique_extension(h, members, v)) members.push_back(v);
            }
            best = std::max(best, members.size());
        }
    }
    return static_cast<int>((best + r - 2) / (r - 1));
}

ColorabilityResult is_colorable(const Hypergraph& h, int c, const SolverLimits& limits) {
    Incidence inc(h);
    return decide(inc, c, limits);
}

ChiCertificate exact_chi(const Hypergraph& h, const SolverLimits& limits) {
    ChiCertificate cert;
    if (h.vertex_count() == 0) {
        cert.exact = true;
        return cert;
    }
    Incidence inc(h);
    cert.lower = std::max(1, packing_lower(h));
    cert.witness = greedy_with(inc, degree_order(inc));
    cert.upper = cert.witness.palette_size;
    for (int c = cert.lower; c < cert.upper; ++c) {
        auto res = decide(inc, c, limits);
        cert.nodes += res.nodes;
        if (res.decision == Decision::colorable) {
            cert.upper = c;
            cert.witness = std::move(*res.coloring);
            break;
        }
        if (res.decision == Decision::timed_out) break;
        cert.lower = c + 1;
    }
    cert.lower = std::min(cert.lower, cert.upper);
    cert.chi = cert.upper;
    cert.exact = cert.lower == cert.upper;
    cert.witness.palette_size = cert.upper;
    return cert;
}

}  // namespace kneser
