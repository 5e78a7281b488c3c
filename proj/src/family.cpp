#include "kneser/family.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <set>
#include <stdexcept>

#include "kneser/rng.hpp"

namespace kneser {

Family::Family(int n, int k, std::vector<VertexSet> sets) : n_(n), k_(k), sets_(std::move(sets)) {
    index_.reserve(sets_.size());
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        const auto& s = sets_[i];
        if (s.ground_size() != n || s.size() != k)
            throw std::invalid_argument("family member " + s.to_string() + " is not a " + std::to_string(k) + "-subset of [" +
                                        std::to_string(n) + "]");
        if (!index_.emplace(s.bits(), static_cast<VertexId>(i)).second)
            throw std::invalid_argument("duplicate family member " + s.to_string());
    }
}

std::optional<VertexId> Family::index_of(const VertexSet& s) const {
    if (s.ground_size() != n_) return std::nullopt;
    auto it = index_.find(s.bits());
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Family full_family(int n, int k) {
    std::vector<VertexSet> sets;
    if (k >= 0 && k <= n) {
        sets.reserve(binom_u64(n, k));
        for_each_k_subset(n, k, [&](std::uint64_t bits) { sets.emplace_back(n, bits); });
    }
    return Family(n, k, std::move(sets));
}

Family stable_family(int n, int k, int s) { return Family(n, k, enumerate_stable(n, k, s)); }

Family shadow(const Family& f, int k) {
    if (k > f.set_size() || k < 0) throw std::invalid_argument("shadow: k exceeds the family's set size");
    std::set<std::uint64_t> seen;
    for (const auto& s : f) for_each_k_submask(s.bits(), k, [&](std::uint64_t sub) { seen.insert(sub); });
    // numeric order of masks is colex order
    std::vector<VertexSet> sets;
    sets.reserve(seen.size());
    for (auto bits : seen) sets.emplace_back(f.ground_size(), bits);
    return Family(f.ground_size(), k, std::move(sets));
}

Hypergraph Hypergraph::kneser(std::shared_ptr<const Family> family, int r) {
    if (r < 2) throw std::invalid_argument("uniformity must be at least 2");
    if (!family) throw std::invalid_argument("kneser: null family");
    Hypergraph h;
    h.r_ = r;
    h.vertex_count_ = family->size();
    h.generator_ = true;
    h.family_ = std::move(family);
    return h;
}

namespace {

bool tuple_less(const VertexId* a, const VertexId* b, int r) { return std::lexicographical_compare(a, a + r, b, b + r); }

}  // namespace

Hypergraph Hypergraph::from_edges(int r, std::size_t vertex_count, std::vector<VertexId> flat, std::shared_ptr<const Family> family) {
    if (r < 2) throw std::invalid_argument("uniformity must be at least 2");
    if (flat.size() % r != 0) throw std::invalid_argument("edge array length is not a multiple of r");
    if (family && family->size() != vertex_count) throw std::invalid_argument("family size disagrees with vertex count");
    std::size_t m = flat.size() / r;
    for (std::size_t e = 0; e < m; ++e) {
        auto* t = flat.data() + e * r;
        std::sort(t, t + r);
        for (int j = 0; j < r; ++j) {
            if (t[j] >= vertex_count) throw std::invalid_argument("edge references vertex " + std::to_string(t[j]) + " out of range");
            if (j > 0 && t[j] == t[j - 1]) throw std::invalid_argument("edge repeats vertex " + std::to_string(t[j]));
        }
    }
    std::vector<std::size_t> order(m);
    for (std::size_t e = 0; e < m; ++e) order[e] = e;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return tuple_less(flat.data() + a * r, flat.data() + b * r, r); });
    std::vector<VertexId> sorted;
    sorted.reserve(flat.size());
    for (std::size_t idx = 0; idx < m; ++idx) {
        const auto* t = flat.data() + order[idx] * r;
        if (idx > 0 && std::equal(t, t + r, sorted.end() - r)) throw std::invalid_argument("duplicate edge");
        sorted.insert(sorted.end(), t, t + r);
    }
    Hypergraph h;
    h.r_ = r;
    h.vertex_count_ = vertex_count;
    h.generator_ = false;
    h.family_ = std::move(family);
    h.edges_ = std::move(sorted);
    return h;
}

void Hypergraph::for_each_edge(const EdgeVisitor& visit) const {
    if (!generator_) {
        for (std::size_t off = 0; off < edges_.size(); off += r_) visit(std::span<const VertexId>(edges_.data() + off, r_));
        return;
    }
    const auto& sets = family_->sets();
    const std::size_t n = sets.size();
    std::vector<std::uint64_t> masks(n);
    for (std::size_t i = 0; i < n; ++i) masks[i] = sets[i].bits();
    std::vector<VertexId> tuple(r_);
    // depth-first over increasing indices, carrying the union of chosen sets
    auto extend = [&](auto&& self, int depth, std::size_t from, std::uint64_t used) -> void {
        for (std::size_t j = from; j < n; ++j) {
            if (masks[j] & used) continue;
            tuple[depth] = static_cast<VertexId>(j);
            if (depth + 1 == r_)
                visit(std::span<const VertexId>(tuple.data(), r_));
            else
                self(self, depth + 1, j + 1, used | masks[j]);
        }
    };
    extend(extend, 0, 0, 0);
}

std::vector<VertexId> Hypergraph::materialize() const {
    if (!generator_) return edges_;
    std::vector<VertexId> flat;
    for_each_edge([&](std::span<const VertexId> e) { flat.insert(flat.end(), e.begin(), e.end()); });
    return flat;
}

Hypergraph Hypergraph::materialized() const {
    if (!generator_) return *this;
    Hypergraph h = *this;
    h.generator_ = false;
    h.edges_ = materialize();
    return h;
}

bool Hypergraph::has_edge(std::span<const VertexId> tuple) const {
    if (static_cast<int>(tuple.size()) != r_) return false;
    std::vector<VertexId> t(tuple.begin(), tuple.end());
    std::sort(t.begin(), t.end());
    for (int j = 0; j < r_; ++j) {
        if (t[j] >= vertex_count_) return false;
        if (j > 0 && t[j] == t[j - 1]) return false;
    }
    if (generator_) {
        std::uint64_t used = 0;
        for (auto v : t) {
            auto bits = (*family_)[v].bits();
            if (bits & used) return false;
            used |= bits;
        }
        return true;
    }
    std::size_t lo = 0, hi = edges_.size() / r_;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (tuple_less(edges_.data() + mid * r_, t.data(), r_))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < edges_.size() / r_ && std::equal(t.begin(), t.end(), edges_.begin() + lo * r_);
}

Hypergraph kneser_hypergraph(Family family, int r) {
    return Hypergraph::kneser(std::make_shared<const Family>(std::move(family)), r);
}

BigCount edge_count(const Hypergraph& h) {
    if (!h.is_generator()) return BigCount(h.explicit_edges().size() / h.uniformity());
    std::uint64_t count = 0;
    h.for_each_edge([&](std::span<const VertexId>) { ++count; });
    return count;
}

namespace {

std::uint64_t small_binom(std::uint64_t n, int j) {
    if (static_cast<std::uint64_t>(j) > n) return 0;
    unsigned __int128 acc = 1;
    for (int i = 1; i <= j; ++i) {
        acc = acc * (n - j + i) / i;
        if (acc > ~std::uint64_t{0}) throw std::overflow_error("edge rank exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

}  // namespace

std::uint64_t edge_rank(std::span<const VertexId> sorted_tuple) {
    std::uint64_t rank = 0;
    for (std::size_t j = 0; j < sorted_tuple.size(); ++j) rank += small_binom(sorted_tuple[j], static_cast<int>(j) + 1);
    return rank;
}

double edge_uniform(const SampleConfig& cfg, std::uint64_t rank) {
    std::uint64_t stream = cfg.seed;
    if (cfg.mode == SampleMode::independent) stream = mix_key(cfg.seed, std::bit_cast<std::uint64_t>(cfg.p));
    return uniform01(stream, rank);
}

Hypergraph sample(const Hypergraph& h, const SampleConfig& cfg) {
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw std::invalid_argument("sampling probability outside [0,1]");
    std::vector<VertexId> kept;
    h.for_each_edge([&](std::span<const VertexId> e) {
        if (edge_uniform(cfg, edge_rank(e)) < cfg.p) kept.insert(kept.end(), e.begin(), e.end());
    });
    return Hypergraph::from_edges(h.uniformity(), h.vertex_count(), std::move(kept), h.shared_family());
}

}  // namespace kneser
