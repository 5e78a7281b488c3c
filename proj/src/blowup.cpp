#include "kneser/blowup.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "kneser/bounds.hpp"

namespace kneser {

namespace {

// Calls visit once per blow-up edge of `edge` (one copy index per vertex).
template <typename Visit>
void for_each_copy_tuple(std::span<const VertexId> edge, int m, Visit&& visit) {
    const int r = static_cast<int>(edge.size());
    std::vector<int> copies(r, 0);
    std::vector<VertexId> tuple(r);
    while (true) {
        for (int j = 0; j < r; ++j) tuple[j] = copy_id(edge[j], copies[j], m);
        visit(std::span<const VertexId>(tuple));
        int j = r - 1;
        while (j >= 0 && ++copies[j] == m) copies[j--] = 0;
        if (j < 0) return;
    }
}

}  // namespace

Hypergraph blow_up(const Hypergraph& h, int m) {
    if (m < 1) throw std::invalid_argument("blow_up: multiplicity must be at least 1");
    std::vector<VertexId> flat;
    h.for_each_edge([&](std::span<const VertexId> e) {
        for_each_copy_tuple(e, m, [&](std::span<const VertexId> t) { flat.insert(flat.end(), t.begin(), t.end()); });
    });
    return Hypergraph::from_edges(h.uniformity(), h.vertex_count() * m, std::move(flat));
}

QuotientCheck check_quotient(const QuotientMap& f) {
    const std::size_t nv = f.source.vertex_count();
    if (f.m < 1 || f.table.size() != nv * f.m) throw std::invalid_argument("check_quotient: table is not total on V x [m]");
    for (auto id : f.table)
        if (id >= f.target_size) throw std::invalid_argument("check_quotient: image " + std::to_string(id) + " outside target");

    for (VertexId v = 0; v < nv; ++v)
        for (int i = 0; i < f.m; ++i)
            for (int j = i + 1; j < f.m; ++j)
                if (f(v, i) == f(v, j)) return {QuotientCondition::copies_collide, copy_id(v, i, f.m), copy_id(v, j, f.m)};

    std::optional<QuotientCheck> collapse;
    f.source.for_each_edge([&](std::span<const VertexId> e) {
        if (collapse) return;
        for (std::size_t a = 0; a < e.size() && !collapse; ++a)
            for (std::size_t b = a + 1; b < e.size() && !collapse; ++b)
                for (int i = 0; i < f.m && !collapse; ++i)
                    for (int j = 0; j < f.m && !collapse; ++j)
                        if (f(e[a], i) == f(e[b], j))
                            collapse = QuotientCheck{QuotientCondition::edge_collapses, copy_id(e[a], i, f.m), copy_id(e[b], j, f.m)};
    });
    if (collapse) return *collapse;

    std::vector<bool> hit(f.target_size, false);
    for (auto id : f.table) hit[id] = true;
    for (std::size_t t = 0; t < f.target_size; ++t)
        if (!hit[t]) return {QuotientCondition::not_surjective, static_cast<VertexId>(t), 0};
    return {};
}

Hypergraph apply_quotient(const QuotientMap& f) {
    if (!check_quotient(f).ok()) throw std::invalid_argument("apply_quotient: map violates the quotient conditions");
    const int r = f.source.uniformity();
    std::vector<std::vector<VertexId>> images;
    f.source.for_each_edge([&](std::span<const VertexId> e) {
        for_each_copy_tuple(e, f.m, [&](std::span<const VertexId> t) {
            std::vector<VertexId> img(r);
            for (int j = 0; j < r; ++j) img[j] = f.table[t[j]];
            std::sort(img.begin(), img.end());
            images.push_back(std::move(img));
        });
    });
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    std::vector<VertexId> flat;
    flat.reserve(images.size() * r);
    for (const auto& img : images) flat.insert(flat.end(), img.begin(), img.end());
    return Hypergraph::from_edges(r, f.target_size, std::move(flat));
}

QuotientMap kneser_quotient(int n, int k, int l, int r) {
    if (k < 1 || l < 0 || r < 2) throw std::invalid_argument("kneser_quotient: need k >= 1, l >= 0, r >= 2");
    if (n < (k + l) * r) throw std::invalid_argument("kneser_quotient: needs n >= (k+l)r");
    auto big = std::make_shared<const Family>(full_family(n, k + l));
    QuotientMap f;
    f.source = Hypergraph::kneser(big, r);
    f.m = static_cast<int>(binom_u64(k + l, k));
    f.target_size = binom_u64(n, k);
    f.table.reserve(big->size() * f.m);
    for (const auto& s : *big)
        for_each_k_submask(s.bits(), k, [&](std::uint64_t sub) { f.table.push_back(static_cast<VertexId>(colex_rank(VertexSet(n, sub)))); });
    return f;
}

std::pair<Color, std::uint64_t> majority_color(std::uint64_t set, const Coloring& kappa, int n, int k) {
    std::vector<std::uint64_t> counts(std::max(kappa.palette_size, 1), 0);
    for_each_k_submask(set, k, [&](std::uint64_t sub) {
        Color c = kappa.colors[colex_rank(VertexSet(n, sub))];
        if (c >= counts.size()) counts.resize(c + 1, 0);
        ++counts[c];
    });
    auto best = std::max_element(counts.begin(), counts.end());  // first maximum = smallest id
    return {static_cast<Color>(best - counts.begin()), *best};
}

Coloring majority_lift(const Coloring& kappa, int n, int k, int q) {
    if (q < k) throw std::invalid_argument("majority_lift: q must be at least k");
    if (kappa.colors.size() != binom_u64(n, k)) throw std::invalid_argument("majority_lift: coloring does not cover all k-subsets");
    Coloring lifted;
    lifted.palette_size = kappa.palette_size;
    lifted.colors.reserve(binom_u64(n, q));
    for_each_k_subset(n, q, [&](std::uint64_t set) { lifted.colors.push_back(majority_color(set, kappa, n, k).first); });
    return lifted;
}

std::optional<MonoParts> find_mono_multipartite(const Hypergraph& h, int m, const Coloring& c, int d) {
    if (m < 1 || d < 1) throw std::invalid_argument("find_mono_multipartite: m and d must be positive");
    if (c.colors.size() != h.vertex_count() * m) throw std::invalid_argument("find_mono_multipartite: coloring size mismatch");
    if (c.palette_size > d) throw std::invalid_argument("find_mono_multipartite: palette exceeds d");
    for (auto col : c.colors)
        if (col >= static_cast<Color>(d)) throw std::invalid_argument("find_mono_multipartite: color id exceeds d");

    Coloring lifted;
    lifted.palette_size = d;
    lifted.colors.resize(h.vertex_count());
    std::vector<int> counts(d);
    for (VertexId v = 0; v < h.vertex_count(); ++v) {
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < m; ++i) ++counts[c.colors[copy_id(v, i, m)]];
        lifted.colors[v] = static_cast<Color>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    }
    auto edge = validate(h, lifted);
    if (!edge) return std::nullopt;

    const int part = (m + d - 1) / d;
    MonoParts out;
    out.edge = *edge;
    out.color = lifted.colors[edge->front()];
    for (auto v : out.edge) {
        std::vector<VertexId> members;
        for (int i = 0; i < m && static_cast<int>(members.size()) < part; ++i)
            if (c.colors[copy_id(v, i, m)] == out.color) members.push_back(copy_id(v, i, m));
        if (static_cast<int>(members.size()) < part) throw std::logic_error("majority class smaller than ceil(m/d)");
        out.parts.push_back(std::move(members));
    }
    return out;
}

bool verify_mono_parts(const Hypergraph& h, int m, const Coloring& c, int d, const MonoParts& mp) {
    const int part = (m + d - 1) / d;
    if (static_cast<int>(mp.edge.size()) != h.uniformity() || !h.has_edge(mp.edge)) return false;
    if (mp.parts.size() != mp.edge.size()) return false;
    for (std::size_t j = 0; j < mp.parts.size(); ++j) {
        auto members = mp.parts[j];
        if (static_cast<int>(members.size()) < part) return false;
        std::sort(members.begin(), members.end());
        if (std::adjacent_find(members.begin(), members.end()) != members.end()) return false;
        for (auto id : members) {
            if (id / static_cast<VertexId>(m) != mp.edge[j]) return false;
            if (id >= c.colors.size() || c.colors[id] != mp.color) return false;
        }
    }
    return true;
}

namespace {

struct LevelTable {
    int q = 0;
    std::vector<std::uint64_t> sets;                 // colex order
    std::vector<std::vector<std::uint32_t>> counts;  // counts[set][color]
};

LevelTable tabulate(int n, int k, int q, int palette, const Coloring& kappa) {
    LevelTable t;
    t.q = q;
    for_each_k_subset(n, q, [&](std::uint64_t set) {
        std::vector<std::uint32_t> per(palette, 0);
        for_each_k_submask(set, k, [&](std::uint64_t sub) { ++per[kappa.colors[colex_rank(VertexSet(n, sub))]]; });
        t.sets.push_back(set);
        t.counts.push_back(std::move(per));
    });
    return t;
}

std::uint64_t clamp_u64(const BigCount& x) {
    return x > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max() : x.convert_to<std::uint64_t>();
}

class BudgetExceeded {};

// Picks `need` pairwise disjoint members of `candidates` (ascending positions)
// that also avoid `used`; fills `chosen` and returns true on success.
bool pick_disjoint(const std::vector<std::uint64_t>& candidates, std::size_t from, int need, std::uint64_t used,
                   std::vector<std::uint64_t>& chosen, std::uint64_t& work, std::uint64_t budget) {
    if (need == 0) return true;
    for (std::size_t j = from; j < candidates.size(); ++j) {
        if (budget && ++work > budget) throw BudgetExceeded{};
        if (candidates[j] & used) continue;
        chosen.push_back(candidates[j]);
        if (pick_disjoint(candidates, j + 1, need - 1, used | candidates[j], chosen, work, budget)) return true;
        chosen.pop_back();
    }
    return false;
}

std::vector<std::uint64_t> filter(const LevelTable& t, Color alpha, std::uint64_t threshold) {
    std::vector<std::uint64_t> out;
    for (std::size_t j = 0; j < t.sets.size(); ++j)
        if (t.counts[j][alpha] >= threshold) out.push_back(t.sets[j]);
    return out;
}

WitnessReport make_report(WitnessCase which, int level, Color alpha, const std::vector<std::uint64_t>& parts, int n, int k,
                          const Coloring& kappa) {
    WitnessReport w;
    w.which = which;
    w.level = level;
    w.alpha = alpha;
    for (auto bits : parts) {
        std::vector<VertexSet> mono;
        for_each_k_submask(bits, k, [&](std::uint64_t sub) {
            VertexSet s(n, sub);
            if (kappa.colors[colex_rank(s)] == alpha) mono.push_back(s);
        });
        w.parts.emplace_back(n, bits);
        w.counts.push_back(mono.size());
        w.mono_subsets.push_back(std::move(mono));
    }
    return w;
}

}  // namespace

WitnessSearch lemma1_witness(int n, int k, int l, int r, const Coloring& kappa, std::uint64_t budget) {
    const Schedule sched = schedule(n, k, l, r);
    if (kappa.colors.size() != binom_u64(n, k)) throw std::invalid_argument("lemma1_witness: coloring does not cover all k-subsets");
    for (auto c : kappa.colors)
        if (c >= static_cast<Color>(sched.d)) throw std::invalid_argument("lemma1_witness: coloring uses more than d colors");
    const int palette = sched.d;

    WitnessSearch out;
    std::vector<LevelTable> levels;
    try {
        for (int i = 0; i <= sched.u; ++i) {
            out.work += binom_u64(n, sched.q[i]);
            if (budget && out.work > budget) throw BudgetExceeded{};
            levels.push_back(tabulate(n, k, sched.q[i], palette, kappa));
        }
        std::vector<std::uint64_t> chosen;
        for (int i = 0; i <= sched.u; ++i) {
            const auto z = clamp_u64(sched.z[i]);
            for (Color alpha = 0; alpha < static_cast<Color>(palette); ++alpha) {
                auto cand = filter(levels[i], alpha, z);
                chosen.clear();
                if (pick_disjoint(cand, 0, r, 0, chosen, out.work, budget)) {
                    out.report = make_report(WitnessCase::i, i, alpha, chosen, n, k, kappa);
                    break;
                }
            }
            if (out.report) break;
        }
        for (int i = 0; !out.report && i < sched.u; ++i) {
            const auto t = clamp_u64(sched.t[i]);
            const auto z = clamp_u64(sched.z[i + 1]);
            for (Color alpha = 0; alpha < static_cast<Color>(palette) && !out.report; ++alpha) {
                auto first = filter(levels[i], alpha, t);
                auto rest = filter(levels[i + 1], alpha, z);
                for (auto a1 : first) {
                    chosen.assign(1, a1);
                    if (pick_disjoint(rest, 0, r - 1, a1, chosen, out.work, budget)) {
                        out.report = make_report(WitnessCase::ii, i, alpha, chosen, n, k, kappa);
                        break;
                    }
                }
            }
        }
    } catch (const BudgetExceeded&) {
        out.status = WitnessStatus::budget_exhausted;
        out.report.reset();
        return out;
    }
    if (!out.report) {
        out.status = WitnessStatus::no_witness;
        return out;
    }
    if (!validate_witness(*out.report, sched, kappa)) throw std::logic_error("lemma1_witness produced an invalid witness");
    out.status = WitnessStatus::found;
    return out;
}

bool validate_witness(const WitnessReport& w, const Schedule& sched, const Coloring& kappa) {
    const int n = sched.n, k = sched.k, r = sched.r;
    if (static_cast<int>(w.parts.size()) != r || w.counts.size() != w.parts.size() || w.mono_subsets.size() != w.parts.size())
        return false;
    if (w.level < 0 || w.level > sched.u) return false;
    if (w.which == WitnessCase::ii && w.level >= sched.u) return false;
    if (kappa.colors.size() != binom_u64(n, k)) return false;

    // every k-subset of [n], checked for containment directly
    const Family all = full_family(n, k);
    std::uint64_t used = 0;
    for (int j = 0; j < r; ++j) {
        const VertexSet& part = w.parts[j];
        const bool head = (w.which == WitnessCase::ii && j == 0) || w.which == WitnessCase::i;
        const int expected_size = head ? sched.q[w.level] : sched.q[w.level + 1];
        if (part.ground_size() != n || part.size() != expected_size) return false;
        if (part.bits() & used) return false;
        used |= part.bits();

        std::uint64_t count = 0;
        for (std::size_t idx = 0; idx < all.size(); ++idx)
            if (all[idx].subset_of(part) && kappa.colors[idx] == w.alpha) ++count;
        if (count != w.counts[j] || count != w.mono_subsets[j].size()) return false;
        for (const auto& s : w.mono_subsets[j]) {
            auto idx = all.index_of(s);
            if (!idx || !s.subset_of(part) || kappa.colors[*idx] != w.alpha) return false;
        }

        BigCount threshold;
        if (w.which == WitnessCase::i)
            threshold = sched.z[w.level];
        else
            threshold = (j == 0) ? sched.t[w.level] : sched.z[w.level + 1];
        if (BigCount(count) < threshold) return false;
    }
    return true;
}

}  // namespace kneser
