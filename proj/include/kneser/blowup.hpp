#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kneser/coloring.hpp"

namespace kneser {

struct Schedule;

/// m-blow-up: vertex v becomes copies v*m .. v*m+m-1 and each edge becomes
/// the complete r-partite pattern over the copies.
Hypergraph blow_up(const Hypergraph& h, int m);

inline VertexId copy_id(VertexId v, int copy, int m) { return v * static_cast<VertexId>(m) + static_cast<VertexId>(copy); }

/// Map from blow-up vertices (v, copy) to target ids.
struct QuotientMap {
    Hypergraph source;
    int m = 1;
    std::vector<VertexId> table;  // indexed by copy_id(v, i, m)
    std::size_t target_size = 0;

    VertexId operator()(VertexId v, int copy) const { return table[copy_id(v, copy, m)]; }
};

enum class QuotientCondition { valid, copies_collide, edge_collapses, not_surjective };

struct QuotientCheck {
    QuotientCondition condition = QuotientCondition::valid;
    // Witness: two blow-up vertices for the first two conditions, an unhit
    // target id in first for the third.
    VertexId first = 0;
    VertexId second = 0;

    bool ok() const { return condition == QuotientCondition::valid; }
};

QuotientCheck check_quotient(const QuotientMap& f);

/// Image hypergraph on [target_size] with duplicate edges merged.
/// Throws std::invalid_argument if f fails check_quotient.
Hypergraph apply_quotient(const QuotientMap& f);

/// Realizes KG^r_{n,k} as a quotient of the C(k+l,k)-blow-up of KG^r_{n,k+l}:
/// copy i of S goes to the colex rank (in [n]) of the i-th k-subset of S.
QuotientMap kneser_quotient(int n, int k, int l, int r);

/// Most frequent color among the k-subsets of `set`, smallest id on ties,
/// together with its multiplicity. `kappa` colors full_family(n,k).
std::pair<Color, std::uint64_t> majority_color(std::uint64_t set, const Coloring& kappa, int n, int k);

/// Colors every q-subset of [n] with its majority color.
Coloring majority_lift(const Coloring& kappa, int n, int k, int q);

/// Monochromatic complete r-partite piece inside a colored blow-up.
struct MonoParts {
    std::vector<VertexId> edge;               // edge of the base hypergraph
    Color color = 0;
    std::vector<std::vector<VertexId>> parts;  // blow-up vertex ids, one part per edge vertex
};

/// Lifts `c` to H by per-class majority and returns ceil(m/d) same-colored
/// copies in each class of the first monochromatic H-edge; nullopt when
/// the lifted coloring is proper. Throws if c uses a color id >= d.
std::optional<MonoParts> find_mono_multipartite(const Hypergraph& h, int m, const Coloring& c, int d);

/// Independent re-check of a MonoParts result.
bool verify_mono_parts(const Hypergraph& h, int m, const Coloring& c, int d, const MonoParts& parts);

enum class WitnessCase { i = 1, ii = 2 };

struct WitnessReport {
    WitnessCase which = WitnessCase::i;
    int level = 0;
    Color alpha = 0;
    std::vector<VertexSet> parts;
    std::vector<std::uint64_t> counts;                    // alpha-colored k-subsets per part
    std::vector<std::vector<VertexSet>> mono_subsets;     // the subsets themselves
};

enum class WitnessStatus { found, no_witness, budget_exhausted };

struct WitnessSearch {
    WitnessStatus status = WitnessStatus::no_witness;
    std::optional<WitnessReport> report;
    std::uint64_t work = 0;
};

/// Searches levels and colors for the structures guaranteed for any
/// d-coloring of the k-subsets (d = chi(KG^r_{n,k+l}) - 1): case (i) first,
/// then case (ii), smaller level first, smaller color first, colex-first
/// parts. `budget` caps the number of candidate tuples examined (0 = none).
WitnessSearch lemma1_witness(int n, int k, int l, int r, const Coloring& kappa, std::uint64_t budget = 0);

/// Checks a report against its definition and the schedule thresholds.
bool validate_witness(const WitnessReport& w, const Schedule& sched, const Coloring& kappa);

}  // namespace kneser
