#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "kneser/combinatorics.hpp"

namespace kneser {

using VertexId = std::uint32_t;

/// Ordered, indexed collection of k-sets over {1..n}.
class Family {
public:
    Family() = default;

    /// Throws std::invalid_argument on duplicates or on a set whose (n,k)
    /// differs from the family's.
    Family(int n, int k, std::vector<VertexSet> sets);

    int ground_size() const { return n_; }
    int set_size() const { return k_; }
    std::size_t size() const { return sets_.size(); }
    bool empty() const { return sets_.empty(); }
    const VertexSet& operator[](std::size_t i) const { return sets_[i]; }
    const std::vector<VertexSet>& sets() const { return sets_; }
    std::optional<VertexId> index_of(const VertexSet& s) const;

    auto begin() const { return sets_.begin(); }
    auto end() const { return sets_.end(); }

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<VertexSet> sets_;
    std::unordered_map<std::uint64_t, VertexId> index_;
};

Family full_family(int n, int k);
Family stable_family(int n, int k, int s);
/// All k-subsets lying inside some member of `f`, deduplicated, colex order.
Family shadow(const Family& f, int k);

enum class SampleMode { independent, coupled };

struct SampleConfig {
    double p = 0.5;
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::coupled;
};

/// r-uniform hypergraph over vertex indices 0..N-1.
///
/// Either generator mode (edges are all r-tuples of pairwise disjoint family
/// members, produced on demand) or explicit mode (a sorted list of sorted
/// r-tuples). Explicit hypergraphs may carry a family for labelling, or none
/// at all (blow-ups, quotient targets).
class Hypergraph {
public:
    using EdgeVisitor = std::function<void(std::span<const VertexId>)>;

    /// Generator-mode Kneser hypergraph on `family`.
    static Hypergraph kneser(std::shared_ptr<const Family> family, int r);

    /// Explicit edges given as a flat array of r-tuples. Tuples are sorted
    /// and ordered canonically; repeated or degenerate edges are rejected.
    static Hypergraph from_edges(int r, std::size_t vertex_count, std::vector<VertexId> flat_edges,
                                 std::shared_ptr<const Family> family = nullptr);

    int uniformity() const { return r_; }
    std::size_t vertex_count() const { return vertex_count_; }
    bool is_generator() const { return generator_; }
    const Family* family() const { return family_.get(); }
    const std::shared_ptr<const Family>& shared_family() const { return family_; }

    /// Visits every edge once in canonical (lexicographic) order.
    void for_each_edge(const EdgeVisitor& visit) const;

    /// Flat r-tuples in canonical order.
    std::vector<VertexId> materialize() const;

    /// Explicit edge storage; empty in generator mode.
    const std::vector<VertexId>& explicit_edges() const { return edges_; }

    /// Membership for a sorted or unsorted r-tuple of vertex indices.
    bool has_edge(std::span<const VertexId> tuple) const;

    /// Copy with explicit edge storage.
    Hypergraph materialized() const;

private:
    int r_ = 2;
    std::size_t vertex_count_ = 0;
    bool generator_ = false;
    std::shared_ptr<const Family> family_;
    std::vector<VertexId> edges_;
};

/// Shorthand for the Kneser hypergraph on `family`.
Hypergraph kneser_hypergraph(Family family, int r);

BigCount edge_count(const Hypergraph& h);

/// Colex rank of a sorted index tuple viewed as an r-subset of {0..N-1}.
std::uint64_t edge_rank(std::span<const VertexId> sorted_tuple);

/// Uniform attached to a potential edge in the given sampling mode.
double edge_uniform(const SampleConfig& cfg, std::uint64_t rank);

/// Binomial random subhypergraph: keeps each edge whose uniform is below p.
Hypergraph sample(const Hypergraph& h, const SampleConfig& cfg);

}  // namespace kneser
