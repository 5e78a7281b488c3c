#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "kneser/family.hpp"

namespace kneser {

using Color = std::uint32_t;

/// One color id per vertex index; every id is below palette_size.
struct Coloring {
    std::vector<Color> colors;
    int palette_size = 0;

    /// Palette is max id + 1.
    static Coloring from_colors(std::vector<Color> colors);
    /// Number of distinct ids actually used.
    int colors_used() const;
    bool operator==(const Coloring&) const = default;
};

/// First monochromatic edge in canonical order, or nullopt when the coloring
/// is proper. Throws std::invalid_argument on a length mismatch.
std::optional<std::vector<VertexId>> validate(const Hypergraph& h, const Coloring& c);

/// Color of one k-set under the window coloring of KG^r_{n,k}.
Color standard_color(const VertexSet& s, int n, int k, int r);

/// Window coloring of full_family(n,k) with ceil((n-r(k-1))/(r-1)) colors.
Coloring standard_coloring(int n, int k, int r);

/// The same rule applied to an arbitrary family of k-sets (e.g. stable sets).
Coloring standard_coloring(const Family& f, int r);

/// First-fit weak coloring along `order` (identity order when empty).
Coloring greedy_upper(const Hypergraph& h, const std::vector<VertexId>& order = {});

/// ceil(M/(r-1)) for a greedily found set M in which every r vertices form an
/// edge (pairwise disjoint members for a Kneser hypergraph).
int packing_lower(const Hypergraph& h);

struct SolverLimits {
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

enum class Decision { colorable, exhausted, timed_out };

struct ColorabilityResult {
    Decision decision = Decision::exhausted;
    std::optional<Coloring> coloring;
    std::uint64_t nodes = 0;
};

/// Decides whether a proper coloring with `c` colors exists. Backtracking
/// with monochromatic-edge propagation and palette symmetry breaking.
ColorabilityResult is_colorable(const Hypergraph& h, int c, const SolverLimits& limits = {});

/// Chromatic number with witness. When the deadline cuts the search short the
/// answer is the bracket [lower, upper] with exact == false.
struct ChiCertificate {
    int chi = 0;          // equals upper; exact only when lower == upper
    int lower = 0;
    int upper = 0;
    bool exact = false;   // every c below chi was refuted exhaustively
    Coloring witness;     // proper, palette_size == upper
    std::uint64_t nodes = 0;
};

ChiCertificate exact_chi(const Hypergraph& h, const SolverLimits& limits = {});

}  // namespace kneser
