#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "qais/grid.hpp"
#include "qais/statevector.hpp"

namespace qais {

/// Sorted shot record over basis states; strictly increasing indices.
struct MeasuredSet {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> states;
    std::uint64_t total = 0;

    std::size_t size() const { return states.size(); }

    /// Sorts and validates; duplicate indices are merged by summing counts.
    static MeasuredSet from_pairs(std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs);
    static MeasuredSet from_shots(ShotCounts shots);
};

/// One measured state plus the gap tiles attached to it. The rect list
/// always starts with the anchor's own single-cell rect.
struct TileGroup {
    std::uint64_t anchor = 0;
    std::uint64_t count = 0;
    std::vector<HyperRect> rects;
    std::uint64_t cells = 0;
    double volume = 0.0;
};

/// Full partition of the grid into measured-state groups.
struct TileCoverage {
    std::vector<TileGroup> groups;

    std::uint64_t total_cells() const;
};

/**
 * Greedy expansion of one tile from `start`, covering at most `delta` cells.
 * Axis 0 (least significant) extends first, up to the axis boundary; a
 * higher axis extends only when every lower axis starts at 0 and spans
 * fully, by floor(delta / combined lower volume) blocks capped at its
 * boundary. The covered cells are exactly the next `filled` linear indices.
 */
std::pair<Coords, std::uint64_t> greedy_expand(const GridSpec& spec, const Coords& start,
                                               std::uint64_t delta);

/**
 * Tile the linear gap [from, from + delta - 1] with disjoint rects whose
 * union is exactly the gap; at most 2(d-1)+1 rects.
 */
std::vector<HyperRect> gap_tiles(const GridSpec& spec, std::uint64_t from, std::uint64_t delta);

/**
 * Complete the measured set to a partition of all 2^n cells. Each inter-state
 * gap attaches to the following measured state; the gap before the first
 * state attaches to it, and the gap after the last state (up to the all-ones
 * cell) attaches to the last state.
 */
TileCoverage full_coverage(const GridSpec& spec, const MeasuredSet& measured);

/// CSV export (group id, anchor linear, rect lo/hi per dim, cells, volume)
/// for plotting tile layouts.
void write_coverage_csv(std::ostream& out, const GridSpec& spec, const TileCoverage& coverage);

enum class RegionLabel { Important, Boundary, Noise };

/**
 * Diagnostic taxonomy per measured cell: Noise has no measured axis
 * neighbor; Important has one and count >= kappa * N / M; Boundary is the
 * rest. Never feeds the estimate.
 */
std::vector<RegionLabel> classify_regions(const GridSpec& spec, const MeasuredSet& measured,
                                          double kappa = 1.0);

}  // namespace qais
