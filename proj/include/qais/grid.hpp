#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace qais {

/// Grid-cell coordinates, one entry per axis. Axis 0 carries the least
/// significant bit block of the linear index (big-endian encoding with the
/// highest axis in the most significant block).
using Coords = std::vector<std::uint32_t>;

/**
 * Discretization of a d-dimensional box into 2^n equal cells.
 *
 * Axis i uses qubits[i] bits, so the axis is split into 2^qubits[i] equal
 * intervals of bounds[i]. A linear cell index is the big-endian integer of
 * the concatenated per-axis bit blocks, with axis 0 least significant;
 * consecutive linear indices therefore walk axis 0 fastest.
 */
struct GridSpec {
    static constexpr int kDefaultMaxQubits = 26;

    GridSpec(std::vector<int> qubit_counts,
             std::vector<std::pair<double, double>> axis_bounds,
             int max_qubits = kDefaultMaxQubits);

    int dims() const { return static_cast<int>(qubits.size()); }
    int total_qubits() const { return n; }

    std::uint64_t cell_count() const { return std::uint64_t{1} << n; }
    std::uint64_t axis_cells(int axis) const { return std::uint64_t{1} << qubits[static_cast<std::size_t>(axis)]; }

    double domain_volume() const;

    std::vector<int> qubits;
    std::vector<std::pair<double, double>> bounds;
    int n = 0;
};

/// Axis-aligned block of grid cells; lo/hi are inclusive cell coordinates.
struct HyperRect {
    Coords lo;
    Coords hi;

    std::uint64_t cell_count() const;
    bool operator==(const HyperRect& other) const { return lo == other.lo && hi == other.hi; }
};

/// Per-axis cell widths (b_i - a_i) / 2^{q_i}.
std::vector<double> cell_widths(const GridSpec& spec);

/// Volume of one grid cell.
double cell_volume(const GridSpec& spec);

/// Mixed-radix digits of `linear` with axis 0 least significant.
Coords linear_to_coords(const GridSpec& spec, std::uint64_t linear);

/// Inverse of linear_to_coords.
std::uint64_t coords_to_linear(const GridSpec& spec, const Coords& coords);

/// Continuous interval [a_i + x_i w_i, a_i + (x_i + 1) w_i] per axis.
std::vector<std::pair<double, double>> cell_bounds(const GridSpec& spec, const Coords& coords);

/// Continuous bounding box of a cell block.
std::vector<std::pair<double, double>> rect_bounds(const GridSpec& spec, const HyperRect& rect);

/// Volume of a cell block: cell count times the per-cell volume.
double rect_volume(const GridSpec& spec, const HyperRect& rect);

/// Single-cell rect at the given coordinates.
HyperRect cell_rect(const Coords& coords);

}  // namespace qais
