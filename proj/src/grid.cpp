#include "qais/grid.hpp"

#include <string>

#include "qais/common.hpp"

namespace qais {

GridSpec::GridSpec(std::vector<int> qubit_counts,
                   std::vector<std::pair<double, double>> axis_bounds,
                   int max_qubits)
    : qubits(std::move(qubit_counts)), bounds(std::move(axis_bounds)) {
    if (qubits.empty()) fail_invalid("GridSpec: need at least one dimension");
    if (qubits.size() != bounds.size())
        fail_invalid("GridSpec: qubit list and bounds list differ in length");
    n = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] < 1) fail_invalid("GridSpec: each axis needs at least one qubit");
        if (!(bounds[i].second > bounds[i].first))
            fail_invalid("GridSpec: axis " + std::to_string(i) + " has empty interval");
        n += qubits[i];
    }
    if (n > max_qubits)
        fail_invalid("GridSpec: total qubits " + std::to_string(n) + " exceeds maximum " +
                     std::to_string(max_qubits));
}

double GridSpec::domain_volume() const {
    double v = 1.0;
    for (const auto& [a, b] : bounds) v *= (b - a);
    return v;
}

std::uint64_t HyperRect::cell_count() const {
    std::uint64_t cells = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) cells *= (hi[i] - lo[i] + 1);
    return cells;
}

std::vector<double> cell_widths(const GridSpec& spec) {
    std::vector<double> w(static_cast<std::size_t>(spec.dims()));
    for (int i = 0; i < spec.dims(); ++i) {
        const auto& [a, b] = spec.bounds[static_cast<std::size_t>(i)];
        w[static_cast<std::size_t>(i)] = (b - a) / static_cast<double>(spec.axis_cells(i));
    }
    return w;
}

double cell_volume(const GridSpec& spec) {
    double v = 1.0;
    for (double w : cell_widths(spec)) v *= w;
    return v;
}

Coords linear_to_coords(const GridSpec& spec, std::uint64_t linear) {
    if (linear >= spec.cell_count())
        fail_invalid("linear_to_coords: index " + std::to_string(linear) + " out of range");
    Coords coords(static_cast<std::size_t>(spec.dims()));
    for (int i = 0; i < spec.dims(); ++i) {
        const std::uint64_t radix = spec.axis_cells(i);
        coords[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(linear % radix);
        linear /= radix;
    }
    return coords;
}

std::uint64_t coords_to_linear(const GridSpec& spec, const Coords& coords) {
    if (coords.size() != static_cast<std::size_t>(spec.dims()))
        fail_invalid("coords_to_linear: dimension mismatch");
    std::uint64_t linear = 0;
    for (int i = spec.dims() - 1; i >= 0; --i) {
        const std::uint64_t radix = spec.axis_cells(i);
        const std::uint32_t x = coords[static_cast<std::size_t>(i)];
        if (x >= radix) fail_invalid("coords_to_linear: coordinate out of range on axis " + std::to_string(i));
        linear = linear * radix + x;
    }
    return linear;
}

std::vector<std::pair<double, double>> cell_bounds(const GridSpec& spec, const Coords& coords) {
    const std::vector<double> w = cell_widths(spec);
    std::vector<std::pair<double, double>> out(static_cast<std::size_t>(spec.dims()));
    for (int i = 0; i < spec.dims(); ++i) {
        const std::size_t s = static_cast<std::size_t>(i);
        const double a = spec.bounds[s].first;
        out[s] = {a + coords[s] * w[s], a + (coords[s] + 1) * w[s]};
    }
    return out;
}

std::vector<std::pair<double, double>> rect_bounds(const GridSpec& spec, const HyperRect& rect) {
    const std::vector<double> w = cell_widths(spec);
    std::vector<std::pair<double, double>> out(static_cast<std::size_t>(spec.dims()));
    for (int i = 0; i < spec.dims(); ++i) {
        const std::size_t s = static_cast<std::size_t>(i);
        const double a = spec.bounds[s].first;
        out[s] = {a + rect.lo[s] * w[s], a + (rect.hi[s] + 1.0) * w[s]};
    }
    return out;
}

double rect_volume(const GridSpec& spec, const HyperRect& rect) {
    return static_cast<double>(rect.cell_count()) * cell_volume(spec);
}

HyperRect cell_rect(const Coords& coords) { return HyperRect{coords, coords}; }

}  // namespace qais
