#include "qais/tiling.hpp"

#include <algorithm>
#include <ostream>

#include "qais/common.hpp"
#include "qais/keyval.hpp"

namespace qais {

MeasuredSet MeasuredSet::from_pairs(std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs) {
    if (pairs.empty()) fail_invalid("MeasuredSet: need at least one measured state");
    std::sort(pairs.begin(), pairs.end());
    MeasuredSet out;
    out.states.reserve(pairs.size());
    for (const auto& [idx, count] : pairs) {
        if (count < 1) fail_invalid("MeasuredSet: zero count for state " + std::to_string(idx));
        if (!out.states.empty() && out.states.back().first == idx)
            out.states.back().second += count;
        else
            out.states.emplace_back(idx, count);
        out.total += count;
    }
    return out;
}

MeasuredSet MeasuredSet::from_shots(ShotCounts shots) {
    MeasuredSet out;
    out.states = std::move(shots.counts);
    out.total = shots.total;
    if (out.states.empty()) fail_invalid("MeasuredSet: empty shot record");
    return out;
}

std::uint64_t TileCoverage::total_cells() const {
    std::uint64_t cells = 0;
    for (const TileGroup& g : groups) cells += g.cells;
    return cells;
}

std::pair<Coords, std::uint64_t> greedy_expand(const GridSpec& spec, const Coords& start,
                                               std::uint64_t delta) {
    const int d = spec.dims();
    if (start.size() != static_cast<std::size_t>(d)) fail_invalid("greedy_expand: coordinate dimension mismatch");
    for (int i = 0; i < d; ++i)
        if (start[static_cast<std::size_t>(i)] >= spec.axis_cells(i))
            fail_invalid("greedy_expand: start coordinate out of range");
    if (delta < 1) fail_invalid("greedy_expand: delta must be positive");

    Coords shape(static_cast<std::size_t>(d), 1);
    shape[0] = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(delta, spec.axis_cells(0) - start[0]));
    for (int axis = 1; axis < d; ++axis) {
        const std::size_t a = static_cast<std::size_t>(axis);
        const bool lower_full = start[a - 1] == 0 && shape[a - 1] == spec.axis_cells(axis - 1);
        if (!lower_full) {
            shape[a] = 1;
            continue;
        }
        std::uint64_t comb_vol = 1;
        for (int j = 0; j < axis; ++j) comb_vol *= spec.axis_cells(j);
        const std::uint64_t extend = delta / comb_vol;
        shape[a] = extend > 0
                       ? static_cast<std::uint32_t>(
                             std::min<std::uint64_t>(spec.axis_cells(axis) - start[a], extend))
                       : 1;
    }

    std::uint64_t filled = 1;
    for (int i = 0; i < d; ++i) filled *= shape[static_cast<std::size_t>(i)];
    return {shape, filled};
}

std::vector<HyperRect> gap_tiles(const GridSpec& spec, std::uint64_t from, std::uint64_t delta) {
    std::vector<HyperRect> tiles;
    std::uint64_t current = from;
    std::uint64_t remaining = delta;
    if (remaining > 0 && from + delta > spec.cell_count())
        fail_invalid("gap_tiles: gap extends past the grid");
    while (remaining > 0) {
        const Coords lo = linear_to_coords(spec, current);
        const auto [shape, filled] = greedy_expand(spec, lo, remaining);
        Coords hi = lo;
        for (std::size_t i = 0; i < hi.size(); ++i) hi[i] += shape[i] - 1;
        tiles.push_back(HyperRect{lo, hi});
        remaining -= filled;
        current += filled;
    }
    return tiles;
}

TileCoverage full_coverage(const GridSpec& spec, const MeasuredSet& measured) {
    if (measured.states.empty()) fail_invalid("full_coverage: empty measured set");
    const std::uint64_t total = spec.cell_count();
    TileCoverage coverage;
    coverage.groups.reserve(measured.states.size());
    const double unit = cell_volume(spec);

    std::uint64_t previous_end = 0;  // first linear index not yet covered
    for (const auto& [idx, count] : measured.states) {
        if (idx >= total) fail_invalid("full_coverage: measured state out of range");
        TileGroup group;
        group.anchor = idx;
        group.count = count;
        group.rects.push_back(cell_rect(linear_to_coords(spec, idx)));
        // Gap between the previous measured state and this one attaches here.
        for (HyperRect& rect : gap_tiles(spec, previous_end, idx - previous_end))
            group.rects.push_back(std::move(rect));
        previous_end = idx + 1;
        coverage.groups.push_back(std::move(group));
    }
    // Trailing gap, up to the all-ones state, joins the last group.
    for (HyperRect& rect : gap_tiles(spec, previous_end, total - previous_end))
        coverage.groups.back().rects.push_back(std::move(rect));

    for (TileGroup& group : coverage.groups) {
        group.cells = 0;
        for (const HyperRect& rect : group.rects) group.cells += rect.cell_count();
        group.volume = static_cast<double>(group.cells) * unit;
    }
    return coverage;
}

void write_coverage_csv(std::ostream& out, const GridSpec& spec, const TileCoverage& coverage) {
    out << "group,anchor";
    for (int axis = 0; axis < spec.dims(); ++axis)
        out << ",lo" << axis + 1 << ",hi" << axis + 1;
    out << ",cells,volume\n";
    for (std::size_t g = 0; g < coverage.groups.size(); ++g) {
        const TileGroup& group = coverage.groups[g];
        for (const HyperRect& rect : group.rects) {
            out << g << ',' << group.anchor;
            for (int axis = 0; axis < spec.dims(); ++axis) {
                const std::size_t a = static_cast<std::size_t>(axis);
                out << ',' << rect.lo[a] << ',' << rect.hi[a];
            }
            out << ',' << rect.cell_count() << ','
                << format_full(rect_volume(spec, rect)) << "\n";
        }
    }
}

std::vector<RegionLabel> classify_regions(const GridSpec& spec, const MeasuredSet& measured,
                                          double kappa) {
    const auto& states = measured.states;
    if (states.empty()) fail_invalid("classify_regions: empty measured set");
    const double mean_count =
        kappa * static_cast<double>(measured.total) / static_cast<double>(states.size());

    const auto is_measured = [&states](std::uint64_t idx) {
        const auto it = std::lower_bound(states.begin(), states.end(), idx,
                                         [](const auto& e, std::uint64_t v) { return e.first < v; });
        return it != states.end() && it->first == idx;
    };

    std::vector<RegionLabel> labels(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        const Coords coords = linear_to_coords(spec, states[k].first);
        bool has_neighbor = false;
        for (int axis = 0; axis < spec.dims() && !has_neighbor; ++axis) {
            const std::size_t a = static_cast<std::size_t>(axis);
            Coords probe = coords;
            if (coords[a] > 0) {
                probe[a] = coords[a] - 1;
                has_neighbor = is_measured(coords_to_linear(spec, probe));
            }
            if (!has_neighbor && coords[a] + 1 < spec.axis_cells(axis)) {
                probe[a] = coords[a] + 1;
                has_neighbor = is_measured(coords_to_linear(spec, probe));
            }
        }
        if (!has_neighbor)
            labels[k] = RegionLabel::Noise;
        else if (static_cast<double>(states[k].second) >= mean_count)
            labels[k] = RegionLabel::Important;
        else
            labels[k] = RegionLabel::Boundary;
    }
    return labels;
}

}  // namespace qais
