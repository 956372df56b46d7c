#include <cmath>
#include <random>

#include "doctest.h"
#include "qais/common.hpp"
#include "qais/grid.hpp"

using namespace qais;

TEST_CASE("grid spec validation") {
    CHECK_THROWS(GridSpec({}, {}));
    CHECK_THROWS(GridSpec({0}, {{0.0, 1.0}}));
    CHECK_THROWS(GridSpec({2}, {{1.0, 1.0}}));
    CHECK_THROWS(GridSpec({2, 2}, {{0.0, 1.0}}));
    CHECK_THROWS(GridSpec({20, 20}, {{0.0, 1.0}, {0.0, 1.0}}));  // 40 > default max
    const GridSpec fine({13, 13}, {{0.0, 1.0}, {0.0, 1.0}});
    CHECK(fine.total_qubits() == 26);
    CHECK(fine.cell_count() == (std::uint64_t{1} << 26));
}

TEST_CASE("cell widths") {
    const GridSpec one({5}, {{0.0, 1.0}});
    CHECK(cell_widths(one)[0] == 0.03125);

    const GridSpec square({2, 2}, {{0.0, 1.0}, {0.0, 1.0}});
    const auto w = cell_widths(square);
    CHECK(w[0] == 0.25);
    CHECK(w[1] == 0.25);

    const GridSpec pentagon_grid({8, 4, 4}, {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}});
    CHECK(cell_widths(pentagon_grid)[0] == (1.0 / 256));
}

TEST_CASE("linear to coords and back") {
    const GridSpec spec({2, 2}, {{0.0, 1.0}, {0.0, 1.0}});
    CHECK(linear_to_coords(spec, 0) == Coords{0, 0});
    // 6 = 1 * 4 + 2: axis-0 digit 2, axis-1 digit 1.
    CHECK(linear_to_coords(spec, 6) == Coords{2, 1});
    CHECK(linear_to_coords(spec, 15) == Coords{3, 3});
    CHECK_THROWS(linear_to_coords(spec, 16));

    CHECK(coords_to_linear(spec, {0, 0}) == 0);
    CHECK(coords_to_linear(spec, {2, 1}) == 6);
    CHECK_THROWS(coords_to_linear(spec, {4, 0}));
}

TEST_CASE("round trip is the identity over the full grid") {
    const GridSpec spec({3, 4, 5}, {{0.0, 1.0}, {-2.0, 3.0}, {0.5, 0.75}});
    for (std::uint64_t linear = 0; linear < spec.cell_count(); ++linear)
        CHECK(coords_to_linear(spec, linear_to_coords(spec, linear)) == linear);
}

TEST_CASE("round trip at the maximum qubit budget") {
    const GridSpec spec({13, 13}, {{0.0, 1.0}, {0.0, 1.0}});
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t linear = rng() % spec.cell_count();
        CHECK(coords_to_linear(spec, linear_to_coords(spec, linear)) == linear);
    }
}

TEST_CASE("cell bounds") {
    const GridSpec spec({2, 2}, {{0.0, 1.0}, {0.0, 1.0}});
    // Axis-0 coordinate 2, axis-1 coordinate 1.
    const auto box = cell_bounds(spec, {2, 1});
    CHECK(box[0].first == 0.5);
    CHECK(box[0].second == 0.75);
    CHECK(box[1].first == 0.25);
    CHECK(box[1].second == 0.5);

    const GridSpec shifted({3, 2}, {{-1.0, 1.0}, {2.0, 6.0}});
    const auto corner = cell_bounds(shifted, {0, 0});
    CHECK(corner[0].first == -1.0);
    CHECK(corner[0].second == doctest::Approx(-0.75));
    CHECK(corner[1].first == 2.0);
    CHECK(corner[1].second == doctest::Approx(3.0));
}

TEST_CASE("cells tile the domain") {
    const GridSpec spec({3, 4}, {{-1.0, 2.0}, {0.0, 0.5}});
    std::mt19937_64 rng(21);
    const auto w = cell_widths(spec);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> x(2);
        Coords expected(2);
        for (int axis = 0; axis < 2; ++axis) {
            const auto& [a, b] = spec.bounds[static_cast<std::size_t>(axis)];
            x[static_cast<std::size_t>(axis)] = a + (b - a) * u64_to_unit_double(rng());
            expected[static_cast<std::size_t>(axis)] = static_cast<std::uint32_t>(
                std::min<std::uint64_t>(static_cast<std::uint64_t>((x[static_cast<std::size_t>(axis)] - a) / w[static_cast<std::size_t>(axis)]),
                                        spec.axis_cells(axis) - 1));
        }
        const auto box = cell_bounds(spec, expected);
        for (int axis = 0; axis < 2; ++axis) {
            CHECK(x[static_cast<std::size_t>(axis)] >= box[static_cast<std::size_t>(axis)].first);
            CHECK(x[static_cast<std::size_t>(axis)] <= box[static_cast<std::size_t>(axis)].second);
        }
    }
}

TEST_CASE("consecutive linear indices are adjacent on axis 0") {
    const GridSpec spec({3, 3}, {{0.0, 1.0}, {0.0, 1.0}});
    for (std::uint64_t linear = 0; linear + 1 < spec.cell_count(); ++linear) {
        const Coords a = linear_to_coords(spec, linear);
        const Coords b = linear_to_coords(spec, linear + 1);
        if (a[0] + 1 < spec.axis_cells(0)) {
            const auto ba = cell_bounds(spec, a);
            const auto bb = cell_bounds(spec, b);
            CHECK(b[0] == a[0] + 1);
            CHECK(ba[0].second == doctest::Approx(bb[0].first).epsilon(1e-15));
        }
    }
}

TEST_CASE("rect volume") {
    const GridSpec spec({5, 5}, {{0.0, 1.0}, {0.0, 1.0}});
    CHECK(rect_volume(spec, cell_rect({0, 0})) == doctest::Approx(1.0 / 1024).epsilon(1e-14));

    const GridSpec small({2, 2}, {{0.0, 1.0}, {0.0, 1.0}});
    CHECK(rect_volume(small, HyperRect{{0, 0}, {3, 3}}) == doctest::Approx(1.0).epsilon(1e-14));
    // Rows 1..2 across the full axis 0: 8 cells of 1/16 each.
    CHECK(rect_volume(small, HyperRect{{0, 1}, {3, 2}}) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("cell volumes sum to the domain volume") {
    const GridSpec spec({8, 8}, {{-1.0, 2.0}, {0.0, 0.5}});
    PairwiseSum sum;
    const double unit = rect_volume(spec, cell_rect(linear_to_coords(spec, 0)));
    for (std::uint64_t cell = 0; cell < spec.cell_count(); ++cell) sum.add(unit);
    CHECK(sum.total() == doctest::Approx(spec.domain_volume()).epsilon(1e-12));
}
