#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <random>
#include <thread>

#include "doctest.h"
#include "quad_oracle.hpp"
#include "qais/common.hpp"
#include "qais/target.hpp"

using namespace qais;

namespace {

/// Wraps an integrand with a call counter for cache tests.
Integrand counted(const Integrand& f, std::shared_ptr<long> counter) {
    Integrand out = f;
    const auto inner = f.eval;
    out.eval = [inner, counter](std::span<const double> x) {
        ++*counter;
        return inner(x);
    };
    return out;
}

}  // namespace

TEST_CASE("gauss2 normalization and peak values") {
    const Integrand f = gauss2_integrand();
    // Independent route: fine tensor Simpson of the unnormalized sum.
    const double unnorm_integral = oracle::simpson2d(
        [](double x, double y) {
            const double d0 = (x - 0.23) * (x - 0.23) + (y - 0.23) * (y - 0.23);
            const double d1 = (x - 0.74) * (x - 0.74) + (y - 0.74) * (y - 0.74);
            return std::exp(-200.0 * d0) + std::exp(-200.0 * d1);
        },
        1000);
    const double scale = 1.0 / unnorm_integral;

    const double at_peak = f(std::vector<double>{0.23, 0.23});
    CHECK(at_peak == doctest::Approx(scale * (1.0 + std::exp(-200.0 * 2.0 * 0.51 * 0.51))).epsilon(1e-9));

    const double normalized_integral =
        oracle::simpson2d([&f](double x, double y) { return f(std::vector<double>{x, y}); }, 1000);
    CHECK(normalized_integral == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ring values") {
    const Integrand f = ring_integrand();
    CHECK(f(std::vector<double>{0.85, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f(std::vector<double>{0.5, 0.15}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f(std::vector<double>{0.5, 0.5}) == doctest::Approx(std::exp(-24.5)).epsilon(1e-9));
    CHECK(f(std::vector<double>{0.5, 0.5}) == doctest::Approx(2.2758e-11).epsilon(1e-3));
}

TEST_CASE("multipeak values and dimension guard") {
    const Integrand f2 = multipeak_integrand(2);
    const double at_r0 = f2(std::vector<double>{0.23, 0.23});
    const double expected = 1.0 + std::exp(-50.0 * 0.16 * std::sqrt(2.0)) +
                            std::exp(-50.0 * 0.51 * std::sqrt(2.0));
    CHECK(at_r0 == doctest::Approx(expected).epsilon(1e-12));
    CHECK(at_r0 == doctest::Approx(1.0 + 1.2e-5).epsilon(2e-6));

    CHECK_THROWS(multipeak_integrand(1));
    CHECK_THROWS(multipeak_integrand(7));
    CHECK(multipeak_integrand(6).dims() == 6);
}

TEST_CASE("integrands are finite and deterministic over a million points") {
    std::mt19937_64 rng(13);
    const Integrand integrands[] = {gauss2_integrand(), ring_integrand(), multipeak_integrand(3),
                                    pentagon_ltd_integrand(PentagonKinematics::p11())};
    for (const Integrand& f : integrands) {
        bool all_finite = true;
        bool all_repeatable = true;
        std::vector<double> x(static_cast<std::size_t>(f.dims()));
        for (int trial = 0; trial < 250000; ++trial) {
            for (double& xi : x) xi = u64_to_unit_double(rng());
            const double a = f(x);
            all_finite = all_finite && std::isfinite(a);
            if (trial % 64 == 0) all_repeatable = all_repeatable && f(x) == a;
        }
        CHECK(all_finite);
        CHECK(all_repeatable);
    }
}

TEST_CASE("pentagon zero-momentum case matches the closed form") {
    const Integrand f = pentagon_ltd_integrand(PentagonKinematics::zero_momentum(1.0));
    std::mt19937_64 rng(101);
    PairwiseSum sum, sq;
    const std::uint64_t shots = 1000000;
    for (std::uint64_t i = 0; i < shots; ++i) {
        std::vector<double> x{u64_to_unit_double(rng()), u64_to_unit_double(rng()),
                              u64_to_unit_double(rng())};
        const double v = f(x);
        sum.add(v);
        sq.add(v * v);
    }
    const double mean = sum.total() / static_cast<double>(shots);
    const double second = sq.total() / static_cast<double>(shots);
    const double std_err = std::sqrt((second - mean * mean) / (static_cast<double>(shots) - 1.0));
    const double reference = -1.0 / (192.0 * M_PI * M_PI);
    CHECK(std::abs(mean - reference) < 3.0 * std_err);
}

TEST_CASE("pentagon residue sum is real and stable at P11") {
    const PentagonKinematics kin = PentagonKinematics::p11();
    const detail::PentagonCore<double> core(kin);
    const detail::PentagonCore<long double> precise(kin);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const double z = 0.02 + 0.96 * u64_to_unit_double(rng());
        const double u = -0.98 + 1.96 * u64_to_unit_double(rng());
        const double phi = 2.0 * M_PI * u64_to_unit_double(rng());
        const std::complex<double> value = core.unit_cube_value(z, u, phi);
        REQUIRE(std::isfinite(value.real()));
        CHECK(std::abs(value.imag()) <= 1e-8 * std::abs(value.real()));

        const std::complex<long double> exact = precise.unit_cube_value(
            static_cast<long double>(z), static_cast<long double>(u), static_cast<long double>(phi));
        CHECK(std::abs(value.real() - static_cast<double>(exact.real())) <=
              1e-6 * std::abs(static_cast<double>(exact.real())));
    }
}

TEST_CASE("pentagon kinematics file round trip") {
    const char* path = "p11_roundtrip.cfg";
    {
        std::ofstream out(path);
        out.precision(17);
        const PentagonKinematics kin = PentagonKinematics::p11();
        for (int i = 0; i < 4; ++i) {
            out << "p" << i + 1 << " =";
            for (double c : kin.p[static_cast<std::size_t>(i)]) out << ' ' << c;
            out << '\n';
        }
        for (int i = 0; i < 5; ++i) out << "m" << i + 1 << " = " << kin.m[static_cast<std::size_t>(i)] << '\n';
    }
    const PentagonKinematics loaded = PentagonKinematics::load(path);
    const PentagonKinematics expected = PentagonKinematics::p11();
    for (int i = 0; i < 4; ++i)
        for (int c = 0; c < 4; ++c)
            CHECK(loaded.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] ==
                  doctest::Approx(expected.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]).epsilon(1e-12));
    for (int i = 0; i < 5; ++i) CHECK(loaded.m[static_cast<std::size_t>(i)] == doctest::Approx(5.01213));
    std::remove(path);
    CHECK_THROWS(PentagonKinematics::load("does_not_exist.cfg"));
}

TEST_CASE("target PMF construction") {
    SUBCASE("constant integrand gives the uniform PMF") {
        Integrand c;
        c.label = "const";
        c.domain = {{0.0, 1.0}, {0.0, 2.0}};
        c.eval = [](std::span<const double>) { return 3.7; };
        const GridSpec spec({2, 3}, c.domain);
        const TargetPMF pmf = build_target_pmf(spec, c, 4, 9);
        REQUIRE(pmf.probabilities.size() == spec.cell_count());
        for (const auto& [cell, p] : pmf.probabilities)
            CHECK(p == doctest::Approx(1.0 / static_cast<double>(spec.cell_count())).epsilon(1e-12));
    }
    SUBCASE("probabilities sum to one") {
        const GridSpec spec({4, 4}, {{0.0, 1.0}, {0.0, 1.0}});
        const TargetPMF pmf = build_target_pmf(spec, gauss2_integrand(), 3, 5);
        double total = 0.0;
        for (const auto& [cell, p] : pmf.probabilities) total += p;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("argmax cell contains a peak center") {
        const GridSpec spec({5, 5}, {{0.0, 1.0}, {0.0, 1.0}});
        const TargetPMF pmf = build_target_pmf(spec, gauss2_integrand(), 4, 17);
        std::uint64_t best_cell = 0;
        double best = -1.0;
        for (const auto& [cell, p] : pmf.probabilities) {
            if (p > best) {
                best = p;
                best_cell = cell;
            }
        }
        const auto box = cell_bounds(spec, linear_to_coords(spec, best_cell));
        const bool has_r0 = box[0].first <= 0.23 && 0.23 <= box[0].second && box[1].first <= 0.23 &&
                            0.23 <= box[1].second;
        const bool has_r1 = box[0].first <= 0.74 && 0.74 <= box[0].second && box[1].first <= 0.74 &&
                            0.74 <= box[1].second;
        CHECK((has_r0 || has_r1));
    }
    SUBCASE("single-sample builds evaluate cell centers") {
        const GridSpec spec({6, 6}, {{0.0, 1.0}, {0.0, 1.0}});
        const Integrand f = gauss2_integrand();
        const TargetPMF pmf = build_target_pmf(spec, f, 1, 23);
        // Direct-evaluation oracle over all cells.
        std::vector<double> centers(spec.cell_count());
        double z = 0.0;
        for (std::uint64_t cell = 0; cell < spec.cell_count(); ++cell) {
            const auto box = cell_bounds(spec, linear_to_coords(spec, cell));
            centers[cell] = f(std::vector<double>{0.5 * (box[0].first + box[0].second),
                                                  0.5 * (box[1].first + box[1].second)});
            z += centers[cell];
        }
        for (const auto& [cell, p] : pmf.probabilities)
            CHECK(p == doctest::Approx(centers[cell] / z).epsilon(1e-10));
    }
    SUBCASE("cache makes repeated builds free") {
        const GridSpec spec({3, 3}, {{0.0, 1.0}, {0.0, 1.0}});
        auto counter = std::make_shared<long>(0);
        const Integrand f = counted(gauss2_integrand(), counter);
        CellAverageCache cache;
        const TargetPMF first = build_target_pmf(spec, f, 5, 3, &cache);
        const long calls_first = *counter;
        CHECK(calls_first == static_cast<long>(spec.cell_count()) * 5);
        const TargetPMF second = build_target_pmf(spec, f, 5, 3, &cache);
        CHECK(*counter == calls_first);  // zero new integrand calls
        REQUIRE(first.probabilities.size() == second.probabilities.size());
        for (std::size_t k = 0; k < first.probabilities.size(); ++k)
            CHECK(first.probabilities[k].second == second.probabilities[k].second);
    }
    SUBCASE("negative averages are reported") {
        Integrand signed_f;
        signed_f.label = "signed";
        signed_f.domain = {{0.0, 1.0}};
        signed_f.eval = [](std::span<const double> x) { return x[0] - 0.5; };
        const GridSpec spec({3}, signed_f.domain);
        CHECK_THROWS(build_target_pmf(spec, signed_f, 2, 1));
        CHECK_NOTHROW(build_target_pmf(spec, abs_integrand(signed_f), 2, 1));
    }
}

TEST_CASE("multipeak references from the radial-angular oracle") {
    // The oracle subtracts the out-of-box tails from the closed-form
    // full-space mass; sanity-check it against plain Simpson in 2D.
    const double ref2 = oracle::multipeak_reference(2);
    const Integrand f2 = multipeak_integrand(2);
    const double simpson =
        oracle::simpson2d([&f2](double x, double y) { return f2(std::vector<double>{x, y}); }, 2000);
    CHECK(ref2 == doctest::Approx(simpson).epsilon(2e-5));

    const double ref3 = oracle::multipeak_reference(3);
    CHECK(ref3 > 0.0);
    CHECK(ref3 < 3.0 * 8.0 * M_PI / 125000.0);
}

TEST_CASE("evaluation cache tolerates concurrent insert-or-read") {
    CellAverageCache cache;
    std::vector<std::thread> workers;
    std::atomic<int> mismatches{0};
    for (int t = 0; t < 4; ++t) {
        workers.emplace_back([&cache, &mismatches]() {
            for (int round = 0; round < 20000; ++round) {
                const std::uint64_t cell = static_cast<std::uint64_t>(round % 64);
                const double value = static_cast<double>(cell) * 1.5;  // identical by purity
                if (const auto hit = cache.lookup(cell)) {
                    if (*hit != value) ++mismatches;
                } else {
                    cache.store(cell, value);
                }
            }
        });
    }
    for (std::thread& w : workers) w.join();
    CHECK(mismatches == 0);
    CHECK(cache.size() == 64);
}
