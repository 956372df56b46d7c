#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "doctest.h"
#include "qais/common.hpp"
#include "qais/statevector.hpp"

using namespace qais;

namespace {

StateVector basis_state(int n, std::uint64_t k) {
    StateVector s;
    s.n = n;
    s.amplitudes.assign(std::uint64_t{1} << n, Amplitude{});
    s.amplitudes[k] = Amplitude{1.0, 0.0};
    return s;
}

AnsatzSpec random_ansatz(std::mt19937_64& rng, int max_layers) {
    AnsatzSpec spec;
    const int layers = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_layers));
    for (int l = 0; l < layers; ++l) {
        if (rng() % 2 == 0) {
            const PauliAxis axis = static_cast<PauliAxis>(rng() % 3);
            spec.layers.push_back(LayerSpec::entangler(axis));
        } else {
            spec.layers.push_back(LayerSpec::rotation());
        }
    }
    return spec;
}

std::vector<double> random_params(std::mt19937_64& rng, std::size_t count) {
    std::vector<double> params(count);
    for (double& p : params) p = -M_PI + 2.0 * M_PI * u64_to_unit_double(rng());
    return params;
}

}  // namespace

TEST_CASE("uniform initialization") {
    const StateVector one = init_uniform(1);
    CHECK(one.amplitudes[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(one.amplitudes[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));

    const StateVector three = init_uniform(3);
    CHECK(three.amplitudes.size() == 8);
    for (const Amplitude& a : three.amplitudes) CHECK(a.real() == doctest::Approx(1.0 / std::sqrt(8.0)));
    CHECK(three.norm_squared() == doctest::Approx(1.0).epsilon(1e-13));

    for (double p : probabilities(three)) CHECK(p == doctest::Approx(0.125).epsilon(1e-13));
    CHECK_THROWS(init_uniform(0));
    CHECK_THROWS(init_uniform(27));
}

TEST_CASE("ZZ rotations leave probabilities unchanged") {
    std::mt19937_64 rng(3);
    StateVector state = init_uniform(4);
    apply_u3(state, 0, 0.3, 0.1, 0.8);
    apply_u3(state, 2, 1.1, -0.4, 0.2);
    const std::vector<double> before = probabilities(state);
    for (int trial = 0; trial < 10; ++trial) {
        const int i = static_cast<int>(rng() % 4);
        int j = static_cast<int>(rng() % 4);
        if (j == i) j = (j + 1) % 4;
        apply_two_qubit_rotation(state, PauliAxis::Z, i, j, u64_to_unit_double(rng()) * 6.0);
    }
    const std::vector<double> after = probabilities(state);
    for (std::size_t k = 0; k < before.size(); ++k)
        CHECK(after[k] == doctest::Approx(before[k]).epsilon(1e-12));
}

TEST_CASE("XX rotation pivots |00> to |11>") {
    StateVector state = basis_state(2, 0);
    apply_two_qubit_rotation(state, PauliAxis::X, 0, 1, M_PI / 2);
    const auto pmf = probabilities(state);
    CHECK(pmf[3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(state.amplitudes[3].imag() == doctest::Approx(-1.0).epsilon(1e-12));

    StateVector half = basis_state(2, 0);
    apply_two_qubit_rotation(half, PauliAxis::X, 0, 1, M_PI / 4);
    const auto pmf_half = probabilities(half);
    CHECK(pmf_half[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pmf_half[3] == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS(apply_two_qubit_rotation(state, PauliAxis::X, 0, 0, 0.1));
    CHECK_THROWS(apply_two_qubit_rotation(state, PauliAxis::X, 0, 2, 0.1));
}

TEST_CASE("single-qubit rotation examples") {
    StateVector state = basis_state(1, 0);
    apply_u3(state, 0, 0.0, 0.0, 0.0);
    CHECK(probabilities(state)[0] == doctest::Approx(1.0));

    apply_u3(state, 0, M_PI / 2, 0.0, 0.0);
    CHECK(probabilities(state)[1] == doctest::Approx(1.0).epsilon(1e-12));

    StateVector diag = init_uniform(2);
    apply_u3(diag, 1, 0.7, 0.0, 0.0);
    const auto before = probabilities(diag);
    apply_u3(diag, 1, 0.0, 0.9, -1.3);
    const auto after = probabilities(diag);
    for (std::size_t k = 0; k < before.size(); ++k)
        CHECK(after[k] == doctest::Approx(before[k]).epsilon(1e-12));
}

TEST_CASE("parameter counts") {
    AnsatzSpec single;
    single.layers = {LayerSpec::entangler(PauliAxis::Z), LayerSpec::rotation()};
    CHECK(single.param_count(5) == 25);

    AnsatzSpec doubled;
    doubled.layers = {LayerSpec::entangler(PauliAxis::Z), LayerSpec::rotation(),
                      LayerSpec::entangler(PauliAxis::X), LayerSpec::rotation()};
    CHECK(doubled.param_count(16) == 336);
    CHECK(doubled.param_count(19) == 456);
}

TEST_CASE("zero parameters give uniform probabilities") {
    AnsatzSpec spec;
    spec.layers = {LayerSpec::entangler(PauliAxis::Z), LayerSpec::rotation(),
                   LayerSpec::entangler(PauliAxis::X), LayerSpec::rotation()};
    const std::vector<double> zeros(spec.param_count(4), 0.0);
    const StateVector state = run_ansatz(spec, 4, zeros);
    for (double p : probabilities(state)) CHECK(p == doctest::Approx(1.0 / 16).epsilon(1e-12));

    CHECK_THROWS(run_ansatz(spec, 4, std::vector<double>(3, 0.0)));
}

TEST_CASE("strided kernels match the dense oracle") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);  // up to 6 qubits
        const AnsatzSpec spec = random_ansatz(rng, 4);
        const std::vector<double> params = random_params(rng, spec.param_count(n));
        const StateVector fast = run_ansatz(spec, n, params);
        const std::vector<oracle::C> slow = oracle::run_dense(spec, n, params);
        for (std::size_t k = 0; k < slow.size(); ++k)
            CHECK(std::abs(fast.amplitudes[k] - slow[k]) < 1e-10);
    }
}

TEST_CASE("norm is preserved over long random circuits") {
    std::mt19937_64 rng(29);
    StateVector state = init_uniform(8);
    for (int gate = 0; gate < 100; ++gate) {
        if (rng() % 2 == 0) {
            const int i = static_cast<int>(rng() % 8);
            int j = static_cast<int>(rng() % 8);
            if (j == i) j = (j + 1) % 8;
            apply_two_qubit_rotation(state, static_cast<PauliAxis>(rng() % 3), i, j,
                                     -3.0 + 6.0 * u64_to_unit_double(rng()));
        } else {
            apply_u3(state, static_cast<int>(rng() % 8), u64_to_unit_double(rng()),
                     u64_to_unit_double(rng()), u64_to_unit_double(rng()));
        }
    }
    CHECK(std::abs(state.norm_squared() - 1.0) < 1e-12);
}

TEST_CASE("multinomial sampling") {
    SUBCASE("indicator PMF puts every shot on one state") {
        std::vector<double> pmf(8, 0.0);
        pmf[5] = 1.0;
        const ShotCounts counts = sample(pmf, 1000, 11);
        REQUIRE(counts.counts.size() == 1);
        CHECK(counts.counts[0].first == 5);
        CHECK(counts.counts[0].second == 1000);
    }
    SUBCASE("fair coin stays within binomial bounds") {
        const std::vector<double> pmf{0.5, 0.5};
        const ShotCounts counts = sample(pmf, 1000000, 123);
        REQUIRE(counts.counts.size() == 2);
        const double sigma = std::sqrt(1e6 * 0.25);
        CHECK(std::abs(static_cast<double>(counts.counts[0].second) - 5e5) < 5.0 * sigma);
    }
    SUBCASE("same seed reproduces the record") {
        const std::vector<double> pmf{0.1, 0.2, 0.3, 0.4};
        const ShotCounts a = sample(pmf, 5000, 77);
        const ShotCounts b = sample(pmf, 5000, 77);
        CHECK(a.counts == b.counts);
    }
    SUBCASE("unnormalized PMF is rejected") {
        const std::vector<double> pmf{0.5, 0.4};
        CHECK_THROWS(sample(pmf, 10, 1));
    }
    SUBCASE("counts are sorted and sum to the shot total") {
        const std::vector<double> pmf{0.25, 0.25, 0.25, 0.25};
        const ShotCounts counts = sample(pmf, 10000, 5);
        std::uint64_t total = 0;
        for (std::size_t k = 0; k < counts.counts.size(); ++k) {
            total += counts.counts[k].second;
            if (k > 0) CHECK(counts.counts[k].first > counts.counts[k - 1].first);
        }
        CHECK(total == 10000);
    }
}

TEST_CASE("probability extraction rejects unnormalized states") {
    StateVector state;
    state.n = 2;
    state.amplitudes = {Amplitude{0.5, 0.0}, Amplitude{0.5, 0.0}, Amplitude{0.5, 0.0},
                        Amplitude{0.6, 0.0}};
    CHECK_THROWS(probabilities(state));
    const std::vector<double> pmf{0.5, 0.5};
    CHECK_THROWS(sample(pmf, 0, 1));
}
