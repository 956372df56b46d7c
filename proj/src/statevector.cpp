#include "qais/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "qais/common.hpp"

namespace qais {

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const Amplitude& a : amplitudes) s += std::norm(a);
    return s;
}

std::size_t AnsatzSpec::param_count(int n) const {
    std::size_t count = 0;
    for (const LayerSpec& layer : layers) {
        if (layer.kind == LayerSpec::Kind::Entangler)
            count += static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) - 1) / 2;
        else
            count += 3 * static_cast<std::size_t>(n);
    }
    return count;
}

StateVector init_uniform(int n, int max_qubits) {
    if (n < 1 || n > max_qubits)
        fail_invalid("init_uniform: qubit count " + std::to_string(n) + " outside [1, " +
                     std::to_string(max_qubits) + "]");
    StateVector state;
    state.n = n;
    const double amp = std::pow(2.0, -0.5 * n);
    state.amplitudes.assign(std::uint64_t{1} << n, Amplitude{amp, 0.0});
    return state;
}

void apply_two_qubit_rotation(StateVector& state, PauliAxis axis, int i, int j, double theta) {
    if (i == j || i < 0 || j < 0 || i >= state.n || j >= state.n)
        fail_invalid("apply_two_qubit_rotation: invalid qubit pair");
    const std::uint64_t size = state.size();
    const std::uint64_t bit_i = std::uint64_t{1} << i;
    const std::uint64_t bit_j = std::uint64_t{1} << j;
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    if (axis == PauliAxis::Z) {
        // Diagonal: phase exp(-i theta) on equal bits, exp(+i theta) otherwise.
        const Amplitude phase_eq{c, -s};
        const Amplitude phase_ne{c, s};
        for (std::uint64_t k = 0; k < size; ++k) {
            const bool equal_bits = ((k & bit_i) != 0) == ((k & bit_j) != 0);
            state.amplitudes[k] *= equal_bits ? phase_eq : phase_ne;
        }
        return;
    }

    // X/Y couple k with k ^ (bit_i | bit_j). The subspace operator is
    // s_pair * X with s_pair = +1 except for YY on equal bits where it is -1.
    const std::uint64_t mask = bit_i | bit_j;
    for (std::uint64_t k = 0; k < size; ++k) {
        if ((k & mask) != 0) continue;  // k has both bits clear
        const std::uint64_t k00 = k;
        const std::uint64_t k01 = k | bit_i;
        const std::uint64_t k10 = k | bit_j;
        const std::uint64_t k11 = k | mask;

        const double s_equal = (axis == PauliAxis::Y) ? -1.0 : 1.0;
        {
            const Amplitude a = state.amplitudes[k00];
            const Amplitude b = state.amplitudes[k11];
            state.amplitudes[k00] = c * a - Amplitude{0.0, s_equal * s} * b;
            state.amplitudes[k11] = c * b - Amplitude{0.0, s_equal * s} * a;
        }
        {
            const Amplitude a = state.amplitudes[k01];
            const Amplitude b = state.amplitudes[k10];
            state.amplitudes[k01] = c * a - Amplitude{0.0, s} * b;
            state.amplitudes[k10] = c * b - Amplitude{0.0, s} * a;
        }
    }
}

void apply_u3(StateVector& state, int l, double alpha, double beta, double gamma) {
    if (l < 0 || l >= state.n) fail_invalid("apply_u3: invalid qubit index");
    // Rz(beta) * Ry(alpha) * Rz(gamma) with Rz(x) = diag(e^{-ix}, e^{ix}),
    // Ry(a) = [[cos a, -sin a], [sin a, cos a]].
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    const Amplitude m00 = std::polar(ca, -(beta + gamma));
    const Amplitude m01 = -std::polar(sa, -(beta - gamma));
    const Amplitude m10 = std::polar(sa, beta - gamma);
    const Amplitude m11 = std::polar(ca, beta + gamma);

    const std::uint64_t size = state.size();
    const std::uint64_t bit = std::uint64_t{1} << l;
    for (std::uint64_t k = 0; k < size; ++k) {
        if (k & bit) continue;
        const Amplitude a0 = state.amplitudes[k];
        const Amplitude a1 = state.amplitudes[k | bit];
        state.amplitudes[k] = m00 * a0 + m01 * a1;
        state.amplitudes[k | bit] = m10 * a0 + m11 * a1;
    }
}

StateVector run_ansatz(const AnsatzSpec& spec, int n, std::span<const double> params) {
    if (params.size() != spec.param_count(n))
        fail_invalid("run_ansatz: expected " + std::to_string(spec.param_count(n)) +
                     " parameters, got " + std::to_string(params.size()));
    StateVector state = init_uniform(n);
    std::size_t p = 0;
    for (const LayerSpec& layer : spec.layers) {
        if (layer.kind == LayerSpec::Kind::Entangler) {
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) apply_two_qubit_rotation(state, layer.axis, i, j, params[p++]);
        } else {
            for (int l = 0; l < n; ++l) {
                const double gamma = params[p++];
                const double alpha = params[p++];
                const double beta = params[p++];
                apply_u3(state, l, alpha, beta, gamma);
            }
        }
    }
    return state;
}

std::vector<double> probabilities(const StateVector& state) {
    std::vector<double> pmf(state.amplitudes.size());
    double total = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        pmf[k] = std::norm(state.amplitudes[k]);
        total += pmf[k];
    }
    if (std::abs(total - 1.0) > 1e-9)
        fail_invalid("probabilities: state norm " + std::to_string(total) + " is not 1");
    return pmf;
}

ShotCounts sample(std::span<const double> pmf, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) fail_invalid("sample: need at least one shot");
    std::vector<double> cdf(pmf.size());
    double running = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (pmf[k] < 0.0) fail_invalid("sample: negative probability");
        running += pmf[k];
        cdf[k] = running;
    }
    if (std::abs(running - 1.0) > 1e-9)
        fail_invalid("sample: PMF sums to " + std::to_string(running) + ", not 1");

    std::mt19937_64 rng(seed);
    std::unordered_map<std::uint64_t, std::uint64_t> hits;
    hits.reserve(1024);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = u64_to_unit_double(rng()) * running;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::uint64_t idx = static_cast<std::uint64_t>(it - cdf.begin());
        if (idx >= cdf.size()) idx = cdf.size() - 1;
        ++hits[idx];
    }

    ShotCounts out;
    out.total = shots;
    out.counts.assign(hits.begin(), hits.end());
    std::sort(out.counts.begin(), out.counts.end());
    return out;
}

}  // namespace qais
