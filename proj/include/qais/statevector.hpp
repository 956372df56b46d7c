#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qais {

using Amplitude = std::complex<double>;

/// Dense n-qubit state; qubit l maps to bit l of the array index.
struct StateVector {
    int n = 0;
    std::vector<Amplitude> amplitudes;

    std::uint64_t size() const { return std::uint64_t{1} << n; }
    double norm_squared() const;
};

enum class PauliAxis { X, Y, Z };

/// One circuit layer: either all-pair two-qubit rotations on a fixed Pauli
/// axis, or a per-qubit three-angle rotation.
struct LayerSpec {
    enum class Kind { Entangler, Rotation };
    Kind kind;
    PauliAxis axis = PauliAxis::Z;  // meaningful for Entangler layers only

    static LayerSpec entangler(PauliAxis a) { return {Kind::Entangler, a}; }
    static LayerSpec rotation() { return {Kind::Rotation, PauliAxis::Z}; }
};

/**
 * Layered circuit description. An entangler layer contributes n(n-1)/2
 * parameters (pairs (i,j), i<j, lexicographic); a rotation layer contributes
 * 3n parameters in qubit order with per-qubit angle order (gamma, alpha,
 * beta), gamma applied first.
 */
struct AnsatzSpec {
    std::vector<LayerSpec> layers;

    std::size_t param_count(int n) const;
};

struct ShotCounts {
    /// (basis state, occurrences), ascending by state; every count >= 1.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;
    std::uint64_t total = 0;

    std::size_t distinct() const { return counts.size(); }
};

/// Uniform superposition over all 2^n basis states.
StateVector init_uniform(int n, int max_qubits = 26);

/// In-place exp(-i theta sigma_i^axis sigma_j^axis).
void apply_two_qubit_rotation(StateVector& state, PauliAxis axis, int i, int j, double theta);

/// In-place exp(-i beta Z) exp(-i alpha Y) exp(-i gamma Z) on qubit l, gamma first.
void apply_u3(StateVector& state, int l, double alpha, double beta, double gamma);

/// Uniform start state with all layers applied in order.
StateVector run_ansatz(const AnsatzSpec& spec, int n, std::span<const double> params);

/// Born probabilities |c_k|^2.
std::vector<double> probabilities(const StateVector& state);

/// N multinomial draws from the PMF via inverse-CDF; deterministic in seed.
ShotCounts sample(std::span<const double> pmf, std::uint64_t shots, std::uint64_t seed);

}  // namespace qais
