#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qais/statevector.hpp"
#include "qais/target.hpp"

namespace qais {

struct TrainConfig {
    enum class Optimizer { Cobyla, NelderMead };

    Optimizer optimizer = Optimizer::Cobyla;
    int max_iterations = 20000;  // budget in cost evaluations
    double initial_step = 0.1;
    double tolerance = 1e-8;     // convergence tolerance on the cost
    std::uint64_t seed = 0;      // parameter initialization seed
};

struct TrainReport {
    std::vector<double> best_params;
    std::vector<std::pair<int, double>> cost_history;  // (evaluation index, cost)
    double final_kl = 0.0;                             // min over the history
    double wall_seconds = 0.0;
};

/**
 * Discretized KL divergence sum_i P_i ln(P_i / Q_i) over the cells with
 * P_i > 0 (natural log). Returns +inf when some supported cell has Q below
 * the 1e-300 floor. Both inputs must be normalized.
 */
double kl_divergence(const TargetPMF& target, std::span<const double> proposal);

/**
 * Derivative-free minimization of the KL divergence between the target and
 * the ansatz Born probabilities, from exact statevector probabilities.
 * The zero-parameter point (uniform superposition) is always evaluated
 * first; optimization starts from small random angles in [-0.1, 0.1].
 * Deterministic given the config seed; returns best-so-far parameters even
 * on budget exhaustion.
 */
TrainReport train_qcbm(const AnsatzSpec& ansatz, int n, const TargetPMF& target,
                       const TrainConfig& cfg);

/// State with amplitudes sqrt(P_k): reproduces the target exactly,
/// bypassing training for estimator studies.
StateVector oracle_proposal(const TargetPMF& target, int n);

}  // namespace qais
