#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "qais/grid.hpp"
#include "qais/statevector.hpp"
#include "qais/target.hpp"
#include "qais/tiling.hpp"

namespace qais {

/// Defensive mixture: fraction beta of shots follows the uniform PMF.
struct MixtureConfig {
    double beta = 0.0;
};

/// Weighted points produced for one tile group; weights are positive and
/// equal group volume * N / N_k.
struct SampleBatch {
    int dim = 0;
    std::vector<double> points;  // count * dim, point-major
    double weight = 0.0;
    std::uint64_t count() const { return dim ? points.size() / static_cast<std::size_t>(dim) : 0; }
};

struct EstimateResult {
    double estimate = 0.0;
    double std_err = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t states_observed = 0;
    double hilbert_fraction = 0.0;
    // Measured-cell counts per diagnostic label: Important, Boundary, Noise.
    std::array<std::uint64_t, 3> region_counts{};
    std::uint64_t seed = 0;
    double beta = 0.0;
    /// Set when a single sample carries more than 5% of the domain volume.
    bool heavy_weight = false;
};

struct EstimateHooks {
    int threads = 1;
    /// When set, receives every evaluated point (flattened, group order).
    std::vector<double>* capture_points = nullptr;
};

/**
 * Split each group's N_k samples across its rects proportionally to rect
 * volume: largest-remainder rounding with ties to the lower linear corner,
 * or, when the group has fewer samples than rects, one volume-weighted
 * random rect choice per sample.
 */
std::vector<std::vector<std::uint64_t>> allocate_samples(const TileCoverage& coverage,
                                                         std::mt19937_64& rng);

/**
 * Debiased importance-sampling estimate: sample shot counts from the
 * (optionally defensive) proposal PMF, complete the measured set to a
 * partition with gap tiles, place per-group Sobol samples, and weight each
 * sample by group volume * N / N_k. Deterministic given the seed.
 */
EstimateResult qais_estimate(const GridSpec& spec, const Integrand& f, const StateVector& proposal,
                             std::uint64_t shots, const MixtureConfig& mix, std::uint64_t seed,
                             const EstimateHooks& hooks = {});

struct RepeatSummary {
    double mean_estimate = 0.0;
    double spread = 0.0;    // sample standard deviation of the estimates
    double mean_std = 0.0;  // mean reported standard deviation
};

/// R independent replicate estimates with deterministically derived seeds.
std::pair<std::vector<EstimateResult>, RepeatSummary> repeat_runs(
    const GridSpec& spec, const Integrand& f, const StateVector& proposal, std::uint64_t shots,
    const MixtureConfig& mix, int replicates, std::uint64_t seed, const EstimateHooks& hooks = {});

}  // namespace qais
