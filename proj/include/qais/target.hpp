#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qais/grid.hpp"
#include "qais/pentagon.hpp"

namespace qais {

/// Real-valued function on a d-dimensional box. Evaluation is pure.
struct Integrand {
    std::function<double(std::span<const double>)> eval;
    std::vector<std::pair<double, double>> domain;
    std::string label;

    int dims() const { return static_cast<int>(domain.size()); }
    double operator()(std::span<const double> x) const { return eval(x); }
};

/// Two Gaussian peaks on the diagonal of [0,1]^2, normalized so the integral
/// is exactly 1 (normalization from the 1D Gaussian-error integrals).
Integrand gauss2_integrand();

/// Thin ring of radius 0.35 around (0.5, 0.5) on [0,1]^2.
Integrand ring_integrand();

/// Three exponential peaks along the diagonal of [0,1]^d, 2 <= d <= 6.
/// Euclidean-norm decay (not squared).
Integrand multipeak_integrand(int d);

/// One-loop scalar pentagon in the loop-tree duality on [0,1]^3.
/// Non-finite values raise; the z = 1 boundary is clamped.
Integrand pentagon_ltd_integrand(const PentagonKinematics& kin);

/// |f| wrapper, used when shaping sampling targets for signed integrands.
Integrand abs_integrand(const Integrand& f);

/// Normalized cell-probability table built from within-cell averages.
struct TargetPMF {
    /// (cell linear index, probability), ascending, entries > 0 only.
    std::vector<std::pair<std::uint64_t, double>> probabilities;
    double normalization = 0.0;  // Z, the sum of cell averages
    int samples_per_cell = 0;

    /// Dense 2^n vector (missing cells are zero).
    std::vector<double> dense(const GridSpec& spec) const;
};

/// Per-cell average store; concurrent insert-or-read, last writer wins
/// (values are identical by purity of the integrand).
class CellAverageCache {
public:
    std::optional<double> lookup(std::uint64_t cell) const;
    void store(std::uint64_t cell, double value);
    std::size_t size() const;

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::uint64_t, double> values_;
};

/**
 * Discretize f into a PMF: every cell is averaged over samples_per_cell
 * points (cell center when samples_per_cell == 1, shifted Sobol points
 * otherwise) and normalized by the sum Z. A cache makes repeated builds
 * free of integrand calls. Negative cell averages are reported as errors.
 */
TargetPMF build_target_pmf(const GridSpec& spec, const Integrand& f, int samples_per_cell,
                           std::uint64_t seed, CellAverageCache* cache = nullptr);

}  // namespace qais
