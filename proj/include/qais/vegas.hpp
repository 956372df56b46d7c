#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qais/target.hpp"

namespace qais {

/// Separable adaptive grid: per-dimension ordered bin boundaries with fixed
/// endpoints at the domain bounds.
struct VegasGrid {
    std::vector<std::vector<double>> boundaries;  // per dim, size bins+1

    int dims() const { return static_cast<int>(boundaries.size()); }
    int bins() const { return static_cast<int>(boundaries.front().size()) - 1; }

    static VegasGrid uniform(const std::vector<std::pair<double, double>>& domain, int bins);
};

struct VegasConfig {
    int grid_bins = 50;
    std::uint64_t samples_per_iteration = 100000;
    int iterations = 10;
    double alpha = 1.5;  // damping exponent; 0 disables adaptation
    std::uint64_t seed = 0;
    bool keep_final_samples = false;
};

struct VegasIteration {
    double estimate = 0.0;
    double sigma = 0.0;
};

struct VegasResult {
    std::vector<VegasIteration> iterations;
    double combined_estimate = 0.0;
    double combined_sigma = 0.0;
    int best_iteration = 0;             // smallest per-iteration sigma
    std::vector<double> final_points;   // x points of the last iteration, if kept
    VegasGrid final_grid;               // adapted boundaries after the run
};

/// Uniform-space samples with their mapped weights, for grid adaptation.
struct VegasSampleSet {
    int dim = 0;
    std::vector<double> y;   // count * dim, point-major, in [0,1)^d
    std::vector<double> jf;  // J(y) * f(x(y)) per sample

    std::uint64_t count() const { return dim ? y.size() / static_cast<std::size_t>(dim) : 0; }
};

/// Map y in [0,1)^d through the grid; returns x and the step-function
/// Jacobian prod_i N_g * dx_i.
std::pair<std::vector<double>, double> map_point(const VegasGrid& grid,
                                                 const std::vector<double>& y);

/// Per-dimension, per-bin mean of (J f)^2 over the samples landing in the
/// bin (projection semantics); empty bins get 0.
std::vector<std::vector<double>> accumulate_D(const VegasGrid& grid, const VegasSampleSet& samples);

/// Three-point neighbor smoothing with one-sided edges, normalization, then
/// the damping ((r - 1) / ln r)^alpha with limits 1 at r=1 and 0 at r=0.
std::vector<double> smooth_compress(const std::vector<double>& d_values, double alpha);

/// Place bins-1 interior boundaries where the running piecewise-constant
/// accumulation of m crosses multiples of its mean; endpoints fixed, strict
/// monotonicity restored by a minimal width when needed.
std::vector<double> rebalance(const std::vector<double>& boundaries, const std::vector<double>& m);

/// Classic importance-sampling grid adaptation: per-iteration estimates and
/// their inverse-variance combination.
VegasResult vegas_integrate(const Integrand& f, const VegasConfig& cfg);

struct PhantomReport {
    std::uint64_t total_samples = 0;
    std::uint64_t near_true = 0;
    std::uint64_t near_phantom = 0;
    std::uint64_t true_sites = 0;
    std::uint64_t phantom_sites = 0;

    double true_fraction_of_near() const {
        const std::uint64_t near = near_true + near_phantom;
        return near ? static_cast<double>(near_true) / static_cast<double>(near) : 0.0;
    }
    double phantom_fraction_of_all() const {
        return total_samples ? static_cast<double>(near_phantom) / static_cast<double>(total_samples)
                             : 0.0;
    }
};

/**
 * Fractions of samples within L-infinity `radius` of the p^d grid-product
 * sites of p diagonal peak positions, split into the p true (diagonal) sites
 * and the p^d - p phantom sites.
 */
PhantomReport phantom_diagnostic(const std::vector<double>& points, int dim,
                                 const std::vector<double>& peaks, double radius = 0.05);

}  // namespace qais
