#include "qais/vegas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qais/common.hpp"

namespace qais {

VegasGrid VegasGrid::uniform(const std::vector<std::pair<double, double>>& domain, int bins) {
    if (bins < 2) fail_invalid("VegasGrid: need at least two bins");
    if (domain.empty()) fail_invalid("VegasGrid: empty domain");
    VegasGrid grid;
    grid.boundaries.resize(domain.size());
    for (std::size_t d = 0; d < domain.size(); ++d) {
        const auto& [a, b] = domain[d];
        if (!(b > a)) fail_invalid("VegasGrid: empty interval on axis " + std::to_string(d));
        grid.boundaries[d].resize(static_cast<std::size_t>(bins) + 1);
        for (int i = 0; i <= bins; ++i)
            grid.boundaries[d][static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / bins;
    }
    return grid;
}

std::pair<std::vector<double>, double> map_point(const VegasGrid& grid,
                                                 const std::vector<double>& y) {
    const int d = grid.dims();
    const int bins = grid.bins();
    if (y.size() != static_cast<std::size_t>(d)) fail_invalid("map_point: dimension mismatch");
    std::vector<double> x(static_cast<std::size_t>(d));
    double jacobian = 1.0;
    for (int axis = 0; axis < d; ++axis) {
        const std::size_t a = static_cast<std::size_t>(axis);
        const double scaled = y[a] * bins;
        int bin = std::min(static_cast<int>(scaled), bins - 1);
        if (bin < 0) bin = 0;
        const std::size_t b = static_cast<std::size_t>(bin);
        const double width = grid.boundaries[a][b + 1] - grid.boundaries[a][b];
        x[a] = grid.boundaries[a][b] + width * (scaled - bin);
        jacobian *= bins * width;
    }
    return {std::move(x), jacobian};
}

std::vector<std::vector<double>> accumulate_D(const VegasGrid& grid,
                                              const VegasSampleSet& samples) {
    const int d = grid.dims();
    const int bins = grid.bins();
    if (samples.dim != d) fail_invalid("accumulate_D: dimension mismatch");
    std::vector<std::vector<double>> sums(static_cast<std::size_t>(d),
                                          std::vector<double>(static_cast<std::size_t>(bins), 0.0));
    std::vector<std::vector<std::uint64_t>> hits(
        static_cast<std::size_t>(d), std::vector<std::uint64_t>(static_cast<std::size_t>(bins), 0));

    const std::uint64_t count = samples.count();
    for (std::uint64_t i = 0; i < count; ++i) {
        const double weight_sq = samples.jf[i] * samples.jf[i];
        for (int axis = 0; axis < d; ++axis) {
            const std::size_t a = static_cast<std::size_t>(axis);
            const double yi = samples.y[i * static_cast<std::size_t>(d) + a];
            int bin = std::min(static_cast<int>(yi * bins), bins - 1);
            if (bin < 0) bin = 0;
            sums[a][static_cast<std::size_t>(bin)] += weight_sq;
            ++hits[a][static_cast<std::size_t>(bin)];
        }
    }

    for (int axis = 0; axis < d; ++axis) {
        const std::size_t a = static_cast<std::size_t>(axis);
        for (int bin = 0; bin < bins; ++bin) {
            const std::size_t b = static_cast<std::size_t>(bin);
            if (hits[a][b] > 0) sums[a][b] /= static_cast<double>(hits[a][b]);
        }
    }
    return sums;
}

std::vector<double> smooth_compress(const std::vector<double>& d_values, double alpha) {
    const std::size_t bins = d_values.size();
    if (bins < 2) fail_invalid("smooth_compress: need at least two bins");
    if (alpha < 0.0) fail_invalid("smooth_compress: alpha must be non-negative");
    double total = 0.0;
    for (double v : d_values) {
        if (v < 0.0) fail_invalid("smooth_compress: negative accumulator entry");
        total += v;
    }
    if (total <= 0.0) fail_invalid("smooth_compress: all-zero accumulator");

    std::vector<double> smooth(bins);
    smooth[0] = 0.5 * (d_values[0] + d_values[1]);
    smooth[bins - 1] = 0.5 * (d_values[bins - 2] + d_values[bins - 1]);
    for (std::size_t i = 1; i + 1 < bins; ++i)
        smooth[i] = (d_values[i - 1] + d_values[i] + d_values[i + 1]) / 3.0;

    double smooth_total = 0.0;
    for (double v : smooth) smooth_total += v;

    std::vector<double> m(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        if (alpha == 0.0) {
            m[i] = 1.0;
            continue;
        }
        const double r = smooth[i] / smooth_total;
        if (r <= 0.0) {
            m[i] = 0.0;
        } else if (std::abs(1.0 - r) < 1e-13) {
            m[i] = 1.0;
        } else {
            m[i] = std::pow((r - 1.0) / std::log(r), alpha);
        }
    }
    return m;
}

std::vector<double> rebalance(const std::vector<double>& boundaries, const std::vector<double>& m) {
    const std::size_t bins = m.size();
    if (boundaries.size() != bins + 1) fail_invalid("rebalance: boundary/bin count mismatch");
    double total = 0.0;
    for (double v : m) {
        if (v < 0.0) fail_invalid("rebalance: negative weight");
        total += v;
    }
    if (total <= 0.0) fail_invalid("rebalance: all-zero weights");

    const double a = boundaries.front();
    const double b = boundaries.back();
    const double target = total / static_cast<double>(bins);

    std::vector<double> out(bins + 1);
    out[0] = a;
    out[bins] = b;
    std::size_t bin = 0;
    double consumed = 0.0;  // weight already swept in earlier bins
    for (std::size_t j = 1; j < bins; ++j) {
        const double goal = target * static_cast<double>(j);
        while (bin + 1 < bins && consumed + m[bin] < goal) {
            consumed += m[bin];
            ++bin;
        }
        const double width = boundaries[bin + 1] - boundaries[bin];
        const double inside = m[bin] > 0.0 ? (goal - consumed) / m[bin] : 1.0;
        out[j] = boundaries[bin] + width * std::min(1.0, std::max(0.0, inside));
    }

    // Restore strict monotonicity with a minimal width if rounding collapsed bins.
    const double eps = 1e-12 * (b - a);
    for (std::size_t j = 1; j < bins; ++j)
        if (out[j] <= out[j - 1]) out[j] = out[j - 1] + eps;
    for (std::size_t j = bins; j-- > 1;)
        if (out[j] >= out[j + 1]) out[j] = out[j + 1] - eps;
    return out;
}

VegasResult vegas_integrate(const Integrand& f, const VegasConfig& cfg) {
    if (cfg.iterations < 1) fail_invalid("vegas_integrate: need at least one iteration");
    if (cfg.samples_per_iteration < 2) fail_invalid("vegas_integrate: need at least two samples");
    const int d = f.dims();
    VegasGrid grid = VegasGrid::uniform(f.domain, cfg.grid_bins);
    std::mt19937_64 rng(cfg.seed);

    VegasResult result;
    VegasSampleSet set;
    set.dim = d;
    const std::uint64_t n = cfg.samples_per_iteration;
    std::vector<double> y(static_cast<std::size_t>(d));

    for (int iter = 0; iter < cfg.iterations; ++iter) {
        set.y.assign(n * static_cast<std::size_t>(d), 0.0);
        set.jf.assign(n, 0.0);
        const bool keep_x = cfg.keep_final_samples && iter == cfg.iterations - 1;
        if (keep_x) result.final_points.assign(n * static_cast<std::size_t>(d), 0.0);

        PairwiseSum sum, sum_sq;
        for (std::uint64_t i = 0; i < n; ++i) {
            for (int axis = 0; axis < d; ++axis)
                y[static_cast<std::size_t>(axis)] = u64_to_unit_double(rng());
            auto [x, jacobian] = map_point(grid, y);
            const double jf = jacobian * f(x);
            sum.add(jf);
            sum_sq.add(jf * jf);
            std::copy(y.begin(), y.end(), set.y.begin() + static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(d)));
            set.jf[i] = jf;
            if (keep_x)
                std::copy(x.begin(), x.end(),
                          result.final_points.begin() + static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(d)));
        }

        VegasIteration it;
        it.estimate = sum.total() / static_cast<double>(n);
        const double second = sum_sq.total() / static_cast<double>(n);
        double spread = second - it.estimate * it.estimate;
        // E[x^2] - mean^2 cancels catastrophically for (near-)constant
        // integrands; below relative 1e-12 the spread is rounding noise.
        if (spread < 1e-12 * second) spread = 0.0;
        it.sigma = std::sqrt(std::max(0.0, spread / (static_cast<double>(n) - 1.0)));
        result.iterations.push_back(it);

        if (iter + 1 < cfg.iterations) {
            const auto d_arrays = accumulate_D(grid, set);
            for (int axis = 0; axis < d; ++axis) {
                const std::size_t a = static_cast<std::size_t>(axis);
                double axis_total = 0.0;
                for (double v : d_arrays[a]) axis_total += v;
                if (axis_total <= 0.0) continue;  // nothing to adapt on this axis
                const std::vector<double> m = smooth_compress(d_arrays[a], cfg.alpha);
                grid.boundaries[a] = rebalance(grid.boundaries[a], m);
            }
        }
    }

    result.final_grid = grid;
    result.best_iteration = 0;
    for (std::size_t j = 1; j < result.iterations.size(); ++j)
        if (result.iterations[j].sigma < result.iterations[static_cast<std::size_t>(result.best_iteration)].sigma)
            result.best_iteration = static_cast<int>(j);

    // Inverse-variance combination; exact (zero-sigma) iterations are
    // combined by equal weighting instead.
    bool any_exact = false;
    for (const VegasIteration& it : result.iterations) any_exact = any_exact || it.sigma == 0.0;
    if (any_exact) {
        double mean = 0.0;
        int exact = 0;
        for (const VegasIteration& it : result.iterations)
            if (it.sigma == 0.0) {
                mean += it.estimate;
                ++exact;
            }
        result.combined_estimate = mean / exact;
        result.combined_sigma = 0.0;
    } else {
        double weight_total = 0.0;
        double weighted = 0.0;
        for (const VegasIteration& it : result.iterations) {
            const double w = 1.0 / (it.sigma * it.sigma);
            weight_total += w;
            weighted += w * it.estimate;
        }
        result.combined_estimate = weighted / weight_total;
        result.combined_sigma = std::sqrt(1.0 / weight_total);
    }
    return result;
}

PhantomReport phantom_diagnostic(const std::vector<double>& points, int dim,
                                 const std::vector<double>& peaks, double radius) {
    if (dim < 2) fail_invalid("phantom_diagnostic: need at least two dimensions");
    if (peaks.size() < 1) fail_invalid("phantom_diagnostic: need at least one peak");
    const std::size_t p = peaks.size();
    PhantomReport report;
    report.total_samples = points.size() / static_cast<std::size_t>(dim);
    std::uint64_t sites = 1;
    for (int axis = 0; axis < dim; ++axis) sites *= p;
    report.true_sites = p;
    report.phantom_sites = sites - p;

    for (std::uint64_t i = 0; i < report.total_samples; ++i) {
        bool near_site = true;
        bool diagonal = true;
        int first_peak = -1;
        for (int axis = 0; axis < dim && near_site; ++axis) {
            const double v = points[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(axis)];
            int match = -1;
            for (std::size_t k = 0; k < p; ++k) {
                if (std::abs(v - peaks[k]) <= radius) {
                    match = static_cast<int>(k);
                    break;
                }
            }
            if (match < 0) near_site = false;
            else if (axis == 0) first_peak = match;
            else if (match != first_peak) diagonal = false;
        }
        if (!near_site) continue;
        if (diagonal)
            ++report.near_true;
        else
            ++report.near_phantom;
    }
    return report;
}

}  // namespace qais
