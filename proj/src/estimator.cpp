#include "qais/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qais/common.hpp"
#include "qais/sobol.hpp"

namespace qais {
namespace {

/// Per-group partial sums of w*f and (w*f)^2, each pairwise-accumulated.
struct GroupPartial {
    double sum = 0.0;
    double sum_sq = 0.0;
};

}  // namespace

std::vector<std::vector<std::uint64_t>> allocate_samples(const TileCoverage& coverage,
                                                         std::mt19937_64& rng) {
    std::vector<std::vector<std::uint64_t>> allocation(coverage.groups.size());
    for (std::size_t g = 0; g < coverage.groups.size(); ++g) {
        const TileGroup& group = coverage.groups[g];
        const std::size_t rects = group.rects.size();
        std::vector<std::uint64_t>& counts = allocation[g];
        counts.assign(rects, 0);
        const std::uint64_t shots = group.count;

        if (rects == 1) {
            counts[0] = shots;
            continue;
        }

        std::vector<std::uint64_t> cells(rects);
        std::uint64_t total_cells = 0;
        for (std::size_t r = 0; r < rects; ++r) {
            cells[r] = group.rects[r].cell_count();
            total_cells += cells[r];
        }

        if (shots < rects) {
            // Too few samples for deterministic shares: volume-weighted draws.
            for (std::uint64_t s = 0; s < shots; ++s) {
                const double u = u64_to_unit_double(rng()) * static_cast<double>(total_cells);
                double running = 0.0;
                std::size_t pick = rects - 1;
                for (std::size_t r = 0; r < rects; ++r) {
                    running += static_cast<double>(cells[r]);
                    if (u < running) {
                        pick = r;
                        break;
                    }
                }
                ++counts[pick];
            }
            continue;
        }

        // Proportional integer shares floor(shots*cells/total); each leftover
        // sample is assigned by an independent draw with probability
        // proportional to the fractional remainders. The expected count per
        // rect is then exactly shots*cells/total, which keeps placement
        // uniform over the group and the estimator free of rounding bias.
        std::uint64_t assigned = 0;
        std::vector<std::uint64_t> remainder(rects);
        std::uint64_t remainder_total = 0;
        for (std::size_t r = 0; r < rects; ++r) {
            // 128-bit product: shots * cells can pass 2^64 on huge budgets.
            const unsigned __int128 product =
                static_cast<unsigned __int128>(shots) * cells[r];
            counts[r] = static_cast<std::uint64_t>(product / total_cells);
            assigned += counts[r];
            remainder[r] = static_cast<std::uint64_t>(product % total_cells);
            remainder_total += remainder[r];
        }
        const std::uint64_t leftover = shots - assigned;
        for (std::uint64_t i = 0; i < leftover; ++i) {
            const double u = u64_to_unit_double(rng()) * static_cast<double>(remainder_total);
            double running = 0.0;
            std::size_t pick = rects - 1;
            for (std::size_t r = 0; r < rects; ++r) {
                running += static_cast<double>(remainder[r]);
                if (u < running) {
                    pick = r;
                    break;
                }
            }
            ++counts[pick];
        }
    }
    return allocation;
}

EstimateResult qais_estimate(const GridSpec& spec, const Integrand& f, const StateVector& proposal,
                             std::uint64_t shots, const MixtureConfig& mix, std::uint64_t seed,
                             const EstimateHooks& hooks) {
    if (shots < 2) fail_invalid("qais_estimate: need at least two shots");
    if (proposal.n != spec.total_qubits())
        fail_invalid("qais_estimate: proposal qubit count does not match the grid");
    if (f.dims() != spec.dims()) fail_invalid("qais_estimate: integrand dimension mismatch");
    if (mix.beta < 0.0 || mix.beta >= 1.0) fail_invalid("qais_estimate: beta must be in [0, 1)");

    // Shot distribution: the proposal Born PMF, defensively mixed if requested.
    std::vector<double> pmf = probabilities(proposal);
    if (mix.beta > 0.0) {
        const double uniform = 1.0 / static_cast<double>(pmf.size());
        for (double& p : pmf) p = (1.0 - mix.beta) * p + mix.beta * uniform;
    }

    const std::uint64_t sample_seed = mix_seed(seed, 1);
    const std::uint64_t alloc_seed = mix_seed(seed, 2);
    const std::uint64_t sobol_seed = mix_seed(seed, 3);

    const ShotCounts counts = sample(pmf, shots, sample_seed);
    const MeasuredSet measured = MeasuredSet::from_shots(counts);
    const TileCoverage coverage = full_coverage(spec, measured);

    std::mt19937_64 alloc_rng(alloc_seed);
    const std::vector<std::vector<std::uint64_t>> allocation = allocate_samples(coverage, alloc_rng);

    const double domain_volume = spec.domain_volume();
    const int d = spec.dims();
    const std::size_t group_count = coverage.groups.size();

    EstimateResult result;
    result.shots = shots;
    result.seed = seed;
    result.beta = mix.beta;
    result.states_observed = measured.size();
    result.hilbert_fraction =
        static_cast<double>(measured.size()) / static_cast<double>(spec.cell_count());
    for (RegionLabel label : classify_regions(spec, measured))
        ++result.region_counts[static_cast<std::size_t>(label)];

    for (const TileGroup& group : coverage.groups) {
        if (group.volume / static_cast<double>(group.count) > 0.05 * domain_volume)
            result.heavy_weight = true;
    }

    std::vector<GroupPartial> partials(group_count);
    const auto process_group = [&](std::size_t g, std::vector<double>* capture) {
        const TileGroup& group = coverage.groups[g];
        const double weight =
            group.volume * static_cast<double>(shots) / static_cast<double>(group.count);
        SobolStream stream(d, sobol_seed, g);
        SampleBatch batch;
        batch.dim = d;
        batch.weight = weight;
        PairwiseSum sum, sum_sq;
        for (std::size_t r = 0; r < group.rects.size(); ++r) {
            const std::uint64_t m = allocation[g][r];
            if (m == 0) continue;
            const auto box = rect_bounds(spec, group.rects[r]);
            batch.points = sobol_points(box, m, stream);
            for (std::uint64_t i = 0; i < m; ++i) {
                const std::span<const double> x(batch.points.data() + i * static_cast<std::size_t>(d),
                                                static_cast<std::size_t>(d));
                const double value = f(x);
                if (!std::isfinite(value))
                    throw std::runtime_error("qais_estimate: non-finite integrand value in group " +
                                             std::to_string(g));
                const double wf = weight * value;
                sum.add(wf);
                sum_sq.add(wf * wf);
            }
            if (capture) capture->insert(capture->end(), batch.points.begin(), batch.points.end());
        }
        partials[g] = {sum.total(), sum_sq.total()};
    };

    const int threads = std::max(1, hooks.threads);
    if (threads == 1 || hooks.capture_points != nullptr || group_count < 2) {
        for (std::size_t g = 0; g < group_count; ++g) process_group(g, hooks.capture_points);
    } else {
        std::vector<std::thread> workers;
        std::atomic<std::size_t> next{0};
        for (int t = 0; t < threads; ++t)
            workers.emplace_back([&, t]() {
                for (std::size_t g = next.fetch_add(1); g < group_count; g = next.fetch_add(1))
                    process_group(g, nullptr);
            });
        for (std::thread& w : workers) w.join();
    }

    // Merge per-group partials in group order; bit-stable across thread counts.
    PairwiseSum total, total_sq;
    for (const GroupPartial& p : partials) {
        total.add(p.sum);
        total_sq.add(p.sum_sq);
    }

    const double n = static_cast<double>(shots);
    result.estimate = total.total() / n;
    const double second_moment = total_sq.total() / n;
    double spread = second_moment - result.estimate * result.estimate;
    // Cancellation noise floor: constant integrands must report zero spread.
    if (spread < 1e-12 * second_moment) spread = 0.0;
    result.std_err = std::sqrt(std::max(0.0, spread / (n - 1.0)));
    return result;
}

std::pair<std::vector<EstimateResult>, RepeatSummary> repeat_runs(
    const GridSpec& spec, const Integrand& f, const StateVector& proposal, std::uint64_t shots,
    const MixtureConfig& mix, int replicates, std::uint64_t seed, const EstimateHooks& hooks) {
    if (replicates < 2) fail_invalid("repeat_runs: need at least two replicates");
    std::vector<EstimateResult> results;
    results.reserve(static_cast<std::size_t>(replicates));
    for (int r = 0; r < replicates; ++r)
        results.push_back(qais_estimate(spec, f, proposal, shots, mix,
                                        mix_seed(seed, 0x5eed0000ull + static_cast<std::uint64_t>(r)),
                                        hooks));

    RepeatSummary summary;
    PairwiseSum mean_acc, std_acc;
    for (const EstimateResult& r : results) {
        mean_acc.add(r.estimate);
        std_acc.add(r.std_err);
    }
    summary.mean_estimate = mean_acc.total() / replicates;
    summary.mean_std = std_acc.total() / replicates;
    PairwiseSum var_acc;
    for (const EstimateResult& r : results) {
        const double dev = r.estimate - summary.mean_estimate;
        var_acc.add(dev * dev);
    }
    summary.spread = std::sqrt(var_acc.total() / (replicates - 1));
    return {std::move(results), summary};
}

}  // namespace qais
