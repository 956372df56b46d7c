#include "qais/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "qais/common.hpp"

namespace qais {
namespace {

constexpr double kProposalFloor = 1e-300;

/// Tracks every cost evaluation and the best point seen.
class CostRecorder {
public:
    CostRecorder(const AnsatzSpec& ansatz, int n, const TargetPMF& target, int budget)
        : ansatz_(ansatz), n_(n), target_(target), budget_(budget) {}

    double evaluate(std::span<const double> params) {
        const StateVector state = run_ansatz(ansatz_, n_, params);
        const double cost = kl_divergence(target_, probabilities(state));
        history_.emplace_back(static_cast<int>(history_.size()), cost);
        if (cost < best_cost_) {
            best_cost_ = cost;
            best_params_.assign(params.begin(), params.end());
        }
        return cost;
    }

    bool exhausted() const { return static_cast<int>(history_.size()) >= budget_; }
    double best_cost() const { return best_cost_; }
    const std::vector<double>& best_params() const { return best_params_; }
    std::vector<std::pair<int, double>>& history() { return history_; }

private:
    const AnsatzSpec& ansatz_;
    int n_;
    const TargetPMF& target_;
    int budget_;
    std::vector<std::pair<int, double>> history_;
    double best_cost_ = std::numeric_limits<double>::infinity();
    std::vector<double> best_params_;
};

/// Solve A x = b in place by Gaussian elimination with partial pivoting.
/// Returns false when the system is numerically singular.
bool solve_linear(std::vector<double>& a, std::vector<double>& b, int p) {
    for (int col = 0; col < p; ++col) {
        int pivot = col;
        for (int row = col + 1; row < p; ++row)
            if (std::abs(a[static_cast<std::size_t>(row) * p + col]) > std::abs(a[static_cast<std::size_t>(pivot) * p + col])) pivot = row;
        if (std::abs(a[static_cast<std::size_t>(pivot) * p + col]) < 1e-14) return false;
        if (pivot != col) {
            for (int k = col; k < p; ++k) std::swap(a[static_cast<std::size_t>(col) * p + k], a[static_cast<std::size_t>(pivot) * p + k]);
            std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(pivot)]);
        }
        const double inv = 1.0 / a[static_cast<std::size_t>(col) * p + col];
        for (int row = col + 1; row < p; ++row) {
            const double factor = a[static_cast<std::size_t>(row) * p + col] * inv;
            if (factor == 0.0) continue;
            for (int k = col; k < p; ++k) a[static_cast<std::size_t>(row) * p + k] -= factor * a[static_cast<std::size_t>(col) * p + k];
            b[static_cast<std::size_t>(row)] -= factor * b[static_cast<std::size_t>(col)];
        }
    }
    for (int row = p - 1; row >= 0; --row) {
        double s = b[static_cast<std::size_t>(row)];
        for (int k = row + 1; k < p; ++k) s -= a[static_cast<std::size_t>(row) * p + k] * b[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(row)] = s / a[static_cast<std::size_t>(row) * p + row];
    }
    return true;
}

/**
 * Linear-model trust-region minimizer over a simplex of p+1 points: fit the
 * interpolating linear model, step the best vertex against the model
 * gradient by the trust radius, and keep the simplex scaled to the radius.
 */
void trust_region_round(CostRecorder& rec, const std::vector<double>& start, double rho0,
                        double tol) {
    const int p = static_cast<int>(start.size());
    if (p == 0) return;
    double rho = rho0;
    const double rho_end = std::max(1e-8, tol);

    std::vector<std::vector<double>> vertices(static_cast<std::size_t>(p) + 1);
    std::vector<double> values(static_cast<std::size_t>(p) + 1);
    vertices[0] = start;
    values[0] = rec.evaluate(vertices[0]);
    for (int i = 0; i < p && !rec.exhausted(); ++i) {
        vertices[static_cast<std::size_t>(i) + 1] = start;
        vertices[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(i)] += rho;
        values[static_cast<std::size_t>(i) + 1] = rec.evaluate(vertices[static_cast<std::size_t>(i) + 1]);
    }

    const double rho_max = 10.0 * rho0;
    std::vector<double> matrix(static_cast<std::size_t>(p) * p);
    std::vector<double> rhs(static_cast<std::size_t>(p));
    while (!rec.exhausted() && rho > rho_end) {
        int best = 0, worst = 0;
        for (int i = 1; i <= p; ++i) {
            if (values[static_cast<std::size_t>(i)] < values[static_cast<std::size_t>(best)]) best = i;
            if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(worst)]) worst = i;
        }

        // Pull stale vertices back onto the trust-region sphere around best.
        int far_vertex = -1;
        double far_dist = 2.0 * rho;
        for (int i = 0; i <= p; ++i) {
            if (i == best) continue;
            double dist2 = 0.0;
            for (int k = 0; k < p; ++k) {
                const double dv = vertices[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] - vertices[static_cast<std::size_t>(best)][static_cast<std::size_t>(k)];
                dist2 += dv * dv;
            }
            const double dist = std::sqrt(dist2);
            if (dist > far_dist) {
                far_dist = dist;
                far_vertex = i;
            }
        }
        if (far_vertex >= 0) {
            const double scale = rho / far_dist;
            std::vector<double> pulled(static_cast<std::size_t>(p));
            for (int k = 0; k < p; ++k)
                pulled[static_cast<std::size_t>(k)] = vertices[static_cast<std::size_t>(best)][static_cast<std::size_t>(k)] +
                                                      scale * (vertices[static_cast<std::size_t>(far_vertex)][static_cast<std::size_t>(k)] -
                                                               vertices[static_cast<std::size_t>(best)][static_cast<std::size_t>(k)]);
            vertices[static_cast<std::size_t>(far_vertex)] = std::move(pulled);
            values[static_cast<std::size_t>(far_vertex)] = rec.evaluate(vertices[static_cast<std::size_t>(far_vertex)]);
            continue;
        }

        // Interpolating linear model around the best vertex.
        int row = 0;
        for (int i = 0; i <= p; ++i) {
            if (i == best) continue;
            for (int k = 0; k < p; ++k)
                matrix[static_cast<std::size_t>(row) * p + k] =
                    vertices[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] - vertices[static_cast<std::size_t>(best)][static_cast<std::size_t>(k)];
            rhs[static_cast<std::size_t>(row)] = values[static_cast<std::size_t>(i)] - values[static_cast<std::size_t>(best)];
            ++row;
        }
        std::vector<double> work = matrix;
        std::vector<double> gradient = rhs;
        if (!solve_linear(work, gradient, p)) {
            rho *= 0.5;
            continue;
        }
        double norm = 0.0;
        for (double g : gradient) norm += g * g;
        norm = std::sqrt(norm);
        if (norm < 1e-14) {
            rho *= 0.5;
            continue;
        }

        std::vector<double> trial(static_cast<std::size_t>(p));
        for (int k = 0; k < p; ++k)
            trial[static_cast<std::size_t>(k)] =
                vertices[static_cast<std::size_t>(best)][static_cast<std::size_t>(k)] - rho * gradient[static_cast<std::size_t>(k)] / norm;
        const double trial_value = rec.evaluate(trial);

        // Radius management on the model-agreement ratio: the linear model
        // predicts a reduction of rho * |g|.
        const double predicted = rho * norm;
        const double actual = values[static_cast<std::size_t>(best)] - trial_value;
        if (actual > 0.0) {
            vertices[static_cast<std::size_t>(worst)] = std::move(trial);
            values[static_cast<std::size_t>(worst)] = trial_value;
            if (actual > 0.5 * predicted) rho = std::min(rho_max, 1.4 * rho);
        } else if (trial_value < values[static_cast<std::size_t>(worst)]) {
            vertices[static_cast<std::size_t>(worst)] = std::move(trial);
            values[static_cast<std::size_t>(worst)] = trial_value;
            rho *= 0.7;
        } else {
            rho *= 0.6;
        }
    }
}

/// Trust-region rounds with soft restarts from the incumbent until the
/// evaluation budget runs out.
void minimize_linear_trust_region(CostRecorder& rec, std::vector<double> start, double rho0,
                                  double tol) {
    trust_region_round(rec, start, rho0, tol);
    while (!rec.exhausted() && !rec.best_params().empty())
        trust_region_round(rec, rec.best_params(), rho0, tol);
}

/// Nelder-Mead simplex with dimension-adaptive expansion/contraction.
void minimize_nelder_mead(CostRecorder& rec, std::vector<double> start, double step, double tol) {
    const int p = static_cast<int>(start.size());
    if (p == 0) return;
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / p;
    const double gamma = 0.75 - 1.0 / (2.0 * p);
    const double delta = 1.0 - 1.0 / p;

    std::vector<std::vector<double>> v(static_cast<std::size_t>(p) + 1);
    std::vector<double> f(static_cast<std::size_t>(p) + 1);
    v[0] = start;
    f[0] = rec.evaluate(v[0]);
    for (int i = 0; i < p && !rec.exhausted(); ++i) {
        v[static_cast<std::size_t>(i) + 1] = start;
        v[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(i)] += step;
        f[static_cast<std::size_t>(i) + 1] = rec.evaluate(v[static_cast<std::size_t>(i) + 1]);
    }

    std::vector<int> order(static_cast<std::size_t>(p) + 1);
    while (!rec.exhausted()) {
        for (int i = 0; i <= p; ++i) order[static_cast<std::size_t>(i)] = i;
        std::sort(order.begin(), order.end(), [&f](int a, int b) { return f[static_cast<std::size_t>(a)] < f[static_cast<std::size_t>(b)]; });
        const int lo = order[0];
        const int hi = order[static_cast<std::size_t>(p)];
        const int second_hi = order[static_cast<std::size_t>(p) - 1];
        if (f[static_cast<std::size_t>(hi)] - f[static_cast<std::size_t>(lo)] < tol) break;

        std::vector<double> centroid(static_cast<std::size_t>(p), 0.0);
        for (int i = 0; i <= p; ++i) {
            if (i == hi) continue;
            for (int k = 0; k < p; ++k) centroid[static_cast<std::size_t>(k)] += v[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        }
        for (double& c : centroid) c /= p;

        const auto blend = [&](double t) {
            std::vector<double> out(static_cast<std::size_t>(p));
            for (int k = 0; k < p; ++k)
                out[static_cast<std::size_t>(k)] = centroid[static_cast<std::size_t>(k)] +
                                                   t * (centroid[static_cast<std::size_t>(k)] - v[static_cast<std::size_t>(hi)][static_cast<std::size_t>(k)]);
            return out;
        };

        std::vector<double> reflected = blend(alpha);
        const double f_r = rec.evaluate(reflected);
        if (f_r < f[static_cast<std::size_t>(lo)]) {
            if (rec.exhausted()) break;
            std::vector<double> expanded = blend(alpha * beta);
            const double f_e = rec.evaluate(expanded);
            if (f_e < f_r) {
                v[static_cast<std::size_t>(hi)] = std::move(expanded);
                f[static_cast<std::size_t>(hi)] = f_e;
            } else {
                v[static_cast<std::size_t>(hi)] = std::move(reflected);
                f[static_cast<std::size_t>(hi)] = f_r;
            }
            continue;
        }
        if (f_r < f[static_cast<std::size_t>(second_hi)]) {
            v[static_cast<std::size_t>(hi)] = std::move(reflected);
            f[static_cast<std::size_t>(hi)] = f_r;
            continue;
        }
        if (rec.exhausted()) break;
        std::vector<double> contracted = blend(f_r < f[static_cast<std::size_t>(hi)] ? alpha * gamma : -gamma);
        const double f_c = rec.evaluate(contracted);
        if (f_c < std::min(f_r, f[static_cast<std::size_t>(hi)])) {
            v[static_cast<std::size_t>(hi)] = std::move(contracted);
            f[static_cast<std::size_t>(hi)] = f_c;
            continue;
        }
        // Shrink toward the best vertex.
        for (int i = 0; i <= p && !rec.exhausted(); ++i) {
            if (i == lo) continue;
            for (int k = 0; k < p; ++k)
                v[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                    v[static_cast<std::size_t>(lo)][static_cast<std::size_t>(k)] +
                    delta * (v[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] - v[static_cast<std::size_t>(lo)][static_cast<std::size_t>(k)]);
            f[static_cast<std::size_t>(i)] = rec.evaluate(v[static_cast<std::size_t>(i)]);
        }
    }
}

}  // namespace

double kl_divergence(const TargetPMF& target, std::span<const double> proposal) {
    double p_total = 0.0;
    for (const auto& [cell, p] : target.probabilities) {
        if (cell >= proposal.size()) fail_invalid("kl_divergence: target cell outside the proposal grid");
        p_total += p;
    }
    if (std::abs(p_total - 1.0) > 1e-9)
        fail_invalid("kl_divergence: target PMF sums to " + std::to_string(p_total));
    double q_total = 0.0;
    for (double q : proposal) q_total += q;
    if (std::abs(q_total - 1.0) > 1e-9)
        fail_invalid("kl_divergence: proposal PMF sums to " + std::to_string(q_total));

    double kl = 0.0;
    for (const auto& [cell, p] : target.probabilities) {
        const double q = proposal[cell];
        if (q < kProposalFloor) return std::numeric_limits<double>::infinity();
        kl += p * std::log(p / q);
    }
    return kl;
}

TrainReport train_qcbm(const AnsatzSpec& ansatz, int n, const TargetPMF& target,
                       const TrainConfig& cfg) {
    if (cfg.max_iterations < 1) fail_invalid("train_qcbm: need at least one iteration");
    if (!(cfg.tolerance > 0.0)) fail_invalid("train_qcbm: tolerance must be positive");
    const auto t0 = std::chrono::steady_clock::now();

    const std::size_t p = ansatz.param_count(n);
    CostRecorder recorder(ansatz, n, target, cfg.max_iterations);

    // The all-zero circuit is the uniform superposition; evaluate it first so
    // the report always includes the untrained baseline.
    const std::vector<double> zeros(p, 0.0);
    const double baseline = recorder.evaluate(zeros);

    if (baseline > cfg.tolerance && p > 0 && !recorder.exhausted()) {
        std::mt19937_64 rng(cfg.seed);
        std::vector<double> start(p);
        for (double& angle : start) angle = -0.1 + 0.2 * u64_to_unit_double(rng());
        if (cfg.optimizer == TrainConfig::Optimizer::Cobyla)
            minimize_linear_trust_region(recorder, std::move(start), cfg.initial_step, cfg.tolerance);
        else
            minimize_nelder_mead(recorder, std::move(start), cfg.initial_step, cfg.tolerance);
    }

    TrainReport report;
    report.best_params = recorder.best_params();
    report.final_kl = recorder.best_cost();
    report.cost_history = std::move(recorder.history());
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

StateVector oracle_proposal(const TargetPMF& target, int n) {
    StateVector state;
    state.n = n;
    state.amplitudes.assign(std::uint64_t{1} << n, Amplitude{});
    for (const auto& [cell, p] : target.probabilities) {
        if (cell >= state.size()) fail_invalid("oracle_proposal: target cell outside 2^n states");
        state.amplitudes[cell] = Amplitude{std::sqrt(p), 0.0};
    }
    return state;
}

}  // namespace qais
