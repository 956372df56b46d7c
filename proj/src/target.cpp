#include "qais/target.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "qais/common.hpp"
#include "qais/keyval.hpp"
#include "qais/sobol.hpp"

namespace qais {
namespace {

double sq_dist(std::span<const double> x, double center) {
    double s = 0.0;
    for (double xi : x) s += (xi - center) * (xi - center);
    return s;
}

}  // namespace

Integrand gauss2_integrand() {
    // 1D factor integral of exp(-200 (t - c)^2) over [0, 1].
    const auto line_mass = [](double c) {
        const double root = std::sqrt(200.0);
        return 0.5 * std::sqrt(M_PI / 200.0) * (std::erf(root * (1.0 - c)) + std::erf(root * c));
    };
    const double g23 = line_mass(0.23);
    const double g74 = line_mass(0.74);
    const double norm = 1.0 / (g23 * g23 + g74 * g74);

    Integrand f;
    f.label = "gauss2";
    f.domain = {{0.0, 1.0}, {0.0, 1.0}};
    f.eval = [norm](std::span<const double> x) {
        return norm * (std::exp(-200.0 * sq_dist(x, 0.23)) + std::exp(-200.0 * sq_dist(x, 0.74)));
    };
    return f;
}

Integrand ring_integrand() {
    Integrand f;
    f.label = "ring";
    f.domain = {{0.0, 1.0}, {0.0, 1.0}};
    f.eval = [](std::span<const double> x) {
        const double r = std::sqrt(sq_dist(x, 0.5));
        return std::exp(-200.0 * (r - 0.35) * (r - 0.35));
    };
    return f;
}

Integrand multipeak_integrand(int d) {
    if (d < 2 || d > 6) fail_invalid("multipeak_integrand: dimension must be in [2, 6]");
    Integrand f;
    f.label = "multipeak" + std::to_string(d);
    f.domain.assign(static_cast<std::size_t>(d), {0.0, 1.0});
    f.eval = [](std::span<const double> x) {
        double total = 0.0;
        for (double c : {0.23, 0.39, 0.74}) total += std::exp(-50.0 * std::sqrt(sq_dist(x, c)));
        return total;
    };
    return f;
}

Integrand pentagon_ltd_integrand(const PentagonKinematics& kin) {
    auto core = std::make_shared<detail::PentagonCore<double>>(kin);
    Integrand f;
    f.label = "pentagon";
    f.domain = {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}};
    f.eval = [core](std::span<const double> x) {
        const std::complex<double> v =
            core->unit_cube_value(x[0], -1.0 + 2.0 * x[1], 2.0 * M_PI * x[2]);
        const double re = v.real();
        if (!std::isfinite(re))
            throw std::runtime_error("pentagon integrand: non-finite value at z=" +
                                     std::to_string(x[0]));
        return re;
    };
    return f;
}

Integrand abs_integrand(const Integrand& f) {
    Integrand out;
    out.label = "abs_" + f.label;
    out.domain = f.domain;
    const auto inner = f.eval;
    out.eval = [inner](std::span<const double> x) { return std::abs(inner(x)); };
    return out;
}

PentagonKinematics PentagonKinematics::p11() {
    PentagonKinematics kin;
    kin.p = {{{33.74515, 45.72730, 31.15254, -7.47943},
              {31.36435, -41.50734, 46.47897, 2.04203},
              {4.59005, 17.07010, 32.65403, 41.93628},
              {29.51054, -28.25963, 46.17333, -35.08918}}};
    kin.m.fill(5.01213);
    return kin;
}

PentagonKinematics PentagonKinematics::zero_momentum(double mass) {
    PentagonKinematics kin;
    kin.m.fill(mass);
    return kin;
}

PentagonKinematics PentagonKinematics::load(const std::string& path) {
    const KeyValueDoc doc = KeyValueDoc::parse_file(path);
    PentagonKinematics kin;
    for (int i = 0; i < 4; ++i) {
        const auto values = doc.get_doubles("p" + std::to_string(i + 1));
        if (values.size() != 4)
            fail_invalid(path + ": p" + std::to_string(i + 1) + " needs four components");
        for (int c = 0; c < 4; ++c) kin.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = values[static_cast<std::size_t>(c)];
    }
    for (int i = 0; i < 5; ++i) {
        const double mass = doc.get_double("m" + std::to_string(i + 1));
        if (!(mass > 0.0)) fail_invalid(path + ": masses must be positive");
        kin.m[static_cast<std::size_t>(i)] = mass;
    }
    return kin;
}

std::vector<double> TargetPMF::dense(const GridSpec& spec) const {
    std::vector<double> out(spec.cell_count(), 0.0);
    for (const auto& [cell, p] : probabilities) out[cell] = p;
    return out;
}

std::optional<double> CellAverageCache::lookup(std::uint64_t cell) const {
    std::shared_lock lock(mutex_);
    const auto it = values_.find(cell);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

void CellAverageCache::store(std::uint64_t cell, double value) {
    std::unique_lock lock(mutex_);
    values_[cell] = value;
}

std::size_t CellAverageCache::size() const {
    std::shared_lock lock(mutex_);
    return values_.size();
}

TargetPMF build_target_pmf(const GridSpec& spec, const Integrand& f, int samples_per_cell,
                           std::uint64_t seed, CellAverageCache* cache) {
    if (samples_per_cell < 1) fail_invalid("build_target_pmf: samples_per_cell must be >= 1");
    if (f.dims() != spec.dims()) fail_invalid("build_target_pmf: integrand dimension mismatch");

    const std::uint64_t cells = spec.cell_count();
    std::vector<double> averages(cells);
    std::vector<double> point(static_cast<std::size_t>(spec.dims()));
    PairwiseSum z_sum;

    for (std::uint64_t cell = 0; cell < cells; ++cell) {
        double avg;
        const std::optional<double> cached = cache ? cache->lookup(cell) : std::nullopt;
        if (cached) {
            avg = *cached;
        } else {
            const auto box = cell_bounds(spec, linear_to_coords(spec, cell));
            if (samples_per_cell == 1) {
                // Midpoint rule: a single representative point sits at the center.
                for (int i = 0; i < spec.dims(); ++i) {
                    const std::size_t s = static_cast<std::size_t>(i);
                    point[s] = 0.5 * (box[s].first + box[s].second);
                }
                avg = f(point);
            } else {
                SobolStream stream(spec.dims(), seed, cell);
                const std::vector<double> pts =
                    sobol_points(box, static_cast<std::uint64_t>(samples_per_cell), stream);
                PairwiseSum acc;
                for (int k = 0; k < samples_per_cell; ++k)
                    acc.add(f(std::span<const double>(
                        pts.data() + static_cast<std::size_t>(k) * static_cast<std::size_t>(spec.dims()),
                        static_cast<std::size_t>(spec.dims()))));
                avg = acc.total() / samples_per_cell;
            }
            if (cache) cache->store(cell, avg);
        }
        if (avg < 0.0)
            throw std::runtime_error("build_target_pmf: negative cell average at cell " +
                                     std::to_string(cell) + " (use |f| for signed integrands)");
        averages[cell] = avg;
        z_sum.add(avg);
    }

    TargetPMF pmf;
    pmf.samples_per_cell = samples_per_cell;
    pmf.normalization = z_sum.total();
    if (!(pmf.normalization > 0.0))
        throw std::runtime_error("build_target_pmf: integrand vanishes on the whole grid");
    for (std::uint64_t cell = 0; cell < cells; ++cell) {
        if (averages[cell] > 0.0) pmf.probabilities.emplace_back(cell, averages[cell] / pmf.normalization);
    }
    return pmf;
}

}  // namespace qais
