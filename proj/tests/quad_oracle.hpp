#pragma once

// Independent quadrature oracles for the benchmark integrand references:
// tensor Simpson on the unit square and a radial-angular rule for the
// exponential peaks. Test-only code, kept free of the estimator paths.

#include <cmath>
#include <functional>

namespace oracle {

/// Composite Simpson over [0,1]^2 with n intervals per axis (n even).
inline double simpson2d(const std::function<double(double, double)>& f, int n) {
    const double h = 1.0 / n;
    const auto weight = [n](int i) { return i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0); };
    double total = 0.0;
    for (int i = 0; i <= n; ++i) {
        double row = 0.0;
        for (int j = 0; j <= n; ++j) row += weight(j) * f(i * h, j * h);
        total += weight(i) * row;
    }
    return total * h * h / 9.0;
}

/// Distance from an interior point c (same value on every axis) of the unit
/// square to the boundary along direction theta.
inline double square_exit_distance(double c, double ct, double st) {
    double r = 1e300;
    if (ct > 1e-15) r = std::min(r, (1.0 - c) / ct);
    if (ct < -1e-15) r = std::min(r, (0.0 - c) / ct);
    if (st > 1e-15) r = std::min(r, (1.0 - c) / st);
    if (st < -1e-15) r = std::min(r, (0.0 - c) / st);
    return r;
}

/// Integral of exp(-rate |x - (c, c)|) over the unit square: the full-plane
/// value minus the mass outside the square (angular Simpson).
inline double exp_peak_mass_2d(double c, double rate, int slices = 8192) {
    const double full = 2.0 * M_PI / (rate * rate);
    double outside = 0.0;
    const double h = 2.0 * M_PI / slices;
    for (int k = 0; k <= slices; ++k) {
        const double theta = k * h;
        const double w = (k == 0 || k == slices) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        const double r = square_exit_distance(c, std::cos(theta), std::sin(theta));
        outside += w * std::exp(-rate * r) * (r / rate + 1.0 / (rate * rate));
    }
    return full - outside * h / 3.0;
}

/// Same for the unit cube in three dimensions.
inline double exp_peak_mass_3d(double c, double rate, int slices = 768) {
    const double full = 8.0 * M_PI / (rate * rate * rate);
    double outside = 0.0;
    const double hu = 2.0 / slices;        // u = cos(polar)
    const double hp = 2.0 * M_PI / slices; // azimuth
    for (int i = 0; i <= slices; ++i) {
        const double u = -1.0 + i * hu;
        const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
        const double wu = (i == 0 || i == slices) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        double band = 0.0;
        for (int j = 0; j <= slices; ++j) {
            const double phi = j * hp;
            const double wp = (j == 0 || j == slices) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            const double dir[3] = {su * std::cos(phi), su * std::sin(phi), u};
            double r = 1e300;
            for (double component : dir) {
                if (component > 1e-15) r = std::min(r, (1.0 - c) / component);
                if (component < -1e-15) r = std::min(r, (0.0 - c) / component);
            }
            const double r2 = r * r;
            band += wp * std::exp(-rate * r) *
                    (r2 / rate + 2.0 * r / (rate * rate) + 2.0 / (rate * rate * rate));
        }
        outside += wu * band * hp / 3.0;
    }
    return full - outside * hu / 3.0;
}

/// Reference for the three-peak benchmark on [0,1]^d (d = 2 or 3).
inline double multipeak_reference(int d) {
    double total = 0.0;
    for (double c : {0.23, 0.39, 0.74})
        total += d == 2 ? exp_peak_mass_2d(c, 50.0) : exp_peak_mass_3d(c, 50.0);
    return total;
}

}  // namespace oracle
