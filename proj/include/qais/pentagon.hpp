#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace qais {

/**
 * One-loop scalar pentagon kinematics: four independent external
 * four-momenta (E, px, py, pz) and five internal masses. The fifth external
 * momentum is fixed by momentum conservation.
 */
struct PentagonKinematics {
    std::array<std::array<double, 4>, 4> p{};  // p1..p4
    std::array<double, 5> m{};                 // m1..m5

    /// Buchta-style P11 configuration (equal masses 5.01213).
    static PentagonKinematics p11();

    /// All momenta zero, all masses `mass` (closed-form reference case).
    static PentagonKinematics zero_momentum(double mass);

    /// Reads fields p1..p4 (four reals each) and m1..m5.
    static PentagonKinematics load(const std::string& path);
};

namespace detail {

/// Truncated complex power series in the offset around a pole cluster.
template <typename R, int MaxLen = 5>
struct PoleSeries {
    std::array<std::complex<R>, MaxLen> c{};
    int len = 1;

    static PoleSeries one(int len) {
        PoleSeries s;
        s.len = len;
        s.c[0] = std::complex<R>(1);
        return s;
    }

    /// Multiply by 1 / (w + t): coefficients (1/w) (-1/w)^k.
    void divide_linear(std::complex<R> w) {
        std::array<std::complex<R>, MaxLen> inv{};
        const std::complex<R> w_inv = std::complex<R>(1) / w;
        std::complex<R> factor = w_inv;
        for (int k = 0; k < len; ++k) {
            inv[static_cast<std::size_t>(k)] = factor;
            factor *= -w_inv;
        }
        std::array<std::complex<R>, MaxLen> out{};
        for (int i = 0; i < len; ++i)
            for (int j = 0; i + j < len; ++j)
                out[static_cast<std::size_t>(i + j)] +=
                    c[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(j)];
        c = out;
    }
};

/**
 * Pole-sum core of the loop-energy integral, templated on the real type so
 * tests can run it in extended precision. For the loop three-momentum lvec,
 * sums the residues of prod_i 1/(q_i^2 - m_i^2) over the poles closed in
 * the lower half plane, with repeated poles grouped and evaluated through a
 * truncated series expansion. Kahan-compensated accumulation.
 */
template <typename R>
class PentagonCore {
public:
    explicit PentagonCore(const PentagonKinematics& kin) {
        // k_i = sum_{j<=i} p_j, k_5 = 0 by momentum conservation.
        std::array<R, 4> acc{};
        for (int i = 0; i < 4; ++i) {
            for (int c = 0; c < 4; ++c) acc[static_cast<std::size_t>(c)] += static_cast<R>(kin.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
            k_[static_cast<std::size_t>(i)] = acc;
        }
        k_[4] = {R(0), R(0), R(0), R(0)};
        for (int i = 0; i < 5; ++i) mass_[static_cast<std::size_t>(i)] = static_cast<R>(kin.m[static_cast<std::size_t>(i)]);
    }

    std::complex<R> residue_sum(const std::array<R, 3>& lvec) const {
        std::array<R, 5> energy;    // on-shell energies sqrt(|l + k_i|^2 + m_i^2)
        std::array<R, 5> pole;      // lower-half-plane pole positions in l_0
        std::array<R, 5> mirror;    // matching upper poles
        for (int i = 0; i < 5; ++i) {
            const std::size_t s = static_cast<std::size_t>(i);
            R norm2 = mass_[s] * mass_[s];
            for (int c = 0; c < 3; ++c) {
                const R v = lvec[static_cast<std::size_t>(c)] + k_[s][static_cast<std::size_t>(c + 1)];
                norm2 += v * v;
            }
            energy[s] = std::sqrt(norm2);
            pole[s] = energy[s] - k_[s][0];
            mirror[s] = -energy[s] - k_[s][0];
        }

        R scale = R(1);
        for (int i = 0; i < 5; ++i) scale = std::max(scale, std::abs(pole[static_cast<std::size_t>(i)]));
        const R tol = scale * static_cast<R>(1e-12);

        std::complex<R> sum{};
        std::complex<R> carry{};
        bool used[5] = {false, false, false, false, false};
        for (int i = 0; i < 5; ++i) {
            if (used[i]) continue;
            int cluster[5] = {0, 0, 0, 0, 0};
            int g = 0;
            for (int j = i; j < 5; ++j) {
                if (!used[j] && std::abs(pole[static_cast<std::size_t>(j)] - pole[static_cast<std::size_t>(i)]) <= tol) {
                    cluster[g++] = j;
                    used[j] = true;
                }
            }
            const R z0 = pole[static_cast<std::size_t>(cluster[0])];
            detail::PoleSeries<R> series = detail::PoleSeries<R>::one(g);
            for (int c = 0; c < g; ++c)
                series.divide_linear(std::complex<R>(z0 - mirror[static_cast<std::size_t>(cluster[c])]));
            for (int j = 0; j < 5; ++j) {
                bool in_cluster = false;
                for (int c = 0; c < g; ++c) in_cluster = in_cluster || cluster[c] == j;
                if (in_cluster) continue;
                series.divide_linear(std::complex<R>(z0 - pole[static_cast<std::size_t>(j)]));
                series.divide_linear(std::complex<R>(z0 - mirror[static_cast<std::size_t>(j)]));
            }
            // Kahan step on the cluster residue.
            const std::complex<R> term = series.c[static_cast<std::size_t>(g - 1)] - carry;
            const std::complex<R> next = sum + term;
            carry = (next - sum) - term;
            sum = next;
        }
        return sum;
    }

    /**
     * Integrand over the unit cube: |l| = z/(1-z), cos(theta) from the second
     * coordinate, phi from the third; the 1/(2pi)^3 measure, the |l|^2
     * Jacobian and the overall sign of the energy integration are folded in.
     */
    std::complex<R> unit_cube_value(R z, R u, R phi) const {
        const R one = R(1);
        const R z_cap = one - static_cast<R>(1e-12);
        if (z > z_cap) z = z_cap;
        if (z < R(0)) z = R(0);
        if (u > one) u = one;
        if (u < -one) u = -one;

        const R radius = z / (one - z);
        const R sin_theta = std::sqrt(std::max(R(0), one - u * u));
        const std::array<R, 3> lvec{radius * sin_theta * std::cos(phi),
                                    radius * sin_theta * std::sin(phi), radius * u};
        const R pi = static_cast<R>(3.14159265358979323846264338327950288L);
        const R measure = radius * radius / ((one - z) * (one - z)) * R(2) * (R(2) * pi) /
                          (R(8) * pi * pi * pi);
        return -measure * residue_sum(lvec);
    }

private:
    std::array<std::array<R, 4>, 5> k_;
    std::array<R, 5> mass_;
};

}  // namespace detail

}  // namespace qais
