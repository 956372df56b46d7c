#pragma once

// Brute-force dense-matrix circuit simulator used as an independent oracle
// for the strided statevector kernels. Builds every gate as a full
// 2^n x 2^n matrix from explicit Pauli algebra and multiplies it out.

#include <complex>
#include <cstdint>
#include <vector>

#include "qais/statevector.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat2 = std::array<std::array<C, 2>, 2>;

inline Mat2 pauli(qais::PauliAxis axis) {
    switch (axis) {
        case qais::PauliAxis::X: return {{{C(0), C(1)}, {C(1), C(0)}}};
        case qais::PauliAxis::Y: return {{{C(0), C(0, -1)}, {C(0, 1), C(0)}}};
        default: return {{{C(1), C(0)}, {C(0), C(-1)}}};
    }
}

inline Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    Mat2 out{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            for (int k = 0; k < 2; ++k) out[r][c] += a[r][k] * b[k][c];
    return out;
}

/// exp(-i theta sigma_i sigma_j) as a full matrix: cos * I - i sin * (s_i s_j).
inline std::vector<std::vector<C>> two_qubit_gate_matrix(int n, qais::PauliAxis axis, int i, int j,
                                                         double theta) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    const Mat2 s = pauli(axis);
    std::vector<std::vector<C>> m(dim, std::vector<C>(dim, C(0)));
    const C cos_part(std::cos(theta), 0.0);
    const C sin_part(0.0, -std::sin(theta));
    for (std::uint64_t col = 0; col < dim; ++col) {
        const int bi = static_cast<int>((col >> i) & 1);
        const int bj = static_cast<int>((col >> j) & 1);
        m[col][col] += cos_part;
        for (int ri = 0; ri < 2; ++ri)
            for (int rj = 0; rj < 2; ++rj) {
                const C element = s[ri][bi] * s[rj][bj];
                if (element == C(0)) continue;
                std::uint64_t row = col;
                row = (row & ~(std::uint64_t{1} << i)) | (static_cast<std::uint64_t>(ri) << i);
                row = (row & ~(std::uint64_t{1} << j)) | (static_cast<std::uint64_t>(rj) << j);
                m[row][col] += sin_part * element;
            }
    }
    return m;
}

/// Rz(beta) Ry(alpha) Rz(gamma) embedded on qubit l.
inline std::vector<std::vector<C>> u3_gate_matrix(int n, int l, double alpha, double beta,
                                                  double gamma) {
    const auto rz = [](double t) {
        return Mat2{{{std::polar(1.0, -t), C(0)}, {C(0), std::polar(1.0, t)}}};
    };
    const Mat2 ry{{{C(std::cos(alpha)), C(-std::sin(alpha))}, {C(std::sin(alpha)), C(std::cos(alpha))}}};
    const Mat2 g = mat2_mul(rz(beta), mat2_mul(ry, rz(gamma)));

    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<std::vector<C>> m(dim, std::vector<C>(dim, C(0)));
    for (std::uint64_t col = 0; col < dim; ++col) {
        const int bl = static_cast<int>((col >> l) & 1);
        for (int rl = 0; rl < 2; ++rl) {
            if (g[rl][bl] == C(0)) continue;
            std::uint64_t row = (col & ~(std::uint64_t{1} << l)) | (static_cast<std::uint64_t>(rl) << l);
            m[row][col] += g[rl][bl];
        }
    }
    return m;
}

inline std::vector<C> apply_matrix(const std::vector<std::vector<C>>& m, const std::vector<C>& v) {
    std::vector<C> out(v.size(), C(0));
    for (std::size_t r = 0; r < v.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
    return out;
}

/// Full dense run of an ansatz: uniform start, every gate as a dense matrix.
inline std::vector<C> run_dense(const qais::AnsatzSpec& spec, int n,
                                const std::vector<double>& params) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<C> state(dim, C(std::pow(2.0, -0.5 * n), 0.0));
    std::size_t p = 0;
    for (const auto& layer : spec.layers) {
        if (layer.kind == qais::LayerSpec::Kind::Entangler) {
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    state = apply_matrix(two_qubit_gate_matrix(n, layer.axis, i, j, params[p++]), state);
        } else {
            for (int l = 0; l < n; ++l) {
                const double gamma = params[p++];
                const double alpha = params[p++];
                const double beta = params[p++];
                state = apply_matrix(u3_gate_matrix(n, l, alpha, beta, gamma), state);
            }
        }
    }
    return state;
}

}  // namespace oracle
