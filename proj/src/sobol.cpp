#include "qais/sobol.hpp"

#include <bit>
#include <cmath>

#include "qais/common.hpp"

namespace qais {
namespace {

constexpr int kBits = 32;

// Joe-Kuo direction-number table (new-joe-kuo-6) for dimensions 2..8:
// primitive-polynomial degree s, encoded coefficients a, initial m values.
struct JoeKuoRow {
    int s;
    std::uint32_t a;
    std::uint32_t m[5];
};

constexpr JoeKuoRow kJoeKuo[] = {
    {1, 0, {1, 0, 0, 0, 0}},   // dim 2
    {2, 1, {1, 3, 0, 0, 0}},   // dim 3
    {3, 1, {1, 3, 1, 0, 0}},   // dim 4
    {3, 2, {1, 1, 1, 0, 0}},   // dim 5
    {4, 1, {1, 1, 3, 3, 0}},   // dim 6
    {4, 4, {1, 3, 5, 13, 0}},  // dim 7
    {5, 2, {1, 1, 5, 5, 17}},  // dim 8
};

void fill_directions(int axis, std::uint32_t* v) {
    if (axis == 0) {
        // First dimension: van der Corput, m_k = 1.
        for (int k = 0; k < kBits; ++k) v[k] = 1u << (kBits - 1 - k);
        return;
    }
    const JoeKuoRow& row = kJoeKuo[axis - 1];
    const int s = row.s;
    for (int k = 0; k < s; ++k) v[k] = row.m[k] << (kBits - 1 - k);
    for (int k = s; k < kBits; ++k) {
        std::uint32_t value = v[k - s] ^ (v[k - s] >> s);
        for (int i = 1; i < s; ++i) {
            if ((row.a >> (s - 1 - i)) & 1u) value ^= v[k - i];
        }
        v[k] = value;
    }
}

}  // namespace

SobolStream::SobolStream(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim)
        fail_invalid("SobolStream: dimension " + std::to_string(dim) +
                     " outside the direction-number table (1.." + std::to_string(kMaxDim) + ")");
    state_.assign(static_cast<std::size_t>(dim), 0u);
    shift_.assign(static_cast<std::size_t>(dim), 0.0);
    directions_.resize(static_cast<std::size_t>(dim) * kBits);
    for (int axis = 0; axis < dim; ++axis)
        fill_directions(axis, directions_.data() + static_cast<std::size_t>(axis) * kBits);
}

SobolStream::SobolStream(int dim, std::uint64_t seed, std::uint64_t stream_index)
    : SobolStream(dim) {
    std::uint64_t s = mix_seed(seed, stream_index);
    for (int axis = 0; axis < dim; ++axis) shift_[static_cast<std::size_t>(axis)] = u64_to_unit_double(splitmix64(s));
}

void SobolStream::next(double* out) {
    if (index_ > 0) {
        const int bit = std::countr_zero(index_);
        for (int axis = 0; axis < dim_; ++axis)
            state_[static_cast<std::size_t>(axis)] ^= directions_[static_cast<std::size_t>(axis) * kBits + bit];
    }
    ++index_;
    for (int axis = 0; axis < dim_; ++axis) {
        const std::size_t a = static_cast<std::size_t>(axis);
        double u = static_cast<double>(state_[a]) * 0x1.0p-32 + shift_[a];
        if (u >= 1.0) u -= 1.0;
        out[axis] = u;
    }
}

void SobolStream::skip(std::uint64_t count) {
    double scratch[kMaxDim];
    for (std::uint64_t i = 0; i < count; ++i) next(scratch);
}

std::vector<double> sobol_points(const std::vector<std::pair<double, double>>& box,
                                 std::uint64_t m, SobolStream& stream) {
    const int d = stream.dim();
    if (box.size() != static_cast<std::size_t>(d)) fail_invalid("sobol_points: box dimension mismatch");
    if (m < 1) fail_invalid("sobol_points: need at least one point");
    std::vector<double> pts(m * static_cast<std::size_t>(d));
    double unit[SobolStream::kMaxDim];
    for (std::uint64_t i = 0; i < m; ++i) {
        stream.next(unit);
        for (int axis = 0; axis < d; ++axis) {
            const auto& [lo, hi] = box[static_cast<std::size_t>(axis)];
            pts[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(axis)] = lo + unit[axis] * (hi - lo);
        }
    }
    return pts;
}

}  // namespace qais
