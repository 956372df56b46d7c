#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace qais {

/**
 * Sobol low-discrepancy sequence in up to 8 dimensions, with an optional
 * modulo-1 shift (randomized QMC). Gray-code construction over 32-bit
 * direction numbers; the unshifted sequence starts (0,...,0), (0.5,...,0.5).
 */
class SobolStream {
public:
    static constexpr int kMaxDim = 8;

    /// Unshifted stream.
    explicit SobolStream(int dim);

    /// Stream with per-axis modulo-1 shift derived from (seed, stream_index).
    SobolStream(int dim, std::uint64_t seed, std::uint64_t stream_index);

    int dim() const { return dim_; }

    /// Next point of the (shifted) sequence in [0,1)^d, written to `out`.
    void next(double* out);

    /// Skip the next `count` points.
    void skip(std::uint64_t count);

private:
    int dim_;
    std::uint64_t index_ = 0;               // points generated so far
    std::vector<std::uint32_t> state_;      // current Gray-code word per axis
    std::vector<std::uint32_t> directions_; // [axis][bit], flattened
    std::vector<double> shift_;
};

/**
 * First m points of the given stream, affinely mapped into an axis-aligned
 * box. Returned flattened, point-major (m * d doubles).
 */
std::vector<double> sobol_points(const std::vector<std::pair<double, double>>& box,
                                 std::uint64_t m, SobolStream& stream);

}  // namespace qais
