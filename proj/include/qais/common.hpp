#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qais {

// splitmix64 step; used to derive independent sub-seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic (seed, tag) -> sub-seed derivation.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (tag + 1));
    std::uint64_t z = splitmix64(s);
    return splitmix64(s) ^ z;
}

/// Map a 64-bit word to a double in [0, 1) using the top 53 bits.
inline double u64_to_unit_double(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/**
 * Streaming pairwise summation with a fixed reduction tree.
 *
 * The reduction order depends only on the order values are added, never on
 * chunking, so results are bit-stable and the accumulated rounding error
 * grows like O(log N) instead of O(N).
 */
class PairwiseSum {
public:
    void add(double x) {
        std::uint64_t c = count_ + 1;
        int level = 0;
        while ((c & 1ull) == 0) {
            x += partial_[level];
            partial_[level] = 0.0;
            ++level;
            c >>= 1;
        }
        partial_[level] = x;
        ++count_;
    }

    double total() const {
        double s = 0.0;
        for (int level = 0; level < 64; ++level) {
            if ((count_ >> level) & 1ull) s += partial_[level];
        }
        return s;
    }

    std::uint64_t count() const { return count_; }

private:
    std::array<double, 64> partial_{};
    std::uint64_t count_ = 0;
};

[[noreturn]] inline void fail_invalid(const std::string& what) {
    throw std::invalid_argument(what);
}

}  // namespace qais
