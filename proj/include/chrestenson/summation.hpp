#pragma once

// Fixed-tree pairwise summation. Partial sums merge in the binary-counter
// pattern of the element index, so the reduction tree depends only on how
// many elements were pushed, never on chunking or scheduling; results are
// bit-reproducible run to run and the rounding error grows like
// eps * log2(count) * sum|x| instead of eps * count * sum|x|.

#include <array>
#include <bit>
#include <cstdint>
#include <limits>

namespace chrestenson {

class PairwiseSum {
public:
    void add(double x) noexcept {
        std::uint64_t c = count_++;
        std::size_t level = 0;
        while (c & 1) {
            x += levels_[level];
            c >>= 1;
            ++level;
        }
        levels_[level] = x;
    }

    /// Combine the pending partials, lowest level first.
    double total() const noexcept {
        double t = 0.0;
        std::uint64_t c = count_;
        for (std::size_t level = 0; c != 0; ++level, c >>= 1)
            if (c & 1) t += levels_[level];
        return t;
    }

    std::uint64_t count() const noexcept { return count_; }

private:
    std::array<double, 64> levels_{};
    std::uint64_t count_ = 0;
};

/// First-order bound on the rounding error of a pairwise sum of `count`
/// terms whose absolute values add to `abs_sum`.
inline double summation_error_bound(std::uint64_t count, double abs_sum) noexcept {
    if (count < 2) return 0.0;
    const int depth = std::bit_width(count - 1);
    return std::numeric_limits<double>::epsilon() * static_cast<double>(depth + 1) * abs_sum;
}

} // namespace chrestenson
