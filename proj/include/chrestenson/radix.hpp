#pragma once

// Base-a digit arithmetic and the a-adic interval model.
//
// A cell (N, m) is the half-open interval [m/a^N, (m+1)/a^N). Everything in
// this library is piecewise constant on cells of sufficient resolution, so
// grids of cells are the only point sets ever touched; the right endpoint of
// [0,1) is never represented.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "chrestenson/errors.hpp"

namespace chrestenson {

inline constexpr int min_order = 2;
inline constexpr int max_order = 16;

// Cell indices and powers of a stay below 2^62 so that products with a
// single digit (< a <= 16) cannot wrap around 64 bits.
inline constexpr std::uint64_t integer_guard = std::uint64_t{1} << 62;

// Default cap on cells per grid, for operations that pick their own
// resolution.
inline constexpr std::uint64_t default_cell_cap = std::uint64_t{1} << 26;

/// The fixed order a >= 2 of the system, together with the a-th roots of
/// unity omega^e = exp(2*pi*i*e/a). All single-function evaluation is done
/// as integer exponents modulo a; these complex values enter only when a
/// grid is materialized.
class Order {
public:
    explicit Order(int a) : a_(a) {
        if (a < min_order || a > max_order)
            throw argument_error("order must satisfy 2 <= a <= 16");
        const int half = a / 2;
        for (int e = 0; e <= half; ++e)
            roots_[static_cast<std::size_t>(e)] = unit_root(e, a);
        // conjugate symmetry holds exactly, so sums over full orbits cancel
        for (int e = half + 1; e < a; ++e)
            roots_[static_cast<std::size_t>(e)] = std::conj(roots_[static_cast<std::size_t>(a - e)]);
    }

    int value() const noexcept { return a_; }

    /// omega^e for e in [0, a); exact on the axes and at the sixth roots.
    std::complex<double> root(int e) const noexcept {
        return roots_[static_cast<std::size_t>(e)];
    }

    friend bool operator==(const Order& l, const Order& r) noexcept { return l.a_ == r.a_; }
    friend bool operator!=(const Order& l, const Order& r) noexcept { return l.a_ != r.a_; }

private:
    static std::complex<double> unit_root(int e, int a) {
        if (e == 0) return {1.0, 0.0};
        if (2 * e == a) return {-1.0, 0.0};
        if (4 * e == a) return {0.0, 1.0};
        if (4 * e == 3 * a) return {0.0, -1.0};
        if (6 * e == a) return {0.5, sin_sixth()};
        if (3 * e == a) return {-0.5, sin_sixth()};
        if (3 * e == 2 * a) return {-0.5, -sin_sixth()};
        if (6 * e == 5 * a) return {0.5, -sin_sixth()};
        const double t = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(a);
        return {std::cos(t), std::sin(t)};
    }

    static double sin_sixth() { return std::sin(std::numbers::pi / 3.0); }

    int a_;
    std::array<std::complex<double>, max_order> roots_{};
};

/// a^e, rejecting results beyond the 2^62 integer guard.
inline std::uint64_t checked_pow(const Order& order, int exponent) {
    if (exponent < 0) throw argument_error("negative exponent");
    const auto a = static_cast<std::uint64_t>(order.value());
    std::uint64_t p = 1;
    for (int i = 0; i < exponent; ++i) {
        if (p > integer_guard / a)
            throw guard_error("power of the order exceeds the 2^62 integer guard");
        p *= a;
    }
    return p;
}

/// Largest r with a^r <= n. Requires n >= 1.
inline int floor_log(const Order& order, std::uint64_t n) {
    if (n == 0) throw argument_error("floor_log of zero");
    const auto a = static_cast<std::uint64_t>(order.value());
    int r = 0;
    while (n >= a) {
        n /= a;
        ++r;
    }
    return r;
}

/// Smallest N with a^N >= n.
inline int ceil_log(const Order& order, std::uint64_t n) {
    if (n == 0) throw argument_error("ceil_log of zero");
    if (n == 1) return 0;
    const int r = floor_log(order, n - 1);
    return r + 1;
}

/// Canonical little-endian base-a digits of a non-negative integer;
/// digits(0) is empty, and the leading digit is never zero.
struct DigitVector {
    std::vector<int> digits;
    Order order;
};

inline DigitVector digits(std::uint64_t n, const Order& order) {
    DigitVector d{{}, order};
    const auto a = static_cast<std::uint64_t>(order.value());
    while (n != 0) {
        d.digits.push_back(static_cast<int>(n % a));
        n /= a;
    }
    return d;
}

/// Sum of digits[j] * a^j; the inverse of digits().
inline std::uint64_t digit_value(const DigitVector& d) {
    const auto a = static_cast<std::uint64_t>(d.order.value());
    std::uint64_t n = 0;
    for (std::size_t j = d.digits.size(); j-- > 0;) {
        if (n > (integer_guard - static_cast<std::uint64_t>(d.digits[j])) / a)
            throw guard_error("digit vector value exceeds the integer guard");
        n = n * a + static_cast<std::uint64_t>(d.digits[j]);
    }
    return n;
}

/// The half-open interval I_{N,m} = [m/a^N, (m+1)/a^N).
class AdicCell {
public:
    AdicCell(int resolution, std::uint64_t index, Order order)
        : resolution_(resolution), index_(index), order_(order) {
        if (resolution < 0) throw argument_error("cell resolution must be >= 0");
        if (index >= checked_pow(order, resolution))
            throw argument_error("cell index out of range for this resolution");
    }

    int resolution() const noexcept { return resolution_; }
    std::uint64_t index() const noexcept { return index_; }
    const Order& order() const noexcept { return order_; }

private:
    int resolution_;
    std::uint64_t index_;
    Order order_;
};

/// x_s, the s-th a-adic digit (1-based, most significant first) common to
/// every point of the cell: each point expands as 0.x_1 x_2 ... x_N ...
inline int adic_digit(const AdicCell& cell, int s) {
    if (s < 1 || s > cell.resolution())
        throw argument_error("adic digit position out of range");
    const auto a = static_cast<std::uint64_t>(cell.order().value());
    std::uint64_t q = cell.index();
    for (int p = 0; p < cell.resolution() - s; ++p) q /= a;
    return static_cast<int>(q % a);
}

/// All digits x_1..x_N of the cell, most significant first. Equals the
/// base-a digits of the index, zero-padded to length N and reversed.
inline std::vector<int> adic_digits(const AdicCell& cell) {
    std::vector<int> x(static_cast<std::size_t>(cell.resolution()));
    const auto a = static_cast<std::uint64_t>(cell.order().value());
    std::uint64_t q = cell.index();
    for (std::size_t s = x.size(); s-- > 0;) {
        // filled least significant position first: x[N-1], x[N-2], ...
        x[s] = static_cast<int>(q % a);
        q /= a;
    }
    return x;
}

} // namespace chrestenson
