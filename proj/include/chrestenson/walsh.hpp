#pragma once

// The Rademacher system of order a and the generalized Walsh (Chrestenson)
// system built from it, in Paley enumeration.
//
// phi_j equals omega^{x_{j+1}} on a cell whose (j+1)-th a-adic digit is
// x_{j+1}. psi_n is the product of Rademacher powers selected by the base-a
// digits of n, which collapses to a digit dot product modulo a; evaluation
// is exact integer arithmetic, complex values appear only at the boundary.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "chrestenson/radix.hpp"
#include "chrestenson/summation.hpp"

namespace chrestenson {

/// A power of omega_a. The represented complex number has modulus exactly 1.
struct ZaExponent {
    int e; // in [0, a)
    Order order;

    std::complex<double> value() const noexcept { return order.root(e); }
};

/// Exponent of phi_j on a cell: the (j+1)-th a-adic digit. Requires the cell
/// to be fine enough that phi_j is constant on it.
inline ZaExponent rademacher_exponent(int j, const AdicCell& cell) {
    if (j < 0) throw argument_error("rademacher index must be >= 0");
    if (j + 1 > cell.resolution())
        throw resolution_error("phi_j is not constant on cells coarser than resolution j+1");
    return {adic_digit(cell, j + 1), cell.order()};
}

/// Exponent of psi_n on a cell: sum of d_j(n) * x_{j+1} modulo a over the
/// base-a digits d_j of n. psi_0 has exponent 0 everywhere.
inline ZaExponent walsh_exponent(std::uint64_t n, const AdicCell& cell) {
    const auto a = static_cast<std::uint64_t>(cell.order().value());
    if (n >= checked_pow(cell.order(), cell.resolution()))
        throw resolution_error("psi_n is not constant on cells coarser than its top digit");
    int acc = 0;
    std::uint64_t rest = n;
    for (int j = 0; rest != 0; ++j, rest /= a) {
        const int d = static_cast<int>(rest % a);
        if (d != 0) acc = (acc + d * adic_digit(cell, j + 1)) % static_cast<int>(a);
    }
    return {acc, cell.order()};
}

/// A complex-valued function piecewise constant on the resolution-N grid;
/// values[m] is the value on cell (N, m), and the integral over [0,1) is the
/// arithmetic mean of values.
struct StepFunction {
    Order order;
    int resolution = 0;
    std::vector<std::complex<double>> values;
};

inline void validate_grid(const StepFunction& f) {
    if (f.values.size() != checked_pow(f.order, f.resolution))
        throw size_error("step function must carry exactly a^resolution values");
}

namespace detail {

/// Calls visit(m, e) for every cell m of the grid, where e is the exponent
/// of psi_n on that cell. Amortized O(1) per cell: a digit odometer tracks
/// the cell index, and rolling a digit over changes it by -(a-1) == +1
/// modulo a, the same correction as the increment itself.
template <typename Visit>
void for_each_walsh_exponent(std::uint64_t n, int resolution, const Order& order, Visit&& visit) {
    const int a = order.value();
    const std::uint64_t cells = checked_pow(order, resolution);
    if (n >= cells)
        throw resolution_error("psi_n is not constant on cells coarser than its top digit");

    // weight of cell-index digit i (place value a^i) is digit N-1-i of n
    std::vector<int> weight(static_cast<std::size_t>(resolution), 0);
    {
        std::uint64_t rest = n;
        for (int j = 0; rest != 0; ++j, rest /= static_cast<std::uint64_t>(a))
            weight[static_cast<std::size_t>(resolution - 1 - j)] = static_cast<int>(rest % static_cast<std::uint64_t>(a));
    }

    std::vector<int> digit(static_cast<std::size_t>(resolution), 0);
    int e = 0;
    for (std::uint64_t m = 0;;) {
        visit(m, e);
        if (++m == cells) break;
        for (std::size_t i = 0;; ++i) {
            e += weight[i];
            if (e >= a) e -= a;
            if (++digit[i] < a) break;
            digit[i] = 0;
        }
    }
}

} // namespace detail

/// psi_n sampled on the resolution-N grid. All values are roots of unity.
inline StepFunction sample_walsh(std::uint64_t n, int resolution, const Order& order) {
    StepFunction f{order, resolution, {}};
    f.values.resize(checked_pow(order, resolution));
    detail::for_each_walsh_exponent(n, resolution, order,
                                    [&](std::uint64_t m, int e) { f.values[m] = order.root(e); });
    return f;
}

/// The same function on a finer grid: each value repeated a^(N'-N) times.
inline StepFunction refine(const StepFunction& f, int resolution) {
    validate_grid(f);
    if (resolution < f.resolution)
        throw resolution_error("cannot refine to a coarser grid");
    const std::uint64_t factor = checked_pow(f.order, resolution - f.resolution);
    StepFunction g{f.order, resolution, {}};
    g.values.resize(checked_pow(f.order, resolution));
    for (std::uint64_t m = 0; m < f.values.size(); ++m)
        for (std::uint64_t t = 0; t < factor; ++t) g.values[m * factor + t] = f.values[m];
    return g;
}

/// Integral over [0,1): the mean of the cell values (exact for piecewise
/// constant functions, up to summation rounding).
inline std::complex<double> mean_integral(const StepFunction& f) {
    validate_grid(f);
    PairwiseSum re, im;
    for (const auto& v : f.values) {
        re.add(v.real());
        im.add(v.imag());
    }
    const auto cells = static_cast<double>(f.values.size());
    return {re.total() / cells, im.total() / cells};
}

} // namespace chrestenson
