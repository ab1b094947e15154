#pragma once

// The explicit L^1 function whose greedy approximants do not converge.
//
// Coefficients come in blocks: C_i = 1/k^2 + 2^-i for a^{(k-1)^2} <= i <
// a^{k^2}. They decrease strictly, so greedy selection walks the indices in
// order, and the L^1 distance between the approximants at a^{(k-1)^2} + m_k
// and at a^{(k-1)^2} terms is the norm of one explicit block of m_k terms.
// With m_k = n_{(k-1)^2} from the kernel growth sequence that norm stays
// above 1/(4a) minus a dyadic crumb, while the function itself stays in L^1.
//
// For i beyond a few hundred, 1/k^2 + 2^-i rounds to 1/k^2 in double
// precision; ordering therefore uses exact (block, index) keys, and the
// dyadic tail is dropped from synthesized values once it falls below the
// smallest positive double (tracked symbolically in reported bounds).

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "chrestenson/greedy.hpp"
#include "chrestenson/kernels.hpp"

namespace chrestenson {

// 2^-i underflows even the subnormal range past here; the value() of such a
// coefficient is its block part alone.
inline constexpr std::uint64_t dyadic_tail_cutoff = 1060;

/// Exact identity of one coefficient: block k and index i with
/// a^{(k-1)^2} <= i < a^{k^2}. Represents the value 1/k^2 + 2^-i.
struct CoefficientKey {
    int block = 0;       // k >= 1
    std::uint64_t index = 0; // i >= 1
    Order order;

    double value() const noexcept {
        const double head = 1.0 / (static_cast<double>(block) * static_cast<double>(block));
        if (index > dyadic_tail_cutoff) return head;
        return head + std::ldexp(1.0, -static_cast<int>(index));
    }
};

/// Strict "represents a larger coefficient" order: earlier block wins, then
/// the smaller index. Agrees with comparing the exact values 1/k^2 + 2^-i.
inline bool coefficient_greater(const CoefficientKey& l, const CoefficientKey& r) {
    if (l.block != r.block) return l.block < r.block;
    return l.index < r.index;
}

/// Finds the block of index i >= 1.
inline CoefficientKey coefficient(std::uint64_t i, const Order& order) {
    if (i == 0) throw argument_error("coefficient indices start at 1");
    int k = 1;
    std::uint64_t lo = 1; // a^{(k-1)^2}
    for (;;) {
        // a^{k^2} can exceed the integer guard while i (< 2^62) stays below
        // it; treat an overflowing upper fence as +infinity
        std::uint64_t hi = 0;
        bool hi_overflows = false;
        try {
            hi = checked_pow(order, k * k);
        } catch (const guard_error&) {
            hi_overflows = true;
        }
        if (hi_overflows || i < hi) {
            if (i >= lo) return {k, i, order};
            throw argument_error("coefficient index below its block start");
        }
        lo = hi;
        ++k;
    }
}

/// All coefficients C_i for 1 <= i < a^{K^2}, as a spectrum (index 0 holds
/// zero; the expansion starts at i = 1).
inline Spectrum partial_spectrum(int blocks, const Order& order,
                                 std::uint64_t cell_cap = default_cell_cap) {
    if (blocks < 1) throw argument_error("need at least one block");
    const std::uint64_t length = checked_pow(order, blocks * blocks);
    if (length > cell_cap) throw guard_error("partial spectrum exceeds the cell cap");
    Spectrum s{order, {}};
    s.coefficients.assign(length, {0.0, 0.0});
    int k = 1;
    std::uint64_t next_block = checked_pow(order, 1); // a^{k^2} with k = 1
    for (std::uint64_t i = 1; i < length; ++i) {
        while (i >= next_block) {
            ++k;
            next_block = checked_pow(order, k * k);
        }
        s.coefficients[i] = CoefficientKey{k, i, order}.value();
    }
    return s;
}

/// Norms of the two halves of the construction, truncated to K blocks, with
/// the bounds they must stay under:
///   g = sum (1/k^2)(D_{a^{k^2}} - D_{a^{(k-1)^2}})   <= 2 sum 1/k^2,
///   h = sum 2^-j psi_j                               <= 1,
///   f = g + h                                        <= pi^2/3 + 1.
struct DecompositionNorms {
    Order order;
    int blocks = 0;
    int resolution = 0;
    double g_norm = 0.0;
    double g_bound = 0.0;
    double h_norm = 0.0;
    double h_bound = 1.0;
    double f_norm = 0.0;
    double f_bound = 0.0;
    bool pass = false;
};

inline DecompositionNorms decomposition_norms(int blocks, const Order& order,
                                              std::uint64_t cell_cap = default_cell_cap) {
    if (blocks < 1) throw argument_error("need at least one block");
    const int resolution = blocks * blocks;
    const std::uint64_t cells = checked_pow(order, resolution);
    if (cells > cell_cap) throw guard_error("decomposition grid exceeds the cell cap");

    DecompositionNorms out{order};
    out.blocks = blocks;
    out.resolution = resolution;

    // g is a real staircase supported near 0: each D_{a^r} contributes a^r
    // on the first a^{N-r} cells
    {
        std::vector<double> g(cells, 0.0);
        for (int k = 1; k <= blocks; ++k) {
            const double w = 1.0 / (static_cast<double>(k) * static_cast<double>(k));
            const std::uint64_t hi = checked_pow(order, k * k);
            const std::uint64_t lo = checked_pow(order, (k - 1) * (k - 1));
            for (std::uint64_t m = 0; m < cells / hi; ++m) g[m] += w * static_cast<double>(hi);
            for (std::uint64_t m = 0; m < cells / lo; ++m) g[m] -= w * static_cast<double>(lo);
        }
        PairwiseSum acc;
        for (const double v : g) acc.add(std::abs(v));
        out.g_norm = acc.total() / static_cast<double>(cells);
        double bound = 0.0;
        for (int k = blocks; k >= 1; --k) bound += 2.0 / (static_cast<double>(k) * static_cast<double>(k));
        out.g_bound = bound;
    }

    // h: dyadic coefficients synthesized through the fast transform
    {
        Spectrum h{order, {}};
        h.coefficients.assign(cells, {0.0, 0.0});
        for (std::uint64_t j = 1; j < cells; ++j)
            h.coefficients[j] = j <= dyadic_tail_cutoff ? std::ldexp(1.0, -static_cast<int>(j)) : 0.0;
        out.h_norm = l1_norm(inverse(h, resolution));
    }

    out.f_norm = l1_norm(inverse(partial_spectrum(blocks, order, cell_cap), resolution));
    out.f_bound = std::numbers::pi * std::numbers::pi / 3.0 + 1.0;

    const double slack = 1e-10;
    out.pass = out.g_norm <= out.g_bound + slack && out.h_norm <= out.h_bound + slack &&
               out.f_norm <= out.f_bound + slack;
    return out;
}

/// Divergence measurement for one block k >= 2: the L^1 norm of
/// sum_{i = s}^{s + m_k - 1} C_i psi_i with s = a^{(k-1)^2} and
/// m_k = n_{(k-1)^2}, checked against the kernel bound
/// (1/k^2) L_{m_k} - 2^{1-s} and, for k >= 4, against 1/(4a) - 2^{1-s}.
struct GapReport {
    Order order;
    int k = 0;
    std::uint64_t block_start = 0; // a^{(k-1)^2}
    std::uint64_t m_k = 0;         // n_{(k-1)^2}
    int resolution = 0;
    double gap = 0.0;
    double lebesgue_m = 0.0;        // L_{m_k}
    std::int64_t j2_bound_log2 = 0; // exact exponent: 1 - block_start
    double j2_bound = 0.0;          // ldexp(1, log2); 0 once it underflows
    double dirichlet_bound = 0.0;   // lebesgue_m / k^2 - j2_bound
    double final_bound = 0.0;       // 1/(4a) - j2_bound
    double sum_err = 0.0;
    bool block_in_range = false; // block_start + m_k < a^{k^2}
    bool m_k_in_range = false;   // a^{(k-1)^2} <= m_k < a^{(k-1)^2 + 1}
    bool gap_ge_dirichlet = false;
    bool final_applicable = false; // the 1/(4a) bound kicks in at k >= 4
    bool gap_ge_final = false;
    bool scalar_bound_ok = false; // 2 (k-1)^2 >= k^2 for k >= 4
    bool pass = false;
};

inline GapReport block_gap(int k, const Order& order,
                           std::uint64_t cell_cap = default_cell_cap,
                           double bound_scale = 1.0) {
    if (k < 2) throw argument_error("block gaps are defined for k >= 2");
    const int a = order.value();
    const int r = (k - 1) * (k - 1);

    GapReport report{order};
    report.k = k;
    report.block_start = checked_pow(order, r);
    report.m_k = lemma_sequence(r, order)[static_cast<std::size_t>(r)];
    const std::uint64_t last = report.block_start + report.m_k - 1;
    report.resolution = ceil_log(order, last + 1);
    const std::uint64_t cells = checked_pow(order, report.resolution);
    if (cells > cell_cap) throw guard_error("block grid exceeds the cell cap");

    // a^{k^2} may overflow the guard; the containment check is then trivial
    try {
        report.block_in_range = last + 1 < checked_pow(order, k * k);
    } catch (const guard_error&) {
        report.block_in_range = true;
    }
    report.m_k_in_range =
        report.block_start <= report.m_k && report.m_k < report.block_start * static_cast<std::uint64_t>(a);

    Spectrum block{order, {}};
    block.coefficients.assign(last + 1, {0.0, 0.0});
    double coeff_abs_sum = 0.0;
    for (std::uint64_t i = report.block_start; i <= last; ++i) {
        const double c = CoefficientKey{k, i, order}.value();
        block.coefficients[i] = c;
        coeff_abs_sum += c;
    }
    report.gap = l1_norm(inverse(block, report.resolution));

    report.lebesgue_m = lebesgue_constant(report.m_k, order, cell_cap);
    report.j2_bound_log2 = 1 - static_cast<std::int64_t>(report.block_start);
    report.j2_bound = report.j2_bound_log2 >= std::numeric_limits<double>::min_exponent - 53
                          ? std::ldexp(1.0, static_cast<int>(report.j2_bound_log2))
                          : 0.0;
    report.dirichlet_bound =
        bound_scale *
        (report.lebesgue_m / (static_cast<double>(k) * static_cast<double>(k)) - report.j2_bound);
    report.final_bound = bound_scale * (1.0 / (4.0 * static_cast<double>(a)) - report.j2_bound);

    // coarse rounding allowance: synthesis plus the L1 reduction
    const double eps = std::numeric_limits<double>::epsilon();
    report.sum_err = eps * static_cast<double>(a * report.resolution + 8) * coeff_abs_sum +
                     summation_error_bound(cells, report.gap * static_cast<double>(cells)) /
                         static_cast<double>(cells);

    report.gap_ge_dirichlet = report.gap >= report.dirichlet_bound - report.sum_err;
    report.final_applicable = k >= 4;
    report.scalar_bound_ok =
        !report.final_applicable ||
        2 * static_cast<std::uint64_t>(k - 1) * static_cast<std::uint64_t>(k - 1) >=
            static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k);
    report.gap_ge_final =
        !report.final_applicable || report.gap >= report.final_bound - report.sum_err;

    report.pass = report.block_in_range && report.m_k_in_range && report.gap_ge_dirichlet &&
                  report.gap_ge_final && report.scalar_bound_ok;
    return report;
}

} // namespace chrestenson
