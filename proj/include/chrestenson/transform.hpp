#pragma once

// Forward and inverse spectral transform for the generalized Walsh system on
// resolution-N grids.
//
// The transform matrix is the N-fold Kronecker power of the a-point DFT
// matrix composed with a digit-reversal permutation of the cell index, so
// the fast path is N stages of radix-a butterflies whose twiddles are just
// the a-th roots of unity. The forward direction carries the 1/a^N factor
// (coefficients are integrals); the inverse carries none.

#include <complex>
#include <cstdint>
#include <vector>

#include "chrestenson/walsh.hpp"

namespace chrestenson {

/// Coefficients c_n = integral of f * conj(psi_n) over [0,1), n = 0..L-1.
struct Spectrum {
    Order order;
    std::vector<std::complex<double>> coefficients;
};

namespace detail {

inline std::uint64_t digit_reverse(std::uint64_t m, int resolution, int a) {
    std::uint64_t r = 0;
    const auto base = static_cast<std::uint64_t>(a);
    for (int i = 0; i < resolution; ++i) {
        r = r * base + m % base;
        m /= base;
    }
    return r;
}

/// In-place digit-reversal permutation (an involution: swap index pairs).
inline void permute_digit_reversal(std::vector<std::complex<double>>& v, int resolution, int a) {
    for (std::uint64_t m = 0; m < v.size(); ++m) {
        const std::uint64_t r = digit_reverse(m, resolution, a);
        if (r > m) std::swap(v[m], v[r]);
    }
}

/// N stages of radix-a butterflies applying the a-point kernel
/// omega^{+-e*d} along every digit axis. Loop order is fixed, so the
/// floating-point combination order is identical on every run.
inline void butterfly_stages(std::vector<std::complex<double>>& buf, const Order& order,
                             bool conjugate_kernel) {
    const int a = order.value();
    std::array<std::complex<double>, max_order * max_order> kernel{};
    for (int e = 0; e < a; ++e)
        for (int d = 0; d < a; ++d) {
            const auto w = order.root((e * d) % a);
            kernel[static_cast<std::size_t>(e * a + d)] = conjugate_kernel ? std::conj(w) : w;
        }

    const std::uint64_t total = buf.size();
    std::array<std::complex<double>, max_order> lane{};
    for (std::uint64_t stride = 1; stride < total; stride *= static_cast<std::uint64_t>(a)) {
        const std::uint64_t block = stride * static_cast<std::uint64_t>(a);
        for (std::uint64_t base = 0; base < total; base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                auto* p = buf.data() + base + off;
                for (int d = 0; d < a; ++d) lane[static_cast<std::size_t>(d)] = p[stride * static_cast<std::uint64_t>(d)];
                for (int e = 0; e < a; ++e) {
                    std::complex<double> acc = lane[0]; // kernel[e][0] == 1
                    const auto* row = kernel.data() + e * a;
                    for (int d = 1; d < a; ++d) acc += row[d] * lane[static_cast<std::size_t>(d)];
                    p[stride * static_cast<std::uint64_t>(e)] = acc;
                }
            }
        }
    }
}

} // namespace detail

/// Fast analysis: coefficients[n] = (1/a^N) sum_m f[m] * conj(psi_n on m)
/// for every n < a^N, in natural (Paley) order.
inline Spectrum forward(const StepFunction& f) {
    validate_grid(f);
    Spectrum s{f.order, f.values};
    detail::permute_digit_reversal(s.coefficients, f.resolution, f.order.value());
    detail::butterfly_stages(s.coefficients, f.order, /*conjugate_kernel=*/true);
    const double scale = 1.0 / static_cast<double>(s.coefficients.size());
    for (auto& c : s.coefficients) c *= scale;
    return s;
}

/// Exact synthesis of a finite expansion: values[m] = sum_n c_n * (psi_n on
/// cell m). The spectrum may be shorter than the grid; it is zero-padded.
inline StepFunction inverse(const Spectrum& s, int resolution) {
    const std::uint64_t cells = checked_pow(s.order, resolution);
    if (s.coefficients.size() > cells)
        throw resolution_error("spectrum is longer than the synthesis grid");
    StepFunction f{s.order, resolution, s.coefficients};
    f.values.resize(cells);
    detail::butterfly_stages(f.values, s.order, /*conjugate_kernel=*/false);
    detail::permute_digit_reversal(f.values, resolution, s.order.value());
    return f;
}

namespace detail {

/// Kahan-compensated accumulator; error stays O(eps * sum|x|) regardless of
/// the term count, which keeps the quadratic oracle at least as accurate as
/// the fast path it checks.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) noexcept {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

} // namespace detail

/// The literal quadratic double sum, kept as the correctness oracle for the
/// fast path. Cells are visited in ascending order for each n; the exponent
/// of psi_n is tracked by the same digit odometer the sampler uses.
inline Spectrum naive_forward(const StepFunction& f) {
    validate_grid(f);
    Spectrum s{f.order, {}};
    s.coefficients.resize(f.values.size());
    std::array<std::complex<double>, max_order> conj_root{};
    for (int e = 0; e < f.order.value(); ++e)
        conj_root[static_cast<std::size_t>(e)] = std::conj(f.order.root(e));
    const double scale = 1.0 / static_cast<double>(f.values.size());
    for (std::uint64_t n = 0; n < s.coefficients.size(); ++n) {
        detail::CompensatedSum re, im;
        detail::for_each_walsh_exponent(n, f.resolution, f.order, [&](std::uint64_t m, int e) {
            const auto term = f.values[m] * conj_root[static_cast<std::size_t>(e)];
            re.add(term.real());
            im.add(term.imag());
        });
        s.coefficients[n] = std::complex<double>{re.sum, im.sum} * scale;
    }
    return s;
}

} // namespace chrestenson
