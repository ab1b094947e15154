#pragma once

// Greedy m-term selection and thresholding sums: pick the m coefficients of
// largest magnitude, synthesize exactly those terms, and measure L^1 gaps
// between approximants of different term counts.
//
// Comparison is pluggable. Generic spectra compare |c|; callers whose
// coefficients are too close for doubles to separate (the counterexample
// construction, where 1/k^2 + 2^-i rounds to 1/k^2 long before the blocks
// end) supply exact comparison keys instead.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "chrestenson/transform.hpp"

namespace chrestenson {

/// An index set of cardinality m whose coefficients dominate, in magnitude,
/// every coefficient outside the set. Indices are kept ascending.
struct GreedySelection {
    std::vector<std::uint64_t> indices;

    std::size_t size() const noexcept { return indices.size(); }
    bool contains(std::uint64_t i) const {
        return std::binary_search(indices.begin(), indices.end(), i);
    }
};

/// Selects m entries with the largest keys under `greater`, breaking exact
/// ties toward the smaller index. Deterministic and invariant under
/// permutations of the input list.
template <typename Key, typename Greater>
GreedySelection greedy_select_keyed(std::vector<std::pair<std::uint64_t, Key>> entries,
                                    std::size_t m, Greater greater) {
    if (m > entries.size()) throw argument_error("greedy term count exceeds the coefficient count");
    std::sort(entries.begin(), entries.end(), [&](const auto& l, const auto& r) {
        if (greater(l.second, r.second)) return true;
        if (greater(r.second, l.second)) return false;
        return l.first < r.first;
    });
    GreedySelection sel;
    sel.indices.reserve(m);
    for (std::size_t i = 0; i < m; ++i) sel.indices.push_back(entries[i].first);
    std::sort(sel.indices.begin(), sel.indices.end());
    return sel;
}

/// Magnitude-based selection on a spectrum; ties go to the smaller index.
inline GreedySelection greedy_select(const Spectrum& s, std::size_t m) {
    std::vector<std::pair<std::uint64_t, double>> entries;
    entries.reserve(s.coefficients.size());
    for (std::uint64_t i = 0; i < s.coefficients.size(); ++i)
        entries.emplace_back(i, std::abs(s.coefficients[i]));
    return greedy_select_keyed(std::move(entries), m,
                               [](double l, double r) { return l > r; });
}

/// S_Lambda: synthesis of exactly the selected terms on the resolution-N
/// grid. With a greedy selection this is the m-th greedy approximant G_m.
inline StepFunction thresholding_sum(const Spectrum& s, const GreedySelection& sel,
                                     int resolution) {
    const std::uint64_t cells = checked_pow(s.order, resolution);
    Spectrum masked{s.order, {}};
    masked.coefficients.assign(s.coefficients.size(), {0.0, 0.0});
    for (const auto i : sel.indices) {
        if (i >= s.coefficients.size()) throw argument_error("selected index outside the spectrum");
        if (i >= cells) throw resolution_error("selected term is not constant on this grid");
        masked.coefficients[i] = s.coefficients[i];
    }
    if (masked.coefficients.size() > cells) masked.coefficients.resize(cells);
    return inverse(masked, resolution);
}

/// L^1 norm on the grid: mean of |values| under fixed-tree summation.
inline double l1_norm(const StepFunction& f) {
    validate_grid(f);
    PairwiseSum acc;
    for (const auto& v : f.values) acc.add(std::abs(v));
    return acc.total() / static_cast<double>(f.values.size());
}

/// L^1 distance between the M-term and m-term greedy approximants. For a
/// spectrum with strictly decreasing magnitudes this is the norm of the
/// block of terms ranked m+1..M.
inline double approximant_gap(const Spectrum& s, std::size_t m, std::size_t M, int resolution) {
    if (m > M) throw argument_error("approximant gap needs m <= M");
    const auto coarse = thresholding_sum(s, greedy_select(s, m), resolution);
    const auto fine = thresholding_sum(s, greedy_select(s, M), resolution);
    StepFunction diff{s.order, resolution, fine.values};
    for (std::uint64_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= coarse.values[i];
    return l1_norm(diff);
}

} // namespace chrestenson
