#include <catch2/catch_amalgamated.hpp>

#include <chrestenson/transform.hpp>

#include "support/oracles.hpp"

using namespace chrestenson;

namespace {

StepFunction make_step(const Order& order, int resolution,
                       std::vector<std::complex<double>> values) {
    return StepFunction{order, resolution, std::move(values)};
}

} // namespace

TEST_CASE("constant function transforms to a single spike") {
    for (const int a : {2, 3, 5}) {
        const Order order(a);
        const auto f = make_step(order, 2, std::vector<std::complex<double>>(
                                               checked_pow(order, 2), {1.0, 0.0}));
        const auto s = forward(f);
        CHECK(std::abs(s.coefficients[0] - 1.0) < 1e-14);
        for (std::size_t n = 1; n < s.coefficients.size(); ++n)
            CHECK(std::abs(s.coefficients[n]) < 1e-14);
    }
}

TEST_CASE("system functions transform to unit vectors") {
    for (const auto& [a, N] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 1}}) {
        const Order order(a);
        for (std::uint64_t n = 0; n < checked_pow(order, N); ++n) {
            const auto s = forward(sample_walsh(n, N, order));
            for (std::uint64_t j = 0; j < s.coefficients.size(); ++j)
                CHECK(std::abs(s.coefficients[j] - (j == n ? 1.0 : 0.0)) < 1e-13);
        }
    }
}

TEST_CASE("synthesis of unit vectors gives the system functions") {
    const Order a3(3);
    Spectrum spike{a3, std::vector<std::complex<double>>(7, {0.0, 0.0})};
    spike.coefficients[6] = 1.0;
    const auto f = inverse(spike, 2);
    const auto psi = sample_walsh(6, 2, a3);
    for (std::uint64_t m = 0; m < f.values.size(); ++m)
        CHECK(std::abs(f.values[m] - psi.values[m]) < 1e-14);

    Spectrum constant{a3, {{1.0, 0.0}}};
    for (const auto& v : inverse(constant, 2).values) CHECK(std::abs(v - 1.0) < 1e-15);
}

TEST_CASE("frozen synthesis example") {
    // hand synthesis of (1/2) psi_1 + (3/8) psi_2 at order 2, cross-checked
    // by the brute-force grid oracle
    const Order a2(2);
    const Spectrum s{a2, {{0.0, 0.0}, {0.5, 0.0}, {0.375, 0.0}}};
    const auto f = inverse(s, 2);
    const std::vector<std::complex<double>> frozen{
        {0.875, 0.0}, {0.125, 0.0}, {-0.125, 0.0}, {-0.875, 0.0}};
    const auto brute = oracles::brute_synthesis(s, 2);
    for (std::uint64_t m = 0; m < 4; ++m) {
        CHECK(std::abs(f.values[m] - frozen[m]) < 1e-15);
        CHECK(std::abs(brute[m] - frozen[m]) < 1e-15);
    }

    // the same coefficients placed at indices 2,3 give the two-term block
    // whose values the thresholding tests freeze
    const Spectrum shifted{a2, {{0.0, 0.0}, {0.0, 0.0}, {0.5, 0.0}, {0.375, 0.0}}};
    const std::vector<std::complex<double>> frozen_block{
        {0.875, 0.0}, {-0.875, 0.0}, {0.125, 0.0}, {-0.125, 0.0}};
    const auto g = inverse(shifted, 2);
    const auto brute2 = oracles::brute_synthesis(shifted, 2);
    for (std::uint64_t m = 0; m < 4; ++m) {
        CHECK(std::abs(g.values[m] - frozen_block[m]) < 1e-15);
        CHECK(std::abs(brute2[m] - frozen_block[m]) < 1e-15);
    }
}

TEST_CASE("round trip, Parseval and the naive oracle on random data") {
    std::uint64_t seed = 99;
    for (const auto& [a, N] : std::vector<std::pair<int, int>>{{2, 6}, {3, 4}, {5, 3}}) {
        const Order order(a);
        const std::uint64_t size = checked_pow(order, N);
        for (int trial = 0; trial < 10; ++trial) {
            const auto f = make_step(order, N, oracles::random_values(seed++, size));
            const auto fast = forward(f);
            const auto naive = naive_forward(f);
            CHECK(oracles::relative_l2_error(fast.coefficients, naive.coefficients) < 1e-12);

            const auto back = inverse(fast, N);
            CHECK(oracles::relative_l2_error(back.values, f.values) < 1e-12);

            double coeff_energy = 0.0, value_energy = 0.0;
            for (const auto& c : fast.coefficients) coeff_energy += std::norm(c);
            for (const auto& v : f.values) value_energy += std::norm(v);
            CHECK(std::abs(coeff_energy - value_energy / static_cast<double>(size)) < 1e-10);
        }
    }
}

TEST_CASE("linearity of the forward transform") {
    const Order a3(3);
    const int N = 3;
    const std::uint64_t size = checked_pow(a3, N);
    const auto f = make_step(a3, N, oracles::random_values(1, size));
    const auto g = make_step(a3, N, oracles::random_values(2, size));
    const std::complex<double> alpha{0.7, -0.3}, beta{-1.1, 0.2};
    StepFunction combo{a3, N, {}};
    combo.values.resize(size);
    for (std::uint64_t m = 0; m < size; ++m)
        combo.values[m] = alpha * f.values[m] + beta * g.values[m];
    const auto sf = forward(f), sg = forward(g), sc = forward(combo);
    for (std::uint64_t n = 0; n < size; ++n)
        CHECK(std::abs(sc.coefficients[n] - (alpha * sf.coefficients[n] + beta * sg.coefficients[n])) <
              1e-12);
}

TEST_CASE("transform size and resolution errors") {
    const Order a2(2);
    CHECK_THROWS_AS(forward(make_step(a2, 2, std::vector<std::complex<double>>(6, {0, 0}))),
                    size_error);
    CHECK_THROWS_AS(forward(make_step(a2, 3, std::vector<std::complex<double>>(4, {0, 0}))),
                    size_error);
    Spectrum long_spec{a2, std::vector<std::complex<double>>(9, {0, 0})};
    CHECK_THROWS_AS(inverse(long_spec, 3), resolution_error);
    CHECK_NOTHROW(inverse(long_spec, 4));
}
