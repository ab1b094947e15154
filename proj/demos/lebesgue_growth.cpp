// Small usage example: tabulate Lebesgue constants along the growth sequence
// n_k and show the logarithmic lower bound they stay above.

#include <cstdio>

#include <chrestenson/kernels.hpp>

int main() {
    for (const int a : {2, 3}) {
        const chrestenson::Order order(a);
        std::printf("order a = %d\n", a);
        std::printf("%4s %10s %12s %14s\n", "k", "n_k", "L_{n_k}", "(k/2+1)/a");
        const auto report = chrestenson::verify_lemma(10, order);
        for (const auto& row : report.rows)
            std::printf("%4d %10llu %12.6f %14.6f\n", row.k,
                        static_cast<unsigned long long>(row.n_k), row.lebesgue, row.bound_growth);
        std::printf("\n");
    }
    return 0;
}
