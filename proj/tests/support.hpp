#pragma once

// Independent reference computations for tests: naive products and
// enumerations that share no code with the library.

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include <regulus/series.hpp>

namespace testing_support {

/// prod_{j >= 1} (1 - q^{jk}) expanded by schoolbook multiplication.
inline std::vector<mpz_class> naive_eta(std::int64_t k, std::size_t T)
{
    std::vector<mpz_class> c(T + 1, 0);
    c[0] = 1;
    for (std::size_t step = static_cast<std::size_t>(k); step <= T; step += static_cast<std::size_t>(k))
        for (std::size_t n = T; n >= step; --n)
            c[n] -= c[n - step];
    return c;
}

/// Generalized pentagonal numbers k(3k-1)/2, k in Z, up to T, ascending.
inline std::vector<std::size_t> pentagonal_numbers(std::size_t T)
{
    std::vector<std::size_t> out{0};
    for (std::int64_t k = 1;; ++k) {
        const auto a = static_cast<std::size_t>(k * (3 * k - 1) / 2);
        const auto b = static_cast<std::size_t>(k * (3 * k + 1) / 2);
        if (a > T)
            break;
        out.push_back(a);
        if (b <= T)
            out.push_back(b);
    }
    return out;
}

/// Number of partitions of n into parts not divisible by t, by recursion
/// over the largest part (exponential; small n only).
inline std::uint64_t brute_regular(std::int64_t t, std::int64_t n, std::int64_t largest)
{
    if (n == 0)
        return 1;
    std::uint64_t total = 0;
    for (std::int64_t part = std::min(n, largest); part >= 1; --part)
        if (t == 0 || part % t != 0)
            total += brute_regular(t, n - part, part);
    return total;
}

/// b_t(n) mod 2 for n <= N, by a knapsack over the allowed parts.
inline std::vector<std::uint8_t> regular_parity(std::int64_t t, std::size_t N)
{
    std::vector<std::uint8_t> c(N + 1, 0);
    c[0] = 1;
    for (std::size_t part = 1; part <= N; ++part) {
        if (part % static_cast<std::size_t>(t) == 0)
            continue;
        for (std::size_t n = part; n <= N; ++n)
            c[n] ^= c[n - part];
    }
    return c;
}

inline regulus::QSeries series_of(regulus::Modulus m, const std::vector<mpz_class>& c)
{
    return regulus::QSeries::from_integers(m, c);
}

inline regulus::QSeries random_series(std::mt19937_64& rng, regulus::Modulus m, std::size_t T, bool unit_constant)
{
    std::uniform_int_distribution<long> d(-20, 20);
    std::vector<mpz_class> c(T + 1);
    for (auto& x : c)
        x = d(rng);
    if (unit_constant)
        c[0] = (rng() & 1) ? 1 : -1;
    return regulus::QSeries::from_integers(m, c);
}

} // namespace testing_support
