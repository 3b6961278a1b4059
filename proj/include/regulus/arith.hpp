#pragma once

// Small exact integer helpers shared by every module. All inputs are
// machine integers; anything that can overflow goes through __int128.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace regulus::arith {

bool is_prime(std::int64_t n);

/// Prime factorization of n >= 1 as (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

std::vector<std::int64_t> prime_divisors(std::int64_t n);

/// All positive divisors of n >= 1, sorted.
std::vector<std::int64_t> divisors(std::int64_t n);

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Reduce a signed value into [0, m).
inline std::uint64_t reduce(std::int64_t v, std::uint64_t m)
{
    __int128 r = static_cast<__int128>(v) % static_cast<__int128>(m);
    if (r < 0)
        r += m;
    return static_cast<std::uint64_t>(r);
}

/// Inverse of a modulo m (m >= 2), or nullopt when gcd(a, m) != 1.
std::optional<std::uint64_t> inverse_mod(std::int64_t a, std::uint64_t m);

/// Kronecker symbol (a / n) with the usual extensions at n = 2, n = -1 and n = 0.
int kronecker(std::int64_t a, std::int64_t n);

std::int64_t ipow(std::int64_t base, unsigned exp);

} // namespace regulus::arith
