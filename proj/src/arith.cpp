#include <regulus/arith.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace regulus::arith {

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    if (n < 4)
        return true;
    if (n % 2 == 0 || n % 3 == 0)
        return false;
    for (std::int64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0)
            return false;
    }
    return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n)
{
    if (n < 1)
        throw std::invalid_argument("factorize: argument must be positive");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0)
            out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n)
{
    std::vector<std::int64_t> out;
    for (auto [p, e] : factorize(n))
        out.push_back(p);
    return out;
}

std::vector<std::int64_t> divisors(std::int64_t n)
{
    std::vector<std::int64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        const std::size_t existing = out.size();
        std::int64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < existing; ++j)
                out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

std::optional<std::uint64_t> inverse_mod(std::int64_t a, std::uint64_t m)
{
    __int128 r0 = m, r1 = reduce(a, m);
    __int128 s0 = 0, s1 = 1;
    while (r1 != 0) {
        const __int128 q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1)
        return std::nullopt;
    s0 %= static_cast<__int128>(m);
    if (s0 < 0)
        s0 += m;
    return static_cast<std::uint64_t>(s0);
}

int kronecker(std::int64_t a, std::int64_t n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    // factor out powers of two from the bottom entry
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos > 0) {
        if (a % 2 == 0)
            return 0;
        const std::int64_t a8 = ((a % 8) + 8) % 8;
        if ((twos & 1) && (a8 == 3 || a8 == 5))
            result = -result;
    }
    // n is now odd and positive: Jacobi symbol
    std::int64_t x = a % n;
    if (x < 0)
        x += n;
    std::int64_t y = n;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            const std::int64_t y8 = y % 8;
            if (y8 == 3 || y8 == 5)
                result = -result;
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3)
            result = -result;
        x %= y;
    }
    return y == 1 ? result : 0;
}

std::int64_t ipow(std::int64_t base, unsigned exp)
{
    std::int64_t r = 1;
    while (exp-- > 0)
        r *= base;
    return r;
}

} // namespace regulus::arith
