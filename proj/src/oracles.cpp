#include <regulus/oracles.hpp>

#include <regulus/arith.hpp>

#include <ostream>
#include <stdexcept>

namespace regulus::oracles {

namespace {

// Generalized pentagonal numbers in the order g_1, g_{-1}, g_2, g_{-2}, ...
// paired with the sign (-1)^u, scaled by t, stopping past `limit`.
template <typename F>
void for_each_pentagonal(std::int64_t t, std::size_t limit, F&& f)
{
    for (std::int64_t u = 1;; ++u) {
        const std::size_t g1 = static_cast<std::size_t>(t * u * (3 * u - 1) / 2);
        if (g1 > limit)
            break;
        const int sign = (u % 2 == 0) ? 1 : -1;
        f(g1, sign);
        const std::size_t g2 = static_cast<std::size_t>(t * u * (3 * u + 1) / 2);
        if (g2 <= limit)
            f(g2, sign);
    }
}

} // namespace

PartitionTable partition_count(std::size_t N)
{
    PartitionTable table;
    table.upper = N;
    table.values.assign(N + 1, 0);
    table.values[0] = 1;
    for (std::size_t n = 1; n <= N; ++n) {
        mpz_class& acc = table.values[n];
        for_each_pentagonal(1, n, [&](std::size_t g, int sign) {
            // p(n) = sum_{u >= 1} (-1)^{u+1} p(n - g)
            if (sign < 0)
                acc += table.values[n - g];
            else
                acc -= table.values[n - g];
        });
    }
    return table;
}

std::vector<std::uint64_t> partition_residues(std::size_t N, std::uint64_t m)
{
    if (m < 2)
        throw std::invalid_argument("partition_residues: modulus must be at least 2");
    std::vector<std::uint64_t> p(N + 1, 0);
    p[0] = 1 % m;
    for (std::size_t n = 1; n <= N; ++n) {
        std::uint64_t acc = 0;
        for_each_pentagonal(1, n, [&](std::size_t g, int sign) {
            const std::uint64_t v = p[n - g];
            acc = sign < 0 ? (acc + v) % m : (acc + m - v) % m;
        });
        p[n] = acc;
    }
    return p;
}

std::vector<mpz_class> t_regular_table(std::int64_t t, std::size_t N)
{
    if (t < 2)
        throw std::invalid_argument("t_regular_table: t must be at least 2");
    std::vector<mpz_class> a(N + 1, 0);
    a[0] = 1;
    for (std::size_t part = 1; part <= N; ++part) {
        if (part % static_cast<std::size_t>(t) == 0)
            continue;
        for (std::size_t n = part; n <= N; ++n)
            a[n] += a[n - part];
    }
    return a;
}

mpz_class t_regular_count(std::int64_t t, std::size_t n) { return t_regular_table(t, n)[n]; }

mpz_class t_regular_pentagonal(std::int64_t t, std::size_t n, const PartitionTable& table)
{
    if (t < 2)
        throw std::invalid_argument("t_regular_pentagonal: t must be at least 2");
    if (n > table.upper)
        throw std::out_of_range("t_regular_pentagonal: partition table only reaches " + std::to_string(table.upper));
    mpz_class acc = table.values[n];
    for_each_pentagonal(t, n, [&](std::size_t g, int sign) {
        if (sign < 0)
            acc -= table.values[n - g];
        else
            acc += table.values[n - g];
    });
    return acc;
}

std::uint64_t t_regular_pentagonal_mod(std::int64_t t, std::size_t n, const std::vector<std::uint64_t>& p_mod,
                                       std::uint64_t m)
{
    if (n >= p_mod.size())
        throw std::out_of_range("t_regular_pentagonal_mod: residue table too short");
    std::uint64_t acc = p_mod[n];
    for_each_pentagonal(t, n, [&](std::size_t g, int sign) {
        const std::uint64_t v = p_mod[n - g];
        acc = sign < 0 ? (acc + m - v) % m : (acc + v) % m;
    });
    return acc;
}

std::uint64_t delta_pk(std::int64_t p, unsigned k)
{
    if (p == 2 || p == 3)
        throw std::invalid_argument("delta_pk: 24 is not invertible modulo a power of 2 or 3");
    if (!arith::is_prime(p) || k == 0)
        throw std::invalid_argument("delta_pk: needs a prime p and k >= 1");
    const auto modulus = static_cast<std::uint64_t>(arith::ipow(p, k));
    return *arith::inverse_mod(24, modulus);
}

std::uint64_t RamanujanFamily::step() const { return static_cast<std::uint64_t>(arith::ipow(prime, power)); }

std::uint64_t RamanujanFamily::modulus() const
{
    switch (prime) {
    case 5:
    case 11:
        return step();
    case 7:
        return static_cast<std::uint64_t>(arith::ipow(7, power / 2 + 1));
    default:
        throw std::invalid_argument("RamanujanFamily: prime must be 5, 7 or 11");
    }
}

std::uint64_t RamanujanFamily::residue() const { return delta_pk(prime, power); }

RamanujanCheck check_ramanujan_family(const RamanujanFamily& family, std::size_t X)
{
    if (family.power < 1 || family.multiplier < 1)
        throw std::invalid_argument("check_ramanujan_family: k and t must be positive");
    const std::uint64_t m = family.modulus();
    const std::uint64_t a = family.step();
    const std::uint64_t b = family.residue();
    const std::int64_t t = family.regularity();

    const auto p_mod = partition_residues(a * X + b, m);
    RamanujanCheck check{family, X, std::nullopt, 0};
    for (std::size_t n = 0; n <= X; ++n) {
        const std::uint64_t v = t_regular_pentagonal_mod(t, a * n + b, p_mod, m);
        if (v != 0) {
            check.first_violation = n;
            check.violating_residue = v;
            break;
        }
    }
    return check;
}

void write_csv(std::ostream& out, std::int64_t t, std::size_t N)
{
    const PartitionTable p = partition_count(N);
    const std::vector<mpz_class> b = t_regular_table(t, N);
    const mpz_class billion = 1000000000;
    out << "n,p_mod_1e9,b_t_mod_1e9\n";
    for (std::size_t n = 0; n <= N; ++n) {
        const mpz_class pm = p[n] % billion;
        const mpz_class bm = b[n] % billion;
        out << n << ',' << pm.get_str() << ',' << bm.get_str() << '\n';
    }
}

} // namespace regulus::oracles
