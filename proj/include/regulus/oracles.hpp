#pragma once

// Ground-truth partition counts, computed without the series module:
// p(n) from the pentagonal recurrence, b_t(n) by dynamic programming and
// by the alternating pentagonal sum over p(n).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace regulus::oracles {

struct PartitionTable {
    std::size_t upper = 0;
    std::vector<mpz_class> values; // p(0..upper)

    const mpz_class& operator[](std::size_t n) const { return values.at(n); }
};

/// Exact p(0..N) by Euler's pentagonal recurrence.
PartitionTable partition_count(std::size_t N);

/// p(0..N) mod m, same recurrence in machine words.
std::vector<std::uint64_t> partition_residues(std::size_t N, std::uint64_t m);

/// Exact b_t(0..N): one rolling array over the allowed part sizes, in increasing order.
std::vector<mpz_class> t_regular_table(std::int64_t t, std::size_t N);

mpz_class t_regular_count(std::int64_t t, std::size_t n);

/// b_t(n) = sum over generalized pentagonal g of (-1)^u p(n - t g); table must reach n.
mpz_class t_regular_pentagonal(std::int64_t t, std::size_t n, const PartitionTable& table);

/// The same alternating sum over a residue table p(.) mod m.
std::uint64_t t_regular_pentagonal_mod(std::int64_t t, std::size_t n, const std::vector<std::uint64_t>& p_mod,
                                       std::uint64_t m);

/// The unique 0 < delta < p^k with 24 delta = 1 (mod p^k). Throws for p in {2, 3}.
std::uint64_t delta_pk(std::int64_t p, unsigned k);

/// b_{p^k t}(p^k n + delta_{p,k}) = 0 mod m(p, k), p in {5, 7, 11}.
struct RamanujanFamily {
    std::int64_t prime;
    unsigned power;
    std::int64_t multiplier;

    std::uint64_t step() const;    ///< p^k
    std::uint64_t modulus() const; ///< 5^k, 7^{floor(k/2)+1}, 11^k
    std::uint64_t residue() const; ///< delta_{p,k}
    std::int64_t regularity() const { return static_cast<std::int64_t>(step()) * multiplier; }
};

struct RamanujanCheck {
    RamanujanFamily family;
    std::size_t checked_upto = 0;
    std::optional<std::size_t> first_violation;
    std::uint64_t violating_residue = 0;

    bool verified() const { return !first_violation; }
};

RamanujanCheck check_ramanujan_family(const RamanujanFamily& family, std::size_t X);

/// CSV rows `n,p_mod_1e9,b_t_mod_1e9` for n = 0..N.
void write_csv(std::ostream& out, std::int64_t t, std::size_t N);

} // namespace regulus::oracles
