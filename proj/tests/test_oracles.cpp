#include <doctest.h>

#include <regulus/oracles.hpp>
#include <regulus/series.hpp>

#include <random>
#include <sstream>

#include "support.hpp"

using namespace regulus;
using namespace regulus::oracles;
using testing_support::brute_regular;

TEST_CASE("partition_count")
{
    const auto p = partition_count(2000 * 5 + 4);
    CHECK(p[0] == 1);
    CHECK(p[4] == 5);
    CHECK(p[100] == mpz_class("190569292"));
    for (std::size_t n = 1; n + 1 <= p.upper; ++n)
        CHECK(p[n] < p[n + 1]);
    for (std::size_t n = 0; n <= 2000; ++n)
        CHECK(p[5 * n + 4] % 5 == 0);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const std::int64_t n = static_cast<std::int64_t>(rng() % 41);
        CHECK(p[n] == brute_regular(0, n, n));
    }
}

TEST_CASE("partition residues match exact values")
{
    const auto p = partition_count(600);
    for (std::uint64_t m : {2u, 3u, 7u, 1000000007u}) {
        const auto r = partition_residues(600, m);
        for (std::size_t n = 0; n <= 600; ++n)
            CHECK(mpz_class(p[n] % m) == r[n]);
    }
}

TEST_CASE("t_regular_count")
{
    for (std::int64_t t = 2; t <= 12; ++t)
        CHECK(t_regular_count(t, 0) == 1);
    CHECK(t_regular_count(2, 3) == 2);
    const auto p = partition_count(7);
    CHECK(t_regular_count(9, 7) == p[7]);
    for (std::int64_t t = 2; t <= 6; ++t)
        for (std::int64_t n = 0; n <= 25; ++n)
            CHECK(t_regular_count(t, n) == brute_regular(t, n, n));
}

TEST_CASE("pentagonal formula")
{
    const auto p = partition_count(500);
    const auto b6 = t_regular_table(6, 300);
    for (std::size_t n = 0; n <= 300; ++n)
        CHECK(t_regular_pentagonal(6, n, p) == b6[n]);
    for (std::size_t n = 0; n < 9; ++n)
        CHECK(t_regular_pentagonal(9, n, p) == p[n]);

    const QSeries q = ps_mul(euler_series(9, 500, 0), ps_inv(euler_series(1, 500, 0)));
    CHECK(t_regular_pentagonal(9, 500, p) == q.coeff(500));
    CHECK_THROWS(t_regular_pentagonal(9, 501, p));
}

TEST_CASE("triple equivalence, t = 2..12, n <= 500")
{
    const std::size_t N = 500;
    const auto p = partition_count(N);
    const QSeries inv = ps_inv(euler_series(1, N, 0));
    for (std::int64_t t = 2; t <= 12; ++t) {
        const auto dp = t_regular_table(t, N);
        const QSeries gen = ps_mul(euler_series(t, N, 0), inv);
        std::size_t disagreements = 0;
        for (std::size_t n = 0; n <= N; ++n)
            if (dp[n] != t_regular_pentagonal(t, n, p) || dp[n] != gen.coeff(n))
                ++disagreements;
        CHECK_MESSAGE(disagreements == 0, "t = " << t);
    }
}

TEST_CASE("delta_pk")
{
    CHECK(delta_pk(5, 1) == 4);
    CHECK(delta_pk(5, 2) == 24);
    CHECK(delta_pk(7, 1) == 5);
    CHECK(delta_pk(11, 1) == 6);
    for (std::int64_t p : {5, 7, 11, 13})
        for (unsigned k = 1; k <= 3; ++k) {
            const auto d = delta_pk(p, k);
            const auto pk = static_cast<std::uint64_t>(std::pow(p, k));
            CHECK(d > 0);
            CHECK(d < pk);
            CHECK((24 * d) % pk == 1);
        }
    CHECK_THROWS(delta_pk(2, 1));
    CHECK_THROWS(delta_pk(3, 2));
}

TEST_CASE("Ramanujan families")
{
    const auto c51 = check_ramanujan_family({5, 1, 1}, 1000);
    CHECK(c51.verified());
    const auto c71 = check_ramanujan_family({7, 1, 2}, 500);
    CHECK(c71.verified());
    CHECK(RamanujanFamily{7, 1, 2}.modulus() == 7);
    CHECK(RamanujanFamily{7, 3, 1}.modulus() == 49);
    const auto c52 = check_ramanujan_family({5, 2, 1}, 200);
    CHECK(c52.verified());
    CHECK(RamanujanFamily{5, 2, 1}.residue() == 24);
    CHECK(RamanujanFamily{5, 2, 1}.modulus() == 25);

    CHECK(check_ramanujan_family({7, 2, 1}, 300).verified());

    // off the progression the residues are not all zero
    const auto p = partition_residues(50, 5);
    CHECK(t_regular_pentagonal_mod(5, 3, p, 5) != 0);
}

TEST_CASE("general lift from p(5n+4) to b_{5t}(5n+4)")
{
    const std::size_t X = 200;
    const auto p = partition_count(5 * X + 4);
    for (std::size_t n = 0; n <= X; ++n)
        REQUIRE(p[5 * n + 4] % 5 == 0);
    for (std::int64_t t = 1; t <= 6; ++t) {
        const auto b = t_regular_table(5 * t, 5 * X + 4);
        for (std::size_t n = 0; n <= X; ++n)
            CHECK(b[5 * n + 4] % 5 == 0);
    }
}

TEST_CASE("csv dump")
{
    std::ostringstream out;
    write_csv(out, 3, 4);
    CHECK(out.str() == "n,p_mod_1e9,b_t_mod_1e9\n0,1,1\n1,1,1\n2,2,2\n3,3,2\n4,5,4\n");
}
