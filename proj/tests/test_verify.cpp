#include <doctest.h>

#include <regulus/oracles.hpp>
#include <regulus/verify.hpp>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "support.hpp"

using namespace regulus;
using testing_support::regular_parity;

namespace {

const DepthPolicy deep = DepthPolicy::full();

} // namespace

TEST_CASE("self-similarity parameters")
{
    using V = SelfSimilarityParams::Variant;
    auto p53 = selfsim_params(53, V::b9);
    CHECK(p53.alpha == 35);
    CHECK(p53.beta == 35);
    auto p73 = selfsim_params(73, V::b9);
    CHECK(p73.alpha == 97);
    CHECK(p73.beta == 48);
    CHECK(selfsim_params(71, V::b9).alpha == 47);
    CHECK(selfsim_params(89, V::b9).beta == 59);
    // alpha is -1/3 mod 2p
    for (std::int64_t p : {53, 71, 73, 89, 107, 109})
        CHECK((3 * selfsim_params(p, V::b9).alpha + 1) % (2 * p) == 0);

    auto q11 = selfsim_params(11, V::b19);
    CHECK(q11.alpha == 1);
    CHECK(q11.beta == 4);
    CHECK(q11.left_offset() == 2);
    CHECK(q11.right_offset() == 0);
    CHECK(selfsim_params(5, V::b19).alpha == 4);
    CHECK(selfsim_params(5, V::b19).beta == 1);
    CHECK(selfsim_params(7, V::b19).alpha == 4);
    CHECK(selfsim_params(7, V::b19).beta == 2);

    CHECK_THROWS_AS(selfsim_params(9, V::b9), UsageError);
    CHECK_THROWS_AS(selfsim_params(3, V::b9), UsageError);
}

TEST_CASE("thm1 refuses primes outside +-1 mod 9")
{
    CHECK_THROWS_AS(verify_thm1(59, deep), UsageError);
    CHECK_THROWS_AS(verify_thm1(23, deep), UsageError);
    CHECK_THROWS_AS(verify_thm1(91, deep), UsageError);
}

TEST_CASE("b9 self-similarity agrees with a parity knapsack")
{
    const std::size_t N = 20000;
    const auto b9 = regular_parity(9, N);
    for (std::int64_t p : {53, 73}) {
        const auto sp = selfsim_params(p, SelfSimilarityParams::Variant::b9);
        const auto P = static_cast<std::size_t>(p);
        const std::size_t top = (N - static_cast<std::size_t>(sp.alpha)) / (2 * P);
        for (std::size_t n = 0; n <= top; ++n) {
            const unsigned left = b9[2 * P * n + static_cast<std::size_t>(sp.alpha)];
            unsigned right = 0;
            const auto beta = static_cast<std::size_t>(sp.beta);
            if (n >= beta && (n - beta) % P == 0)
                right = b9[2 * ((n - beta) / P) + 1];
            CHECK(left == right);
        }
    }
}

TEST_CASE("thm1 drivers at p = 53 and p = 73")
{
    const Verdict v = verify_thm1(53, deep);
    CHECK(v.status == Status::established);
    CHECK(v.bound == 486);
    CHECK(v.details["hecke_route"]["status"] == "established");
    CHECK(v.details["odd_off_lane"] == 0);
    CHECK(v.details["odd_on_lane"].get<int>() > 0);

    const Verdict w = verify_thm1(73, deep);
    CHECK(w.status == Status::established);
    CHECK(w.bound == 1110);
    CHECK(w.details["weight"] == 5);
}

TEST_CASE("quick policy reports depth shortfalls as shallow")
{
    const Verdict v = verify_thm1(89, DepthPolicy::quick());
    CHECK(v.status == Status::shallow);
    CHECK(v.message.find("144239") != std::string::npos);
    CHECK(verify_thm2_base(DepthPolicy::custom(1000)).status == Status::shallow);
    CHECK(verify_thm2_family(DepthPolicy::custom(1000), 1000).status == Status::shallow);
}

TEST_CASE("a wrong shift is a mismatch")
{
    SelfSimilarityParams sp = selfsim_params(53, SelfSimilarityParams::Variant::b9);
    sp.beta = 34;
    const Verdict v = verify_selfsim(sp, 486, false, deep);
    CHECK(v.status == Status::mismatch);
    REQUIRE(v.first_mismatch);
    CHECK(v.first_mismatch->exponent == 34);
}

TEST_CASE("b19 self-similarity at p = 5 holds and at p = 7 fails")
{
    using V = SelfSimilarityParams::Variant;
    CHECK(verify_selfsim(selfsim_params(5, V::b19), 2000, false, deep).established());
    const Verdict f = verify_selfsim(selfsim_params(7, V::b19), 2000, false, deep);
    CHECK(f.status == Status::mismatch);
    const Verdict e = verify_selfsim(selfsim_params(7, V::b19), 2000, true, deep);
    CHECK(e.established());
    CHECK(e.details["counterexample"]["exponent"] == f.first_mismatch->exponent);
}

TEST_CASE("b19 lanes against a parity knapsack")
{
    const std::size_t n_max = 40;
    const auto b19 = regular_parity(19, 242 * n_max + 242);
    CHECK(b19[90] == 1);
    const Verdict v = verify_thm2_family(deep, n_max);
    CHECK(v.established());
    for (std::size_t k = 0; k <= 10; ++k) {
        std::size_t odd = 0;
        for (std::size_t n = 0; n <= n_max; ++n)
            odd += b19[242 * n + 22 * k + 2];
        CHECK(v.details["lanes"][k]["odd"] == odd);
        if (k != 4)
            CHECK(odd == 0);
    }
}

TEST_CASE("thm2 base and iterated family")
{
    const Verdict v = verify_thm2_base(deep);
    CHECK(v.established());
    CHECK(v.bound == 13860);
    CHECK(v.details["depth"] == 304922);
    CHECK(v.details["hecke_route"]["status"] == "established");

    const Verdict it = verify_thm2_iterated(deep, 20, 2);
    CHECK(it.established());
    CHECK(it.details["iterations"][0]["progression"] == "242n + 22k + 2");
    CHECK(it.details["iterations"][1]["progression"] == "29282n + 2662k + 332");
    CHECK(it.details["iterations"][0]["printed_constant"] == 92);
    CHECK(it.details["iterations"][0]["printed_constant_violations"].get<int>() > 0);
}

TEST_CASE("b9 identity and the mod 3 corollary")
{
    const Verdict v = verify_b9_identity(200);
    CHECK(v.established());
    CHECK(v.details["oracle_disagreements"] == 0);
    CHECK(v.details["constant_term"] == "3");
    const Verdict w = verify_b9_mod3(1000, deep);
    CHECK(w.established());
    CHECK(verify_b9_mod3(1000, DepthPolicy::custom(100)).status == Status::shallow);
}

TEST_CASE("2-dissections")
{
    CHECK(verify_dissection("f9/f1", "f12^3*f18/(f2^2*f6*f36)", "q*f4^2*f6*f36/(f2^3*f12)", 300).established());
    // swapped parts still sum correctly but sit on the wrong parity
    const Verdict sw = verify_dissection("f9/f1", "q*f4^2*f6*f36/(f2^3*f12)", "f12^3*f18/(f2^2*f6*f36)", 300);
    CHECK(sw.status == Status::mismatch);
    CHECK(verify_dissection("f9/f1", "f12^3*f18/(f2^2*f6*f36)", "q*f4^2*f6*f36/(f2^3*f12) + q^5", 300).status
          == Status::mismatch);
}

TEST_CASE("congruence driver reports the least differing exponent")
{
    // f7/f1 = f1^6 + q f1^2 f7^4 + q^2 f7^8/f1^2 mod 2; the q term shows first
    const Verdict v = verify_congruence("f7/f1", "f1^6", 2, 50, deep);
    CHECK(v.status == Status::mismatch);
    REQUIRE(v.first_mismatch);
    CHECK(v.first_mismatch->exponent == 1);
    CHECK(verify_congruence("f7/f1", "f1^6 + q*f1^2*f7^4 + q^2*f7^8/f1^2", 2, 500, deep).established());
    CHECK(verify_congruence("ap(f9/f1,2,1)", "f1*f9^2/f3", 2, 100, DepthPolicy::custom(150)).status
          == Status::shallow);
}

TEST_CASE("admissible residues")
{
    CHECK(gj_residues(6, 5) == std::vector<std::int64_t>{0});
    const auto r10 = gj_residues(10, 7);
    CHECK(std::find(r10.begin(), r10.end(), 0) != r10.end());
    CHECK(std::find(r10.begin(), r10.end(), 3) != r10.end());
    // a long scan finds nothing the full period missed
    for (auto [t, r] : {std::pair{6, 5}, {10, 7}, {15, 8}, {9, 11}}) {
        std::set<std::int64_t> brute;
        for (std::int64_t d = 1; d <= 20000; ++d)
            if (std::gcd(d, 6 * t * r) == 1)
                brute.insert((t - 1) * ((d * d - 1) / 24) % r);
        CHECK(gj_residues(t, r) == std::vector<std::int64_t>(brute.begin(), brute.end()));
    }
}

TEST_CASE("nonvanishing witnesses match a parity scan")
{
    const auto b10 = regular_parity(10, 7 * 2000 + 6);
    for (std::int64_t s : gj_residues(10, 7)) {
        std::optional<std::size_t> least;
        for (std::size_t n = 0; n <= 2000 && !least; ++n)
            if (b10[7 * n + static_cast<std::size_t>(s)])
                least = n;
        CHECK(nonvanishing_witness(10, 7, s, 2, 2000) == least);
    }
    const Verdict v = verify_gj(15, 8, 3, 10000, deep);
    CHECK(v.established());
    CHECK_THROWS_AS(nonvanishing_witness(10, 7, 3, 4, 10), UsageError);
}

TEST_CASE("Ramanujan families and lifts")
{
    CHECK(verify_ramanujan(5, 1, 3, 300, 4).established());
    CHECK(verify_ramanujan(7, 2, 2, 200, 47).established());
    const Verdict wrong = verify_ramanujan(11, 1, 2, 200, 5);
    CHECK(wrong.status == Status::mismatch);
    CHECK(wrong.details["delta"] == 6);
    CHECK(verify_lift(5, 4, 5, 3, 100).established());
    CHECK(verify_lift(7, 5, 7, 2, 100).established());
    CHECK_THROWS_AS(verify_lift(5, 3, 5, 2, 50), UsageError);
}

TEST_CASE("eta and Sturm claims")
{
    CHECK(verify_eta("p=53; N=27p; 1:1 9:2 3:-1 p:1 3p:2 9p:1", 3, -3).established());
    CHECK(verify_eta("p=53; N=27p; 1:1 9:2 3:-1 p:1 3p:2 9p:1", 5, -3).status == Status::mismatch);
    CHECK(verify_eta("N=2299; 19:1 121:126 1:-1", 63, -19).established());
    CHECK(verify_eta("N=9; 1:-1 9:1", 0, 1).status == Status::mismatch);
    CHECK(verify_sturm(63, 2299, 13860).established());
    CHECK(verify_sturm(3, 27 * 53, 9 * 54).established());
    CHECK(verify_sturm(5, 27 * 73, 15 * 74).established());
    CHECK(verify_sturm(3, 27 * 53, 485).status == Status::mismatch);
}

TEST_CASE("run_claim dispatch and errors")
{
    ClaimEntry e{"x.sturm", "x", "", "sturm", {{"weight", 3}, {"level", 1431}, {"expected", 486}}};
    const Verdict v = run_claim(e, deep);
    CHECK(v.claim_id == "x.sturm");
    CHECK(v.established());
    CHECK(v.runtime_ms >= 0);

    ClaimEntry bad{"x.bad", "x", "", "nonesuch", {}};
    CHECK_THROWS_AS(run_claim(bad, deep), UsageError);
    ClaimEntry missing{"x.missing", "x", "", "sturm", {{"weight", 3}}};
    CHECK_THROWS_AS(run_claim(missing, deep), UsageError);
    ClaimEntry parse{"x.parse", "x", "", "congruence", {{"left", "f1 +"}, {"right", "f1"}, {"modulus", 2}, {"bound", 10}}};
    CHECK_THROWS_AS(run_claim(parse, deep), UsageError);
    ClaimEntry tiered{"x.tier", "x", "", "b9_mod3", {{"X", {{"quick", 10}, {"full", 20}}}}};
    CHECK(run_claim(tiered, DepthPolicy::quick()).bound == 10);
    CHECK(run_claim(tiered, deep).bound == 20);
}

TEST_CASE("run_claims keeps input order under threads")
{
    std::vector<ClaimEntry> entries;
    for (std::int64_t w : {63, 3, 5, 3})
        entries.push_back({"s" + std::to_string(entries.size()), "s", "", "sturm",
                           {{"weight", w}, {"level", 2299}, {"expected", 0}}});
    const auto vs = run_claims(entries, deep, 3);
    REQUIRE(vs.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(vs[i].claim_id == "s" + std::to_string(i));
    CHECK(vs[0].bound == 13860);
    CHECK(vs[1].bound == vs[3].bound);
    CHECK(exit_code(vs) == 1);
}

TEST_CASE("worker count")
{
    CHECK(worker_count(4, 2) == 2);
    CHECK(worker_count(4, 0) == 1);
    ::setenv("REGULUS_THREADS", "1", 1);
    CHECK(worker_count(0, 10) == 1);
    ::unsetenv("REGULUS_THREADS");
    CHECK(worker_count(0, 10) >= 1);
}

TEST_CASE("deep b19 parities against the partition recurrence")
{
    // the base driver expands b19 mod 2 to 22 * 13860 + 2
    const std::size_t D = 304922;
    const auto p2 = oracles::partition_residues(D, 2);
    const QSeries b19 = mul_eta_power(euler_series(19, D, 2), 1, -1);
    for (std::size_t j = 0; j <= 60; ++j) {
        const std::size_t n = D - j * 4999;
        CHECK(b19.coeff_mod(n, 2) == oracles::t_regular_pentagonal_mod(19, n, p2, 2));
    }
    const auto b9 = mul_eta_power(euler_series(9, 2 * 89 * 810 + 59, 2), 1, -1);
    for (std::size_t n = b9.trunc(); n + 50 > b9.trunc(); --n)
        CHECK(b9.coeff_mod(n, 2) == oracles::t_regular_pentagonal_mod(9, n, p2, 2));
}
