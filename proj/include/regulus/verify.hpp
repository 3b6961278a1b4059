#pragma once

// Claim drivers. Each checks a statement directly on coefficient data and
// returns a Verdict; eta-quotient and Hecke evidence is attached in
// `details` where a driver has it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <regulus/catalog.hpp>
#include <regulus/series.hpp>
#include <regulus/verdict.hpp>

namespace regulus {

/// sum b(2pn + alpha) q^n = q^beta sum b(2n + c) q^{pn} mod 2, with
///   b9:  3 alpha = -1 (mod 2p), 0 < alpha < 2p, beta = floor(2p/3), c = 1;
///   b19: alpha = 2 gamma, 8 gamma = -3 (mod p), 0 < gamma < p, beta = floor(3p/8), c = 0.
struct SelfSimilarityParams {
    enum class Variant { b9, b19 };

    std::int64_t p = 0;
    std::int64_t alpha = 0; ///< gamma for b19
    std::int64_t beta = 0;  ///< delta for b19
    Variant variant = Variant::b9;

    std::int64_t t() const noexcept { return variant == Variant::b9 ? 9 : 19; }
    /// Argument offset on the left: alpha for b9, 2 gamma for b19.
    std::int64_t left_offset() const noexcept { return variant == Variant::b9 ? alpha : 2 * alpha; }
    /// c in b(2n + c) on the right.
    std::int64_t right_offset() const noexcept { return variant == Variant::b9 ? 1 : 0; }
};

SelfSimilarityParams selfsim_params(std::int64_t p, SelfSimilarityParams::Variant variant);

/// Direct check of the b9 self-similarity through the Sturm bound of the
/// weight 3 (p = -1 mod 9) or weight 5 (p = 1 mod 9) forms on Gamma0(27p),
/// plus the Hecke route on the two eta-quotients as supporting evidence.
Verdict verify_thm1(std::int64_t p, const DepthPolicy& policy);

/// Base b19 congruence for p = 11 through 13860, plus the Hecke route.
Verdict verify_thm2_base(const DepthPolicy& policy);
/// b19(242n + 22k + 2) even for k != 4 (mod 11), n <= n_max; lane k = 4 must not vanish.
Verdict verify_thm2_family(const DepthPolicy& policy, std::size_t n_max = 1000);
/// The iterated family for d = 1..d_max, n <= n_max.
Verdict verify_thm2_iterated(const DepthPolicy& policy, std::size_t n_max = 200, unsigned d_max = 2);

/// The self-similarity check for any p, through an explicit bound. With
/// expect_failure the claim is that a mismatch exists within the bound.
Verdict verify_selfsim(const SelfSimilarityParams& params, std::size_t bound, bool expect_failure,
                       const DepthPolicy& policy);

/// sum b9(4n+3) q^n = 3 f2^2 f6^2 f9 / f1^5, exactly through T.
Verdict verify_b9_identity(std::size_t T);
/// b9(4n+3) = 0 mod 3 for n <= X.
Verdict verify_b9_mod3(std::size_t X, const DepthPolicy& policy);

/// left = even + odd exactly through T, with `even` supported on even
/// exponents and `odd` on odd ones.
Verdict verify_dissection(const std::string& left, const std::string& even, const std::string& odd, std::size_t T);

/// Generic recipe congruence mod m (m = 0: identity) through `bound`.
Verdict verify_congruence(const std::string& left, const std::string& right, Modulus m, std::size_t bound,
                          const DepthPolicy& policy);

/// Residues s mod r with s = (t-1)(d^2-1)/24 (mod r) for some d <= d_max,
/// gcd(d, 6tr) = 1. d_max = 0 scans one full period, 24 r t.
std::vector<std::int64_t> gj_residues(std::int64_t t, std::int64_t r, std::int64_t d_max = 0);

/// Least n <= X with b_t(rn + s) != 0 mod ell.
std::optional<std::size_t> nonvanishing_witness(std::int64_t t, std::int64_t r, std::int64_t s, std::int64_t ell,
                                                std::size_t X);

/// Every s from gj_residues has a witness within X.
Verdict verify_gj(std::int64_t t, std::int64_t r, std::int64_t ell, std::size_t X, const DepthPolicy& policy);

/// b_{p^k t}(p^k n + delta) = 0 mod m(p, k) for t <= t_max, n <= X.
Verdict verify_ramanujan(std::int64_t p, unsigned k, std::int64_t t_max, std::size_t X,
                         std::optional<std::uint64_t> expected_delta = std::nullopt);

/// p(an+b) = 0 mod m for n <= X, and then b_{at}(an+b) = 0 mod m for t <= t_max (exact counts).
Verdict verify_lift(std::int64_t a, std::int64_t b, std::int64_t m, std::int64_t t_max, std::size_t X);

/// Holomorphy certification of an eta-quotient with expected weight and character kernel.
Verdict verify_eta(const std::string& text, std::int64_t weight, std::int64_t kernel);

Verdict verify_sturm(std::int64_t weight, std::int64_t level, std::size_t expected);

/// Dispatch on entry.driver, time it and stamp the claim id.
Verdict run_claim(const ClaimEntry& entry, const DepthPolicy& policy);

/// Runs claims on up to `threads` workers (0: REGULUS_THREADS or hardware);
/// results keep the input order.
std::vector<Verdict> run_claims(const std::vector<ClaimEntry>& entries, const DepthPolicy& policy,
                                unsigned threads = 0);

unsigned worker_count(unsigned requested, std::size_t jobs);

} // namespace regulus
