#include <regulus/verify.hpp>

#include <regulus/arith.hpp>
#include <regulus/density.hpp>
#include <regulus/etaquot.hpp>
#include <regulus/hecke.hpp>
#include <regulus/oracles.hpp>
#include <regulus/recipe.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <set>
#include <thread>

namespace regulus {

namespace {

// f_t / f_1 in Z/mZ through D.
QSeries regular_series(std::int64_t t, std::size_t D, Modulus m) { return mul_eta_power(euler_series(t, D, m), 1, -1); }

std::optional<Verdict> too_deep(std::size_t bound, std::size_t needed, const DepthPolicy& policy)
{
    if (needed <= policy.max_depth)
        return std::nullopt;
    Verdict v = shallow_verdict(bound, needed, policy.max_depth);
    v.message = "needs expansion depth " + std::to_string(needed) + "; the " + policy.name + " policy allows "
                + std::to_string(policy.max_depth);
    return v;
}

// q^beta * (sum c(n) q^{pn}) to `bound`, from the lane series c.
QSeries lifted_lane(const QSeries& lane, std::size_t p, std::size_t beta, std::size_t bound)
{
    if (beta > bound)
        return QSeries::zero(lane.modulus(), bound);
    return shift(dilate(lane, p, bound - beta), beta);
}

nlohmann::json certify(const EtaQuotient& E, std::int64_t weight, std::int64_t kernel, bool& ok)
{
    const HolomorphyReport rep = is_holomorphic_form(E);
    const bool good = rep.holomorphic && rep.weight.twice == 2 * weight && rep.character
                      && rep.character->discriminant() == kernel;
    ok = ok && good;
    nlohmann::json j = to_json(E, rep);
    j["matches_expected"] = good;
    return j;
}

nlohmann::json mismatch_json(const Congruence& c)
{
    if (c.holds())
        return nullptr;
    return {{"exponent", c.first_mismatch->exponent},
            {"left", to_string(c.first_mismatch->left)},
            {"right", to_string(c.first_mismatch->right)}};
}

nlohmann::json route_json(const Verdict& v)
{
    nlohmann::json j = {{"status", to_string(v.status)}, {"bound", v.bound}};
    if (v.first_mismatch)
        j["first_mismatch"] = {{"exponent", v.first_mismatch->exponent}};
    return j;
}

EtaQuotient eta_of(std::int64_t level, std::map<std::int64_t, std::int64_t> exps) { return {level, std::move(exps)}; }

} // namespace

SelfSimilarityParams selfsim_params(std::int64_t p, SelfSimilarityParams::Variant variant)
{
    if (!arith::is_prime(p) || p <= 3)
        throw UsageError("self-similarity needs a prime p > 3, got " + std::to_string(p));
    SelfSimilarityParams s;
    s.p = p;
    s.variant = variant;
    if (variant == SelfSimilarityParams::Variant::b9) {
        const std::uint64_t m = 2 * static_cast<std::uint64_t>(p);
        const auto inv3 = arith::inverse_mod(3, m);
        s.alpha = static_cast<std::int64_t>((m - *inv3) % m);
        s.beta = 2 * p / 3;
        if (p % 9 == 8 && (s.alpha != (2 * p - 1) / 3 || s.beta != s.alpha))
            throw std::logic_error("selfsim_params: closed form disagrees for p = -1 mod 9");
        if (p % 9 == 1 && (s.alpha != (4 * p - 1) / 3 || s.beta != (s.alpha - 1) / 2))
            throw std::logic_error("selfsim_params: closed form disagrees for p = 1 mod 9");
    } else {
        const auto inv8 = arith::inverse_mod(8, static_cast<std::uint64_t>(p));
        s.alpha = arith::reduce(-3 * static_cast<std::int64_t>(*inv8), static_cast<std::uint64_t>(p));
        s.beta = 3 * p / 8;
    }
    if (s.alpha <= 0)
        throw UsageError("self-similarity: no admissible residue for p = " + std::to_string(p));
    return s;
}

Verdict verify_thm1(std::int64_t p, const DepthPolicy& policy)
{
    if (!arith::is_prime(p) || (p % 9 != 1 && p % 9 != 8))
        throw UsageError("the b9 self-similarity driver needs a prime p = +-1 (mod 9); got " + std::to_string(p));
    const auto sp = selfsim_params(p, SelfSimilarityParams::Variant::b9);
    const bool minus = p % 9 == 8;
    const std::int64_t weight = minus ? 3 : 5;
    const std::int64_t N = 27 * p;

    // the pair of eta-quotients whose Hecke relation proves the congruence
    const EtaQuotient E1 = minus ? eta_of(N, {{1, 1}, {9, 2}, {3, -1}, {p, 1}, {3 * p, 2}, {9 * p, 1}})
                                 : eta_of(N, {{1, 1}, {9, 2}, {3, -1}, {p, 8}});
    const EtaQuotient E2 = minus ? eta_of(N, {{1, 1}, {3, 2}, {9, 1}, {p, 1}, {9 * p, 2}, {3 * p, -1}})
                                 : eta_of(N, {{1, 8}, {9 * p, 2}, {p, 1}, {3 * p, -1}});
    const FormContext ctx = FormContext::of(E1);
    const std::size_t B = sturm_bound(weight, N);
    const auto P = static_cast<std::size_t>(p);
    const std::size_t need = 2 * P * B + static_cast<std::size_t>(sp.alpha);
    if (auto v = too_deep(B, need, policy))
        return *v;

    const QSeries b9 = regular_series(9, need, 2);
    const QSeries lhs = extract_ap(b9, 2 * P, static_cast<std::size_t>(sp.alpha));
    const QSeries rhs = lifted_lane(extract_ap(b9, 2, 1), P, static_cast<std::size_t>(sp.beta), B);
    Verdict v = from_congruence(series_congruent(lhs, rhs, 2, B));

    std::size_t off_lane = 0, on_lane = 0;
    for (std::size_t n = 0; n <= B; ++n)
        if (!lhs.is_zero_at(n))
            ++(n % P == static_cast<std::size_t>(sp.beta) % P ? on_lane : off_lane);

    bool certified = true;
    v.details = {{"p", p},
                 {"alpha", sp.alpha},
                 {"beta", sp.beta},
                 {"weight", weight},
                 {"level", N},
                 {"sturm_bound", B},
                 {"depth", need},
                 {"odd_on_lane", on_lane},
                 {"odd_off_lane", off_lane}};
    v.details["eta_quotients"] = {certify(E1, weight, -3, certified), certify(E2, weight, -3, certified)};

    // E1 | T_p against E2, both settled to integer q-powers
    const QSeries X1 = settle_offset(eta_expand(E1, P * B, 2));
    const QSeries X2 = settle_offset(eta_expand(E2, B, 2));
    const Verdict hv = verify_to_sturm(hecke_tp(X1, p, ctx), X2, 2, ctx);
    v.details["hecke_route"] = route_json(hv);

    v.status = combine(v.status, hv.status);
    if (!certified) {
        v.status = Status::mismatch;
        v.message = "eta-quotient certification failed";
    }
    return v;
}

Verdict verify_thm2_base(const DepthPolicy& policy)
{
    const EtaQuotient H1 = eta_of(2299, {{19, 1}, {121, 126}, {1, -1}});
    const EtaQuotient H2 = eta_of(2299, {{209, 1}, {11, 125}});
    const FormContext ctx = FormContext::of(H1);
    const std::size_t B = sturm_bound(63, 2299);
    const std::size_t need = 22 * B + 2;
    if (auto v = too_deep(B, need, policy))
        return *v;

    const QSeries b19 = regular_series(19, need, 2);
    const QSeries lhs = extract_ap(b19, 22, 2);
    const QSeries even = extract_ap(b19, 2, 0);
    const QSeries rhs = lifted_lane(even, 11, 4, B);
    Verdict v = from_congruence(series_congruent(lhs, rhs, 2, B));
    v.details = {{"p", 11}, {"gamma", 1}, {"delta", 4}, {"weight", 63}, {"level", 2299}, {"sturm_bound", B},
                 {"depth", need}};

    bool certified = true;
    v.details["eta_quotients"] = {certify(H1, 63, -19, certified), certify(H2, 63, -19, certified)};

    const std::vector<std::int64_t> t2_t11{2, 11};
    const QSeries L = hecke_compose(settle_offset(eta_expand(H1, 22 * B, 2)), t2_t11, ctx);
    const QSeries R = hecke_tp(settle_offset(eta_expand(H2, 2 * B, 2)), 2, ctx);
    const Verdict hv = verify_to_sturm(L, R, 2, ctx);
    v.details["hecke_route"] = route_json(hv);

    // the q-expansion shapes of the two Hecke images
    const QSeries shape1 = shift(mul_eta_power(truncate(lhs, B - 29), 11, 63), 29);
    const QSeries shape2 = shift(mul_eta_power(lifted_lane(even, 11, 0, B - 33), 11, 63), 33);
    const auto s1 = series_congruent(L, shape1, 2, B);
    const auto s2 = series_congruent(R, shape2, 2, B);
    v.details["hecke_shapes"] = {{"first", s1.holds()}, {"second", s2.holds()}};

    v.status = combine(v.status, hv.status);
    if (!certified || !s1.holds() || !s2.holds()) {
        v.status = Status::mismatch;
        v.message = !certified ? "eta-quotient certification failed" : "Hecke image shape disagrees";
    }
    return v;
}

Verdict verify_thm2_family(const DepthPolicy& policy, std::size_t n_max)
{
    const std::size_t need = 242 * n_max + 22 * 10 + 2;
    if (auto v = too_deep(n_max, need, policy))
        return *v;
    const QSeries b19 = regular_series(19, need, 2);

    Verdict v;
    v.bound = n_max;
    nlohmann::json lanes = nlohmann::json::array();
    std::size_t violations = 0;
    std::optional<std::size_t> lane4_first;
    for (std::size_t k = 0; k <= 10; ++k) {
        std::size_t odd = 0;
        std::optional<std::size_t> first;
        for (std::size_t n = 0; n <= n_max; ++n)
            if (!b19.is_zero_at(242 * n + 22 * k + 2)) {
                ++odd;
                if (!first)
                    first = n;
            }
        nlohmann::json lane = {{"k", k}, {"odd", odd}};
        if (first)
            lane["first_odd_n"] = *first;
        lanes.push_back(lane);
        if (k == 4) {
            lane4_first = first;
        } else if (odd > 0) {
            violations += odd;
            const std::size_t arg = 242 * *first + 22 * k + 2;
            if (!v.first_mismatch || arg < v.first_mismatch->exponent)
                v.first_mismatch = Mismatch{arg, 1, 0};
        }
    }
    v.details = {{"n_max", n_max}, {"depth", need}, {"lanes", lanes}, {"violations", violations}};
    if (violations > 0) {
        v.status = Status::mismatch;
        v.message = "odd value on an excluded lane";
    } else if (!lane4_first) {
        v.status = Status::mismatch;
        v.message = "lane k = 4 vanished identically; the exclusion would be vacuous";
    }
    return v;
}

Verdict verify_thm2_iterated(const DepthPolicy& policy, std::size_t n_max, unsigned d_max)
{
    struct Form {
        unsigned d;
        std::size_t step, kstep, chain, printed;
    };
    std::vector<Form> forms;
    std::size_t need = 0;
    for (unsigned d = 1; d <= d_max; ++d) {
        const auto a = static_cast<std::size_t>(arith::ipow(11, 2 * d - 2));
        Form f{d, 2 * a * 121, 2 * a * 11, 2 * a + 90 * (a - 1) / 120, 2 * a + 90 * (a * 121 - 1) / 120};
        need = std::max(need, f.step * n_max + f.kstep * 10 + std::max(f.chain, f.printed));
        forms.push_back(f);
    }
    if (auto v = too_deep(n_max, need, policy))
        return *v;
    const QSeries b19 = regular_series(19, need, 2);

    Verdict v;
    v.bound = n_max;
    nlohmann::json per_d = nlohmann::json::array();
    std::size_t violations = 0;
    for (const Form& f : forms) {
        std::size_t chain_odd = 0, printed_odd = 0;
        for (std::size_t k = 0; k <= 10; ++k) {
            if (k == 4)
                continue;
            for (std::size_t n = 0; n <= n_max; ++n) {
                const std::size_t arg = f.step * n + f.kstep * k + f.chain;
                if (!b19.is_zero_at(arg)) {
                    ++chain_odd;
                    if (!v.first_mismatch || arg < v.first_mismatch->exponent)
                        v.first_mismatch = Mismatch{arg, 1, 0};
                }
                if (!b19.is_zero_at(f.step * n + f.kstep * k + f.printed))
                    ++printed_odd;
            }
        }
        violations += chain_odd;
        per_d.push_back({{"d", f.d},
                         {"progression", std::to_string(f.step) + "n + " + std::to_string(f.kstep) + "k + "
                                              + std::to_string(f.chain)},
                         {"violations", chain_odd},
                         {"printed_constant", f.printed},
                         {"printed_constant_violations", printed_odd}});
    }
    v.details = {{"n_max", n_max}, {"depth", need}, {"iterations", per_d}};
    if (violations > 0) {
        v.status = Status::mismatch;
        v.message = "odd value in the iterated family";
    }
    return v;
}

Verdict verify_selfsim(const SelfSimilarityParams& sp, std::size_t bound, bool expect_failure, const DepthPolicy& policy)
{
    const auto P = static_cast<std::size_t>(sp.p);
    const std::size_t need = 2 * P * bound + static_cast<std::size_t>(sp.left_offset());
    if (auto v = too_deep(bound, need, policy))
        return *v;
    const QSeries b = regular_series(sp.t(), need, 2);
    const QSeries lhs = extract_ap(b, 2 * P, static_cast<std::size_t>(sp.left_offset()));
    const QSeries rhs = lifted_lane(extract_ap(b, 2, static_cast<std::size_t>(sp.right_offset())), P,
                                    static_cast<std::size_t>(sp.beta), bound);
    const Congruence c = series_congruent(lhs, rhs, 2, bound);
    Verdict v = from_congruence(c);
    v.details = {{"t", sp.t()},
                 {"p", sp.p},
                 {"left", "b" + std::to_string(sp.t()) + "(" + std::to_string(2 * sp.p) + "n + "
                              + std::to_string(sp.left_offset()) + ")"},
                 {"right_shift", sp.beta},
                 {"depth", need},
                 {"expect", expect_failure ? "fails" : "holds"}};
    if (expect_failure) {
        v.status = c.holds() ? Status::mismatch : Status::established;
        v.details["counterexample"] = mismatch_json(c);
        v.first_mismatch.reset();
        v.message = c.holds() ? "no counterexample within the bound" : "";
    }
    return v;
}

Verdict verify_b9_identity(std::size_t T)
{
    const QSeries lhs = Recipe::parse("ap(f9/f1, 4, 3)").evaluate(T, 0);
    const QSeries rhs = Recipe::parse("3*f2^2*f6^2*f9/f1^5").evaluate(T, 0);
    Verdict v = from_congruence(series_congruent(lhs, rhs, 0, T));

    // independent counts at 20 fixed indices
    const auto dp = oracles::t_regular_table(9, 4 * T + 3);
    const auto p = oracles::partition_count(4 * T + 3);
    std::size_t disagreements = 0;
    nlohmann::json samples = nlohmann::json::array();
    for (std::size_t j = 0; j < 20; ++j) {
        const std::size_t n = T * j / 19;
        const bool ok = dp[4 * n + 3] == lhs.coeff(n) && oracles::t_regular_pentagonal(9, 4 * n + 3, p) == dp[4 * n + 3];
        if (!ok)
            ++disagreements;
        samples.push_back(n);
    }
    v.details = {{"T", T}, {"oracle_samples", samples}, {"oracle_disagreements", disagreements},
                 {"constant_term", to_string(lhs.coeff(0))}};
    if (disagreements > 0) {
        v.status = Status::mismatch;
        v.message = "series expansion disagrees with the counting oracles";
    }
    return v;
}

Verdict verify_b9_mod3(std::size_t X, const DepthPolicy& policy)
{
    const std::size_t need = 4 * X + 3;
    if (auto v = too_deep(X, need, policy))
        return *v;
    const QSeries lane = extract_ap(regular_series(9, need, 3), 4, 3);
    Verdict v = from_congruence(series_congruent(lane, QSeries::zero(3, X), 3, X));
    v.details = {{"X", X}, {"modulus", 3}, {"nonzero_residues", lane.support_size()}};
    return v;
}

Verdict verify_dissection(const std::string& left, const std::string& even, const std::string& odd, std::size_t T)
{
    const QSeries L = Recipe::parse(left).evaluate(T, 0);
    const QSeries E = Recipe::parse(even).evaluate(T, 0);
    const QSeries O = Recipe::parse(odd).evaluate(T, 0);
    const Congruence sum = series_congruent(L, ps_add(E, O), 0, T);
    Verdict v = from_congruence(sum);

    std::size_t misplaced = 0;
    for (std::size_t n = 0; n <= T; ++n)
        if ((n % 2 == 1 && !E.is_zero_at(n)) || (n % 2 == 0 && !O.is_zero_at(n)))
            ++misplaced;
    const bool odd_part = T == 0 || series_congruent(extract_ap(L, 2, 1), extract_ap(O, 2, 1), 0, (T - 1) / 2).holds();
    v.details = {{"T", T}, {"misplaced_terms", misplaced}, {"odd_part_matches", odd_part}};
    if (sum.holds() && (misplaced > 0 || !odd_part)) {
        v.status = Status::mismatch;
        v.message = "summands are not split by exponent parity";
    }
    return v;
}

Verdict verify_congruence(const std::string& left, const std::string& right, Modulus m, std::size_t bound,
                          const DepthPolicy& policy)
{
    const Recipe l = Recipe::parse(left);
    const Recipe r = Recipe::parse(right);
    const std::size_t need = std::max(l.depth(bound), r.depth(bound));
    if (auto v = too_deep(bound, need, policy))
        return *v;
    Verdict v = from_congruence(series_congruent(l.evaluate(bound, m), r.evaluate(bound, m), m, bound));
    v.details = {{"left", left}, {"right", right}, {"modulus", m}, {"depth", need}};
    return v;
}

std::vector<std::int64_t> gj_residues(std::int64_t t, std::int64_t r, std::int64_t d_max)
{
    if (t < 2 || r < 1)
        throw UsageError("gj_residues needs t >= 2 and r >= 1");
    if (d_max <= 0)
        d_max = 24 * r * t;
    std::set<std::int64_t> hit;
    for (std::int64_t d = 1; d <= d_max; ++d) {
        if (std::gcd(d, 6 * t * r) != 1)
            continue;
        // (d^2 - 1) / 24 is an integer for gcd(d, 6) = 1
        const __int128 q = (static_cast<__int128>(d) * d - 1) / 24;
        const __int128 s = (static_cast<__int128>(t - 1) * (q % r)) % r;
        hit.insert(static_cast<std::int64_t>(s));
    }
    return {hit.begin(), hit.end()};
}

std::optional<std::size_t> nonvanishing_witness(std::int64_t t, std::int64_t r, std::int64_t s, std::int64_t ell,
                                                std::size_t X)
{
    if (!arith::is_prime(ell))
        throw UsageError("nonvanishing_witness: ell must be prime");
    if (s < 0 || s >= r)
        throw UsageError("nonvanishing_witness: need 0 <= s < r");
    const auto R = static_cast<std::size_t>(r);
    const auto S = static_cast<std::size_t>(s);
    const QSeries b = regular_series(t, R * X + S, static_cast<Modulus>(ell));
    for (std::size_t n = 0; n <= X; ++n)
        if (!b.is_zero_at(R * n + S))
            return n;
    return std::nullopt;
}

Verdict verify_gj(std::int64_t t, std::int64_t r, std::int64_t ell, std::size_t X, const DepthPolicy& policy)
{
    const std::size_t need = static_cast<std::size_t>(r) * X + static_cast<std::size_t>(r) - 1;
    if (auto v = too_deep(X, need, policy))
        return *v;
    if (!arith::is_prime(ell))
        throw UsageError("gj: ell must be prime");
    const QSeries b = regular_series(t, need, static_cast<Modulus>(ell));
    Verdict v;
    v.bound = X;
    nlohmann::json rows = nlohmann::json::array();
    std::size_t missing = 0;
    const auto residues = gj_residues(t, r);
    for (std::int64_t s : residues) {
        std::optional<std::size_t> w;
        for (std::size_t n = 0; n <= X && !w; ++n)
            if (!b.is_zero_at(static_cast<std::size_t>(r) * n + static_cast<std::size_t>(s)))
                w = n;
        nlohmann::json row = {{"s", s}};
        row["witness"] = w ? nlohmann::json(*w) : nlohmann::json(nullptr);
        if (w)
            row["value_mod_ell"] = to_string(b.coeff(static_cast<std::size_t>(r) * *w + static_cast<std::size_t>(s)));
        else
            ++missing;
        rows.push_back(row);
    }
    v.details = {{"t", t}, {"r", r}, {"ell", ell}, {"X", X}, {"residues", rows}};
    if (missing > 0) {
        v.status = Status::mismatch;
        v.message = std::to_string(missing) + " residue class(es) without a witness up to X";
    }
    return v;
}

Verdict verify_ramanujan(std::int64_t p, unsigned k, std::int64_t t_max, std::size_t X,
                         std::optional<std::uint64_t> expected_delta)
{
    Verdict v;
    v.bound = X;
    nlohmann::json rows = nlohmann::json::array();
    const oracles::RamanujanFamily base{p, k, 1};
    for (std::int64_t t = 1; t <= t_max; ++t) {
        const auto c = oracles::check_ramanujan_family({p, k, t}, X);
        nlohmann::json row = {{"t", t}, {"regularity", c.family.regularity()}, {"verified", c.verified()}};
        if (!c.verified()) {
            row["first_violation"] = *c.first_violation;
            if (v.status == Status::established) {
                v.status = Status::mismatch;
                v.first_mismatch = Mismatch{*c.first_violation, c.violating_residue, 0};
            }
        }
        rows.push_back(row);
    }
    v.details = {{"p", p}, {"k", k}, {"modulus", base.modulus()}, {"step", base.step()},
                 {"delta", base.residue()}, {"lanes", rows}};
    if (expected_delta && *expected_delta != base.residue()) {
        v.status = Status::mismatch;
        v.message = "delta_{p,k} = " + std::to_string(base.residue()) + ", expected " + std::to_string(*expected_delta);
    }
    return v;
}

Verdict verify_lift(std::int64_t a, std::int64_t b, std::int64_t m, std::int64_t t_max, std::size_t X)
{
    const std::size_t N = static_cast<std::size_t>(a) * X + static_cast<std::size_t>(b);
    const auto p = oracles::partition_count(N);
    Verdict v;
    v.bound = X;
    for (std::size_t n = 0; n <= X; ++n)
        if (p[static_cast<std::size_t>(a) * n + b] % m != 0)
            throw UsageError("lift: the hypothesis p(an+b) = 0 mod m fails at n = " + std::to_string(n));
    nlohmann::json rows = nlohmann::json::array();
    for (std::int64_t t = 1; t <= t_max; ++t) {
        const auto bt = oracles::t_regular_table(a * t, N);
        std::size_t bad = 0;
        for (std::size_t n = 0; n <= X; ++n)
            if (bt[static_cast<std::size_t>(a) * n + b] % m != 0) {
                if (!bad)
                    v.first_mismatch = Mismatch{n, mpz_class(bt[static_cast<std::size_t>(a) * n + b] % m), 0};
                ++bad;
            }
        rows.push_back({{"t", t}, {"violations", bad}});
        if (bad)
            v.status = Status::mismatch;
    }
    v.details = {{"a", a}, {"b", b}, {"m", m}, {"lanes", rows}};
    return v;
}

Verdict verify_eta(const std::string& text, std::int64_t weight, std::int64_t kernel)
{
    const EtaQuotient E = EtaQuotient::parse(text);
    bool ok = true;
    Verdict v;
    v.details = certify(E, weight, kernel, ok);
    v.details["expected_weight"] = weight;
    v.details["expected_kernel"] = kernel;
    if (!ok) {
        v.status = Status::mismatch;
        const auto rep = is_holomorphic_form(E);
        v.message = rep.holomorphic ? "weight or character differs from the expected values" : rep.reason;
    }
    return v;
}

Verdict verify_sturm(std::int64_t weight, std::int64_t level, std::size_t expected)
{
    Verdict v;
    v.bound = sturm_bound(weight, level);
    v.details = {{"weight", weight},
                 {"level", level},
                 {"exact", sturm_bound_exact(weight, level).get_str()},
                 {"expected", expected}};
    if (v.bound != expected) {
        v.status = Status::mismatch;
        v.message = "Sturm bound " + std::to_string(v.bound) + " differs from " + std::to_string(expected);
    }
    return v;
}

namespace {

std::size_t bound_for(const nlohmann::json& b, const DepthPolicy& policy)
{
    if (b.is_number_unsigned())
        return b.get<std::size_t>();
    if (b.is_object())
        return b.at(policy.is_quick() ? "quick" : "full").get<std::size_t>();
    throw UsageError("catalog bound must be a number or {quick, full}");
}

std::vector<std::size_t> bounds_for(const nlohmann::json& b, const DepthPolicy& policy)
{
    if (b.is_array())
        return b.get<std::vector<std::size_t>>();
    return b.at(policy.is_quick() ? "quick" : "full").get<std::vector<std::size_t>>();
}

Verdict dispatch(const ClaimEntry& e, const DepthPolicy& policy)
{
    const auto& P = e.params;
    const std::string& d = e.driver;
    if (d == "thm1")
        return verify_thm1(P.at("p").get<std::int64_t>(), policy);
    if (d == "thm2_base")
        return verify_thm2_base(policy);
    if (d == "thm2_family")
        return verify_thm2_family(policy, P.value("n_max", std::size_t{1000}));
    if (d == "thm2_iterated")
        return verify_thm2_iterated(policy, P.value("n_max", std::size_t{200}), P.value("d_max", 2u));
    if (d == "selfsim") {
        const auto variant = P.at("variant").get<std::string>() == "b19" ? SelfSimilarityParams::Variant::b19
                                                                        : SelfSimilarityParams::Variant::b9;
        return verify_selfsim(selfsim_params(P.at("p").get<std::int64_t>(), variant), bound_for(P.at("bound"), policy),
                              P.value("expect", std::string("holds")) == "fails", policy);
    }
    if (d == "b9_identity")
        return verify_b9_identity(bound_for(P.at("T"), policy));
    if (d == "b9_mod3")
        return verify_b9_mod3(bound_for(P.at("X"), policy), policy);
    if (d == "dissection")
        return verify_dissection(P.at("left"), P.at("even"), P.at("odd"), bound_for(P.at("T"), policy));
    if (d == "congruence")
        return verify_congruence(P.at("left"), P.at("right"), P.at("modulus").get<Modulus>(),
                                 bound_for(P.at("bound"), policy), policy);
    if (d == "gj")
        return verify_gj(P.at("t"), P.at("r"), P.at("ell"), bound_for(P.at("X"), policy), policy);
    if (d == "ramanujan") {
        std::optional<std::uint64_t> delta;
        if (P.contains("delta"))
            delta = P["delta"].get<std::uint64_t>();
        return verify_ramanujan(P.at("p"), P.at("k").get<unsigned>(), P.at("t_max"), bound_for(P.at("X"), policy),
                                delta);
    }
    if (d == "lift")
        return verify_lift(P.at("a"), P.at("b"), P.at("m"), P.at("t_max"), bound_for(P.at("X"), policy));
    if (d == "eta")
        return verify_eta(P.at("quotient"), P.at("weight"), P.at("kernel"));
    if (d == "sturm")
        return verify_sturm(P.at("weight"), P.at("level"), P.at("expected"));
    if (d == "sqrt_bound") {
        const auto Xs = bounds_for(P.at("X"), policy);
        const std::int64_t t = P.at("t");
        std::size_t top = 0;
        for (auto x : Xs)
            top = std::max(top, t == 14 ? 2 * x : x);
        if (auto v = too_deep(top / (t == 14 ? 2 : 1), top, policy))
            return *v;
        const auto rep = sqrt_lowerbound_report(t, Xs);
        Verdict v;
        v.bound = Xs.empty() ? 0 : *std::max_element(Xs.begin(), Xs.end());
        v.status = rep.holds() ? Status::established : Status::mismatch;
        v.details = to_json(rep);
        return v;
    }
    throw UsageError("claim '" + e.id + "': unknown driver '" + d + "'");
}

} // namespace

Verdict run_claim(const ClaimEntry& entry, const DepthPolicy& policy)
{
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = dispatch(entry, policy);
    } catch (const UsageError&) {
        throw;
    } catch (const ShallowError& e) {
        v = shallow_verdict(e.needed(), e.needed(), e.available());
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("claim '" + entry.id + "': bad parameters: " + e.what());
    } catch (const ParseError& e) {
        throw UsageError("claim '" + entry.id + "': " + e.what());
    } catch (const EtaError& e) {
        throw UsageError("claim '" + entry.id + "': " + e.what());
    }
    v.claim_id = entry.id;
    v.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return v;
}

unsigned worker_count(unsigned requested, std::size_t jobs)
{
    unsigned n = requested;
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("REGULUS_THREADS")) {
            const long cap = std::strtol(env, nullptr, 10);
            if (cap >= 1)
                n = std::min(n, static_cast<unsigned>(cap));
        }
    }
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

std::vector<Verdict> run_claims(const std::vector<ClaimEntry>& entries, const DepthPolicy& policy, unsigned threads)
{
    std::vector<Verdict> out(entries.size());
    std::vector<std::exception_ptr> errors(entries.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < entries.size();) {
            try {
                out[i] = run_claim(entries[i], policy);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = worker_count(threads, entries.size());
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i)
        pool.emplace_back(work);
    work();
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace regulus
