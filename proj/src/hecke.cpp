#include <regulus/hecke.hpp>

#include <regulus/arith.hpp>

namespace regulus {

FormContext FormContext::of(const EtaQuotient& E)
{
    FormContext ctx;
    ctx.character = eta_character_descriptor(E);
    ctx.weight = ctx.character.weight;
    ctx.level = E.level;
    return ctx;
}

QSeries hecke_tp(const QSeries& f, std::int64_t p, const FormContext& ctx)
{
    if (!arith::is_prime(p))
        throw SeriesError("hecke_tp: " + std::to_string(p) + " is not prime");
    if (ctx.weight < 1)
        throw SeriesError("hecke_tp: weight must be positive");
    const auto P = static_cast<std::size_t>(p);
    QSeries decimated = extract_ap(f, P, 0);

    const int chi = ctx.character(p);
    if (chi == 0)
        return decimated;
    mpz_class c;
    mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(ctx.weight - 1));
    c *= chi;
    if (f.modulus() != 0) {
        c %= mpz_class(std::to_string(f.modulus()));
        if (c < 0)
            c += mpz_class(std::to_string(f.modulus()));
        if (c == 0)
            return decimated;
    }
    // a(n/p) lives at exponents p n', n' <= floor(T'/p).
    const std::size_t T = decimated.trunc();
    QSeries lifted = dilate(truncate(f, T / P), P, T);
    return ps_add(decimated, ps_scale(lifted, c));
}

QSeries hecke_compose(const QSeries& f, std::span<const std::int64_t> primes, const FormContext& ctx)
{
    QSeries r = f;
    for (std::int64_t p : primes)
        r = hecke_tp(r, p, ctx);
    return r;
}

mpq_class sturm_bound_exact(std::int64_t weight, std::int64_t level, bool same_character)
{
    if (level < 1)
        throw std::invalid_argument("sturm_bound: level must be positive");
    mpq_class b(mpz_class(weight) * level, 12);
    if (!same_character)
        b *= level;
    for (std::int64_t q : arith::prime_divisors(level)) {
        if (same_character)
            b *= mpq_class(q + 1, q);
        else
            b *= mpq_class(mpz_class(q) * q - 1, mpz_class(q) * q);
    }
    b.canonicalize();
    return b;
}

std::size_t sturm_bound(std::int64_t weight, std::int64_t level, bool same_character)
{
    const mpq_class b = sturm_bound_exact(weight, level, same_character);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    return fl.get_ui();
}

Verdict verify_to_sturm(const QSeries& f, const QSeries& g, std::int64_t p, const FormContext& ctx)
{
    const std::size_t bound = sturm_bound(ctx.weight, ctx.level, ctx.same_character);
    const std::size_t available = std::min(f.trunc(), g.trunc());
    if (available < bound)
        return shallow_verdict(bound, bound, available);
    Verdict v = from_congruence(series_congruent(f, g, static_cast<Modulus>(p), bound));
    v.details["weight"] = ctx.weight;
    v.details["level"] = ctx.level;
    v.details["sturm"] = true;
    return v;
}

} // namespace regulus
