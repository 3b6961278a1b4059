#pragma once

// Hecke operators T_p on truncated q-expansions and congruence checks up
// to the Sturm bound.

#include <cstdint>
#include <span>

#include <gmpxx.h>

#include <regulus/etaquot.hpp>
#include <regulus/series.hpp>
#include <regulus/verdict.hpp>

namespace regulus {

struct FormContext {
    std::int64_t weight = 1;
    std::int64_t level = 1;
    CharacterDescriptor character;
    bool same_character = true;

    static FormContext of(const EtaQuotient& E);
};

/// sum (a(pn) + chi(p) p^{l-1} a(n/p)) q^n, valid to floor(T/p).
QSeries hecke_tp(const QSeries& f, std::int64_t p, const FormContext& ctx);

/// Left-to-right T_{p1} T_{p2} ...
QSeries hecke_compose(const QSeries& f, std::span<const std::int64_t> primes, const FormContext& ctx);

/// (l N / 12) prod_{q | N} (1 + 1/q) for equal characters,
/// (l N^2 / 12) prod_{q | N} (1 - 1/q^2) otherwise; exact.
mpq_class sturm_bound_exact(std::int64_t weight, std::int64_t level, bool same_character = true);
std::size_t sturm_bound(std::int64_t weight, std::int64_t level, bool same_character = true);

/// Compare f and g mod p through the Sturm bound of ctx. A short expansion
/// is reported as shallow, never as a pass.
Verdict verify_to_sturm(const QSeries& f, const QSeries& g, std::int64_t p, const FormContext& ctx);

} // namespace regulus
