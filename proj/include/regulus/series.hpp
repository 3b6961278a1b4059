#pragma once

/**
 * @file series.hpp
 * @brief Truncated formal power series over Z and Z/mZ.
 *
 * A QSeries carries its own valid prefix: coefficients at exponents
 * 0..trunc() are known, everything beyond is unknown (not zero). Asking
 * for a coefficient past the prefix throws ShallowError.
 *
 * Three coefficient stores are used, chosen by the modulus:
 *  - modulus 0: arbitrary-precision integers (GMP),
 *  - modulus 2: bit-packed 64-bit words,
 *  - 3 <= modulus < 2^63: machine-word residues.
 *
 * An offset in units of 1/24 tracks the q^{1/24} factors of eta-quotients.
 * Addition requires equal offsets; multiplication adds them.
 */

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include <json.hpp>

namespace regulus {

using Modulus = std::uint64_t;

class SeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A comparison or extraction needed coefficients past a series' valid prefix.
class ShallowError : public SeriesError {
public:
    ShallowError(std::size_t needed, std::size_t available);

    std::size_t needed() const noexcept { return needed_; }
    std::size_t available() const noexcept { return available_; }

private:
    std::size_t needed_;
    std::size_t available_;
};

namespace detail {
struct SeriesAccess;
}

class QSeries {
public:
    struct Exact {
        std::vector<mpz_class> c;
        bool operator==(const Exact&) const = default;
    };
    struct Residues {
        std::vector<std::uint64_t> c;
        bool operator==(const Residues&) const = default;
    };
    struct Bits {
        std::vector<std::uint64_t> w;
        bool operator==(const Bits&) const = default;
    };

    /// The zero series mod 0, valid at exponent 0.
    QSeries();

    static QSeries zero(Modulus m, std::size_t trunc, std::int64_t offset = 0);
    static QSeries one(Modulus m, std::size_t trunc);
    static QSeries monomial(Modulus m, std::size_t trunc, std::size_t exponent, long coefficient = 1);
    /// trunc = coeffs.size() - 1; coefficients are reduced mod m.
    static QSeries from_integers(Modulus m, std::span<const mpz_class> coeffs, std::int64_t offset = 0);
    static QSeries from_integers(Modulus m, std::initializer_list<long> coeffs);

    Modulus modulus() const noexcept { return modulus_; }
    std::size_t trunc() const noexcept { return trunc_; }
    std::int64_t offset() const noexcept { return offset_; }

    /// Canonical coefficient: exact integer, or residue in [0, m).
    mpz_class coeff(std::size_t n) const;
    /// Coefficient reduced mod m; requires m to divide the modulus (or modulus 0).
    std::uint64_t coeff_mod(std::size_t n, Modulus m) const;
    bool is_zero_at(std::size_t n) const;
    /// Number of nonzero coefficients in the valid prefix.
    std::size_t support_size() const;
    /// Exponents with nonzero coefficient, ascending.
    std::vector<std::size_t> support() const;

    const std::variant<Exact, Residues, Bits>& store() const noexcept { return store_; }

    friend bool operator==(const QSeries& a, const QSeries& b);

private:
    friend struct detail::SeriesAccess;

    QSeries(Modulus m, std::size_t trunc, std::int64_t offset);

    Modulus modulus_ = 0;
    std::size_t trunc_ = 0;
    std::int64_t offset_ = 0;
    std::variant<Exact, Residues, Bits> store_;
};

// ---- ring operations -------------------------------------------------------

QSeries ps_add(const QSeries& f, const QSeries& g);
QSeries ps_sub(const QSeries& f, const QSeries& g);
QSeries ps_neg(const QSeries& f);
QSeries ps_scale(const QSeries& f, const mpz_class& c);

/// Cauchy product to min(T_f, T_g); offsets add. Mod 2 uses shifted word xors
/// driven by the sparser operand.
QSeries ps_mul(const QSeries& f, const QSeries& g);

/// Multiplicative inverse to the same truncation; the constant term must be a unit.
QSeries ps_inv(const QSeries& f);

/// f / g to min(T_f, T_g). The recurrence walks only the nonzero support of g,
/// so dividing by a pentagonal-sparse series is O(T^{3/2}). Mod 2 multiplies
/// by the Frobenius product g(q) g(q^2) g(q^4) ... instead.
QSeries ps_div(const QSeries& f, const QSeries& g);

/// f^e; negative e requires a unit constant term.
QSeries ps_pow(const QSeries& f, std::int64_t e);

inline QSeries operator+(const QSeries& f, const QSeries& g) { return ps_add(f, g); }
inline QSeries operator-(const QSeries& f, const QSeries& g) { return ps_sub(f, g); }
inline QSeries operator-(const QSeries& f) { return ps_neg(f); }
inline QSeries operator*(const QSeries& f, const QSeries& g) { return ps_mul(f, g); }
inline QSeries operator/(const QSeries& f, const QSeries& g) { return ps_div(f, g); }

// ---- exponent maps ---------------------------------------------------------

/// Multiply by q^k (k >= 0); the valid prefix grows by k.
QSeries shift(const QSeries& f, std::size_t k);
/// q -> q^k. Result is valid to k*T + k - 1, capped at `cap` when given.
QSeries dilate(const QSeries& f, std::size_t k, std::optional<std::size_t> cap = std::nullopt);
/// Coefficient n of the result is coefficient A*n + B of f; truncation floor((T - B) / A).
QSeries extract_ap(const QSeries& f, std::size_t A, std::size_t B);
/// Shorten the valid prefix (never lengthens).
QSeries truncate(const QSeries& f, std::size_t trunc);
/// Change the coefficient ring to Z/mZ; m must divide the current modulus (or it is 0).
QSeries reduce_mod(const QSeries& f, Modulus m);
/// Same coefficients, offset replaced (used to attach the q^{1/24} bookkeeping).
QSeries with_offset(const QSeries& f, std::int64_t offset);
/// Absorb an offset that is a nonnegative multiple of 24 into an integer q-power.
QSeries settle_offset(const QSeries& f);

// ---- generators ------------------------------------------------------------

struct ThetaSpec {
    enum class Kind { euler_pentagonal, jacobi_cube, quadratic_progression };
    enum class Range { all_integers, nonnegative, positive };
    enum class Sign { plus, alternating };
    enum class Weight { unit, odd_linear };

    Kind kind = Kind::quadratic_progression;
    /// exponent(n) = (a n^2 + b n + c) / divisor
    std::int64_t a = 1, b = 0, c = 0, divisor = 1;
    Range range = Range::all_integers;
    Sign sign = Sign::plus;
    Weight weight = Weight::unit;

    /// sum_{n in Z} (-1)^n q^{k n(3n-1)/2}
    static ThetaSpec euler_pentagonal(std::int64_t k = 1);
    /// sum_{n >= 0} (-1)^n (2n+1) q^{n(n+1)/2}
    static ThetaSpec jacobi_cube();
    static ThetaSpec quadratic(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t divisor = 1,
                               Range range = Range::all_integers);
};

QSeries theta_series(const ThetaSpec& spec, std::size_t trunc, Modulus m);

/// f_k = (q^k; q^k)_inf, built from the pentagonal theta sum.
QSeries euler_series(std::int64_t k, std::size_t trunc, Modulus m);

/// f_k^e. Mod 2 this is a product of dilated pentagonal series: f_k^{2^i} = f_{k 2^i},
/// and e < 0 is reduced to e mod 2^J with k 2^J > trunc.
QSeries eta_power(std::int64_t k, std::int64_t e, std::size_t trunc, Modulus m);

/// x * f_k^e to x's truncation, one sparse factor at a time: repeated sparse
/// multiplication or division by f_k, or mod 2 the dilated factors f_{k 2^i}.
QSeries mul_eta_power(const QSeries& x, std::int64_t k, std::int64_t e);

// ---- comparison ------------------------------------------------------------

struct Mismatch {
    std::size_t exponent;
    mpz_class left;
    mpz_class right;
};

struct Congruence {
    std::size_t upto;
    std::optional<Mismatch> first_mismatch;
    bool holds() const noexcept { return !first_mismatch; }
};

/// Compare f and g mod m (m = 0: exact) at exponents 0..upto.
/// Throws ShallowError when upto exceeds either valid prefix.
Congruence series_congruent(const QSeries& f, const QSeries& g, Modulus m, std::size_t upto);

// ---- serialization ---------------------------------------------------------

/// `{modulus, trunc, coeffs:[...]}` plus `offset` when nonzero. Exact
/// coefficients outside the int64 range are written as decimal strings.
nlohmann::json to_json(const QSeries& f);
QSeries series_from_json(const nlohmann::json& j);

std::string to_string(const mpz_class& v);

} // namespace regulus
