#include <regulus/series.hpp>

#include <regulus/arith.hpp>

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>

namespace regulus {

ShallowError::ShallowError(std::size_t needed, std::size_t available)
    : SeriesError("coefficient " + std::to_string(needed) + " requested but series is only valid through "
                  + std::to_string(available)),
      needed_(needed), available_(available)
{
}

namespace detail {

struct SeriesAccess {
    static QSeries make(Modulus m, std::size_t trunc, std::int64_t offset) { return QSeries(m, trunc, offset); }
    static std::vector<mpz_class>& exact(QSeries& f) { return std::get<QSeries::Exact>(f.store_).c; }
    static std::vector<std::uint64_t>& residues(QSeries& f) { return std::get<QSeries::Residues>(f.store_).c; }
    static std::vector<std::uint64_t>& bits(QSeries& f) { return std::get<QSeries::Bits>(f.store_).w; }
    static QSeries with_offset(QSeries f, std::int64_t offset)
    {
        f.offset_ = offset;
        return f;
    }
};

} // namespace detail

namespace {

using Access = detail::SeriesAccess;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::size_t word_count(std::size_t trunc) { return trunc / 64 + 1; }

u64 tail_mask(std::size_t trunc)
{
    const unsigned r = trunc % 64;
    return r == 63 ? ~u64{0} : ((u64{1} << (r + 1)) - 1);
}

bool get_bit(const std::vector<u64>& w, std::size_t n) { return (w[n >> 6] >> (n & 63)) & 1u; }
void flip_bit(std::vector<u64>& w, std::size_t n) { w[n >> 6] ^= u64{1} << (n & 63); }

const std::vector<mpz_class>& exact_of(const QSeries& f) { return std::get<QSeries::Exact>(f.store()).c; }
const std::vector<u64>& residues_of(const QSeries& f) { return std::get<QSeries::Residues>(f.store()).c; }
const std::vector<u64>& bits_of(const QSeries& f) { return std::get<QSeries::Bits>(f.store()).w; }

void require_same_ring(const QSeries& f, const QSeries& g, const char* op)
{
    if (f.modulus() != g.modulus())
        throw SeriesError(std::string(op) + ": modulus mismatch (" + std::to_string(f.modulus()) + " vs "
                          + std::to_string(g.modulus()) + ")");
}

void require_same_offset(const QSeries& f, const QSeries& g, const char* op)
{
    if (f.offset() != g.offset())
        throw SeriesError(std::string(op) + ": offset mismatch");
}

// dst[s + j] ^= src[j] for all bit positions within W words.
void xor_shifted(u64* dst, std::size_t W, const u64* src, std::size_t s)
{
    const std::size_t ws = s >> 6;
    if (ws >= W)
        return;
    const unsigned r = s & 63;
    const std::size_t n = W - ws;
    u64* d = dst + ws;
    if (r == 0) {
        for (std::size_t i = 0; i < n; ++i)
            d[i] ^= src[i];
    } else {
        d[0] ^= src[0] << r;
        for (std::size_t i = 1; i < n; ++i)
            d[i] ^= (src[i] << r) | (src[i - 1] >> (64 - r));
    }
}

std::vector<u64> bits_prefix(const QSeries& f, std::size_t trunc)
{
    const auto& w = bits_of(f);
    std::vector<u64> out(w.begin(), w.begin() + word_count(trunc));
    out.back() &= tail_mask(trunc);
    return out;
}

std::size_t popcount(const std::vector<u64>& w)
{
    std::size_t n = 0;
    for (u64 x : w)
        n += std::popcount(x);
    return n;
}

// Sum of products mod m. Below 2^32 the products fit in 64 bits and can be
// accumulated unreduced in 128 bits; above that each product is reduced.
class ModAccumulator {
public:
    explicit ModAccumulator(u64 m) : m_(m), small_(m < (u64{1} << 32)) {}
    void add(u64 a, u64 b)
    {
        if (small_)
            acc_ += static_cast<u128>(a * b);
        else
            acc_ += arith::mulmod(a, b, m_);
    }
    void add(u64 a) { acc_ += a; }
    u64 value() const { return static_cast<u64>(acc_ % m_); }

private:
    u64 m_;
    bool small_;
    u128 acc_ = 0;
};

std::size_t nonzero_count_prefix(const QSeries& f, std::size_t trunc)
{
    std::size_t n = 0;
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, QSeries::Exact>) {
                for (std::size_t i = 0; i <= trunc; ++i)
                    n += (sgn(s.c[i]) != 0);
            } else if constexpr (std::is_same_v<S, QSeries::Residues>) {
                for (std::size_t i = 0; i <= trunc; ++i)
                    n += (s.c[i] != 0);
            } else {
                n = popcount(bits_prefix(f, trunc));
            }
        },
        f.store());
    return n;
}

} // namespace

// ---- QSeries ---------------------------------------------------------------

QSeries::QSeries() : store_(Exact{std::vector<mpz_class>(1)}) {}

QSeries::QSeries(Modulus m, std::size_t trunc, std::int64_t offset) : modulus_(m), trunc_(trunc), offset_(offset)
{
    if (m == 1)
        throw SeriesError("modulus 1 is not a supported coefficient ring");
    if (m >= (u64{1} << 63))
        throw SeriesError("modulus must be below 2^63");
    if (m == 0)
        store_ = Exact{std::vector<mpz_class>(trunc + 1)};
    else if (m == 2)
        store_ = Bits{std::vector<u64>(word_count(trunc), 0)};
    else
        store_ = Residues{std::vector<u64>(trunc + 1, 0)};
}

QSeries QSeries::zero(Modulus m, std::size_t trunc, std::int64_t offset) { return QSeries(m, trunc, offset); }

QSeries QSeries::one(Modulus m, std::size_t trunc) { return monomial(m, trunc, 0, 1); }

QSeries QSeries::monomial(Modulus m, std::size_t trunc, std::size_t exponent, long coefficient)
{
    QSeries f(m, trunc, 0);
    if (exponent > trunc)
        return f;
    if (m == 0)
        Access::exact(f)[exponent] = coefficient;
    else if (m == 2) {
        if (coefficient & 1)
            flip_bit(Access::bits(f), exponent);
    } else
        Access::residues(f)[exponent] = arith::reduce(coefficient, m);
    return f;
}

QSeries QSeries::from_integers(Modulus m, std::span<const mpz_class> coeffs, std::int64_t offset)
{
    if (coeffs.empty())
        throw SeriesError("from_integers: empty coefficient list");
    QSeries f(m, coeffs.size() - 1, offset);
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        if (m == 0)
            Access::exact(f)[n] = coeffs[n];
        else {
            mpz_class r;
            mpz_fdiv_r_ui(r.get_mpz_t(), coeffs[n].get_mpz_t(), m);
            const u64 v = r.get_ui();
            if (m == 2) {
                if (v)
                    flip_bit(Access::bits(f), n);
            } else
                Access::residues(f)[n] = v;
        }
    }
    return f;
}

QSeries QSeries::from_integers(Modulus m, std::initializer_list<long> coeffs)
{
    std::vector<mpz_class> v;
    v.reserve(coeffs.size());
    for (long c : coeffs)
        v.emplace_back(c);
    return from_integers(m, v);
}

mpz_class QSeries::coeff(std::size_t n) const
{
    if (n > trunc_)
        throw ShallowError(n, trunc_);
    if (modulus_ == 0)
        return std::get<Exact>(store_).c[n];
    if (modulus_ == 2)
        return mpz_class(static_cast<unsigned long>(get_bit(std::get<Bits>(store_).w, n)));
    return mpz_class(static_cast<unsigned long>(std::get<Residues>(store_).c[n]));
}

std::uint64_t QSeries::coeff_mod(std::size_t n, Modulus m) const
{
    if (n > trunc_)
        throw ShallowError(n, trunc_);
    if (m < 2)
        throw SeriesError("coeff_mod: modulus must be at least 2");
    if (modulus_ != 0 && modulus_ % m != 0)
        throw SeriesError("coeff_mod: " + std::to_string(m) + " does not divide the series modulus "
                          + std::to_string(modulus_));
    if (modulus_ == 0)
        return mpz_fdiv_ui(std::get<Exact>(store_).c[n].get_mpz_t(), m);
    if (modulus_ == 2)
        return get_bit(std::get<Bits>(store_).w, n);
    return std::get<Residues>(store_).c[n] % m;
}

bool QSeries::is_zero_at(std::size_t n) const
{
    if (n > trunc_)
        throw ShallowError(n, trunc_);
    if (modulus_ == 0)
        return sgn(std::get<Exact>(store_).c[n]) == 0;
    if (modulus_ == 2)
        return !get_bit(std::get<Bits>(store_).w, n);
    return std::get<Residues>(store_).c[n] == 0;
}

std::size_t QSeries::support_size() const { return nonzero_count_prefix(*this, trunc_); }

std::vector<std::size_t> QSeries::support() const
{
    std::vector<std::size_t> out;
    if (modulus_ == 2) {
        const auto& w = std::get<Bits>(store_).w;
        for (std::size_t i = 0; i < w.size(); ++i) {
            u64 x = w[i];
            while (x) {
                out.push_back(i * 64 + std::countr_zero(x));
                x &= x - 1;
            }
        }
        return out;
    }
    for (std::size_t n = 0; n <= trunc_; ++n) {
        if (!is_zero_at(n))
            out.push_back(n);
    }
    return out;
}

bool operator==(const QSeries& a, const QSeries& b)
{
    return a.modulus_ == b.modulus_ && a.trunc_ == b.trunc_ && a.offset_ == b.offset_ && a.store_ == b.store_;
}


// ---- ring operations -------------------------------------------------------

namespace {

QSeries add_or_sub(const QSeries& f, const QSeries& g, bool subtract, const char* op)
{
    require_same_ring(f, g, op);
    require_same_offset(f, g, op);
    const std::size_t T = std::min(f.trunc(), g.trunc());
    const Modulus m = f.modulus();
    QSeries r = Access::make(m, T, f.offset());
    if (m == 0) {
        auto& out = Access::exact(r);
        const auto &a = exact_of(f), &b = exact_of(g);
        for (std::size_t n = 0; n <= T; ++n)
            out[n] = subtract ? mpz_class(a[n] - b[n]) : mpz_class(a[n] + b[n]);
    } else if (m == 2) {
        auto& out = Access::bits(r);
        const auto &a = bits_of(f), &b = bits_of(g);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = a[i] ^ b[i];
        out.back() &= tail_mask(T);
    } else {
        auto& out = Access::residues(r);
        const auto &a = residues_of(f), &b = residues_of(g);
        for (std::size_t n = 0; n <= T; ++n) {
            const u64 bn = subtract ? (b[n] == 0 ? 0 : m - b[n]) : b[n];
            u64 s = a[n] + bn;
            if (s >= m)
                s -= m;
            out[n] = s;
        }
    }
    return r;
}

} // namespace

QSeries ps_add(const QSeries& f, const QSeries& g) { return add_or_sub(f, g, false, "ps_add"); }
QSeries ps_sub(const QSeries& f, const QSeries& g) { return add_or_sub(f, g, true, "ps_sub"); }

QSeries ps_neg(const QSeries& f) { return ps_scale(f, -1); }

QSeries ps_scale(const QSeries& f, const mpz_class& c)
{
    const Modulus m = f.modulus();
    const std::size_t T = f.trunc();
    QSeries r = Access::make(m, T, f.offset());
    if (m == 0) {
        auto& out = Access::exact(r);
        const auto& a = exact_of(f);
        for (std::size_t n = 0; n <= T; ++n)
            out[n] = a[n] * c;
    } else if (m == 2) {
        if (mpz_odd_p(c.get_mpz_t()))
            Access::bits(r) = bits_of(f);
    } else {
        const u64 cm = mpz_fdiv_ui(c.get_mpz_t(), m);
        auto& out = Access::residues(r);
        const auto& a = residues_of(f);
        for (std::size_t n = 0; n <= T; ++n)
            out[n] = arith::mulmod(a[n], cm, m);
    }
    return r;
}

QSeries ps_mul(const QSeries& f, const QSeries& g)
{
    require_same_ring(f, g, "ps_mul");
    const std::size_t T = std::min(f.trunc(), g.trunc());
    const Modulus m = f.modulus();
    QSeries r = Access::make(m, T, f.offset() + g.offset());

    if (m == 2) {
        const std::size_t W = word_count(T);
        std::vector<u64> a = bits_prefix(f, T), b = bits_prefix(g, T);
        if (popcount(a) > popcount(b))
            std::swap(a, b);
        auto& out = Access::bits(r);
        for (std::size_t i = 0; i < W; ++i) {
            u64 x = a[i];
            while (x) {
                const std::size_t s = i * 64 + std::countr_zero(x);
                xor_shifted(out.data(), W, b.data(), s);
                x &= x - 1;
            }
        }
        out.back() &= tail_mask(T);
        return r;
    }

    // Drive the product from the operand with fewer nonzero coefficients.
    const bool swap = nonzero_count_prefix(f, T) > nonzero_count_prefix(g, T);
    const QSeries& sparse = swap ? g : f;
    const QSeries& dense = swap ? f : g;

    if (m == 0) {
        auto& out = Access::exact(r);
        const auto &a = exact_of(sparse), &b = exact_of(dense);
        for (std::size_t i = 0; i <= T; ++i) {
            const mpz_class& ai = a[i];
            const int s = sgn(ai);
            if (s == 0)
                continue;
            const bool unit = (ai == 1 || ai == -1);
            for (std::size_t j = 0; i + j <= T; ++j) {
                if (sgn(b[j]) == 0)
                    continue;
                if (unit) {
                    if (s > 0)
                        out[i + j] += b[j];
                    else
                        out[i + j] -= b[j];
                } else {
                    mpz_addmul(out[i + j].get_mpz_t(), ai.get_mpz_t(), b[j].get_mpz_t());
                }
            }
        }
        return r;
    }

    auto& out = Access::residues(r);
    const auto &a = residues_of(sparse), &b = residues_of(dense);
    if (m < (u64{1} << 32)) {
        std::vector<u128> acc(T + 1, 0);
        for (std::size_t i = 0; i <= T; ++i) {
            const u64 ai = a[i];
            if (ai == 0)
                continue;
            for (std::size_t j = 0; i + j <= T; ++j)
                acc[i + j] += static_cast<u128>(ai * b[j]);
        }
        for (std::size_t n = 0; n <= T; ++n)
            out[n] = static_cast<u64>(acc[n] % m);
    } else {
        for (std::size_t i = 0; i <= T; ++i) {
            const u64 ai = a[i];
            if (ai == 0)
                continue;
            for (std::size_t j = 0; i + j <= T; ++j) {
                u64 s = out[i + j] + arith::mulmod(ai, b[j], m);
                out[i + j] = s >= m ? s - m : s;
            }
        }
    }
    return r;
}

QSeries ps_div(const QSeries& f, const QSeries& g)
{
    require_same_ring(f, g, "ps_div");
    const std::size_t T = std::min(f.trunc(), g.trunc());
    const Modulus m = f.modulus();

    if (m == 2) {
        if (!get_bit(bits_of(g), 0))
            throw SeriesError("ps_div: constant term of the denominator is not a unit");
        // g(q) g(q^2) ... g(q^{2^{J-1}}) = g^{2^J - 1}, and g^{2^J} = g(q^{2^J}) = 1 below q^{2^J}.
        QSeries r = truncate(f, T);
        for (std::size_t step = 1; step <= T; step *= 2)
            r = ps_mul(r, dilate(truncate(g, T / step), step, T));
        return Access::with_offset(std::move(r), f.offset() - g.offset());
    }

    QSeries r = Access::make(m, T, f.offset() - g.offset());

    if (m == 0) {
        const auto &num = exact_of(f), &den = exact_of(g);
        if (den[0] != 1 && den[0] != -1)
            throw SeriesError("ps_div: constant term of the denominator is not a unit in Z");
        const bool negate = den[0] == -1;
        struct Term {
            std::size_t k;
            int kind; // +1, -1, or 0 for a general coefficient
            const mpz_class* v;
        };
        std::vector<Term> support;
        for (std::size_t k = 1; k <= T; ++k) {
            if (sgn(den[k]) == 0)
                continue;
            const int kind = den[k] == 1 ? 1 : (den[k] == -1 ? -1 : 0);
            support.push_back({k, kind, &den[k]});
        }
        auto& out = Access::exact(r);
        mpz_class acc;
        for (std::size_t n = 0; n <= T; ++n) {
            acc = num[n];
            for (const Term& t : support) {
                if (t.k > n)
                    break;
                if (t.kind == 1)
                    acc -= out[n - t.k];
                else if (t.kind == -1)
                    acc += out[n - t.k];
                else
                    mpz_submul(acc.get_mpz_t(), t.v->get_mpz_t(), out[n - t.k].get_mpz_t());
            }
            if (negate)
                out[n] = -acc;
            else
                out[n] = acc;
        }
        return r;
    }

    const auto &num = residues_of(f), &den = residues_of(g);
    const auto inv0 = arith::inverse_mod(static_cast<std::int64_t>(den[0]), m);
    if (!inv0)
        throw SeriesError("ps_div: constant term of the denominator is not a unit mod " + std::to_string(m));
    std::vector<std::pair<std::size_t, u64>> support; // (k, -den[k] mod m)
    for (std::size_t k = 1; k <= T; ++k) {
        if (den[k] != 0)
            support.emplace_back(k, m - den[k]);
    }
    auto& out = Access::residues(r);
    for (std::size_t n = 0; n <= T; ++n) {
        ModAccumulator acc(m);
        acc.add(num[n]);
        for (const auto& [k, neg] : support) {
            if (k > n)
                break;
            acc.add(neg, out[n - k]);
        }
        out[n] = arith::mulmod(acc.value(), *inv0, m);
    }
    return r;
}

QSeries ps_inv(const QSeries& f)
{
    QSeries one = QSeries::one(f.modulus(), f.trunc());
    return ps_div(one, f);
}

QSeries ps_pow(const QSeries& f, std::int64_t e)
{
    if (e < 0)
        return ps_pow(ps_inv(f), -e);
    const std::size_t T = f.trunc();
    QSeries result = QSeries::one(f.modulus(), T);
    if (e == 0)
        return result;
    QSeries base = f;
    bool first = true;
    while (true) {
        if (e & 1) {
            result = first ? base : ps_mul(result, base);
            first = false;
        }
        e >>= 1;
        if (e == 0)
            break;
        // mod 2 squaring is the Frobenius map q -> q^2
        base = f.modulus() == 2 ? dilate(base, 2, T) : ps_mul(base, base);
    }
    return result;
}

// ---- exponent maps ---------------------------------------------------------

QSeries shift(const QSeries& f, std::size_t k)
{
    const std::size_t T = f.trunc() + k;
    QSeries r = Access::make(f.modulus(), T, f.offset());
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, QSeries::Exact>) {
                std::copy(s.c.begin(), s.c.end(), Access::exact(r).begin() + k);
            } else if constexpr (std::is_same_v<S, QSeries::Residues>) {
                std::copy(s.c.begin(), s.c.end(), Access::residues(r).begin() + k);
            } else {
                auto& out = Access::bits(r);
                std::vector<u64> padded(out.size(), 0);
                std::copy(s.w.begin(), s.w.end(), padded.begin());
                xor_shifted(out.data(), out.size(), padded.data(), k);
                out.back() &= tail_mask(T);
            }
        },
        f.store());
    return r;
}

QSeries dilate(const QSeries& f, std::size_t k, std::optional<std::size_t> cap)
{
    if (k == 0)
        throw SeriesError("dilate: factor must be positive");
    std::size_t T = f.trunc() * k + (k - 1);
    if (cap)
        T = std::min(T, *cap);
    QSeries r = Access::make(f.modulus(), T, f.offset() * static_cast<std::int64_t>(k));
    const std::size_t last = T / k;
    if (f.modulus() == 0) {
        auto& out = Access::exact(r);
        const auto& a = exact_of(f);
        for (std::size_t n = 0; n <= last; ++n)
            out[n * k] = a[n];
    } else if (f.modulus() == 2) {
        auto& out = Access::bits(r);
        const auto& a = bits_of(f);
        if (k == 1) {
            std::copy(a.begin(), a.begin() + out.size(), out.begin());
            out.back() &= tail_mask(T);
        } else {
            for (std::size_t i = 0; i < a.size() && i * 64 <= last; ++i) {
                u64 x = a[i];
                while (x) {
                    const std::size_t n = i * 64 + std::countr_zero(x);
                    if (n > last)
                        break;
                    flip_bit(out, n * k);
                    x &= x - 1;
                }
            }
        }
    } else {
        auto& out = Access::residues(r);
        const auto& a = residues_of(f);
        for (std::size_t n = 0; n <= last; ++n)
            out[n * k] = a[n];
    }
    return r;
}

QSeries extract_ap(const QSeries& f, std::size_t A, std::size_t B)
{
    if (A == 0)
        throw SeriesError("extract_ap: modulus A must be positive");
    if (B >= A)
        throw SeriesError("extract_ap: residue B must satisfy B < A");
    if (f.offset() != 0)
        throw SeriesError("extract_ap: series carries a fractional offset");
    if (f.trunc() < B)
        throw ShallowError(B, f.trunc());
    const std::size_t T = (f.trunc() - B) / A;
    QSeries r = Access::make(f.modulus(), T, 0);
    if (f.modulus() == 0) {
        auto& out = Access::exact(r);
        const auto& a = exact_of(f);
        for (std::size_t n = 0; n <= T; ++n)
            out[n] = a[A * n + B];
    } else if (f.modulus() == 2) {
        auto& out = Access::bits(r);
        const auto& a = bits_of(f);
        for (std::size_t n = 0; n <= T; ++n) {
            if (get_bit(a, A * n + B))
                flip_bit(out, n);
        }
    } else {
        auto& out = Access::residues(r);
        const auto& a = residues_of(f);
        for (std::size_t n = 0; n <= T; ++n)
            out[n] = a[A * n + B];
    }
    return r;
}

QSeries truncate(const QSeries& f, std::size_t trunc)
{
    if (trunc > f.trunc())
        throw ShallowError(trunc, f.trunc());
    if (trunc == f.trunc())
        return f;
    QSeries r = Access::make(f.modulus(), trunc, f.offset());
    if (f.modulus() == 0) {
        const auto& a = exact_of(f);
        std::copy(a.begin(), a.begin() + trunc + 1, Access::exact(r).begin());
    } else if (f.modulus() == 2) {
        Access::bits(r) = bits_prefix(f, trunc);
    } else {
        const auto& a = residues_of(f);
        std::copy(a.begin(), a.begin() + trunc + 1, Access::residues(r).begin());
    }
    return r;
}

QSeries reduce_mod(const QSeries& f, Modulus m)
{
    if (m == f.modulus())
        return f;
    if (m == 0)
        throw SeriesError("reduce_mod: cannot lift residues to exact integers");
    if (f.modulus() != 0 && f.modulus() % m != 0)
        throw SeriesError("reduce_mod: " + std::to_string(m) + " does not divide " + std::to_string(f.modulus()));
    QSeries r = Access::make(m, f.trunc(), f.offset());
    for (std::size_t n = 0; n <= f.trunc(); ++n) {
        const u64 v = f.coeff_mod(n, m);
        if (m == 2) {
            if (v)
                flip_bit(Access::bits(r), n);
        } else {
            Access::residues(r)[n] = v;
        }
    }
    return r;
}

QSeries with_offset(const QSeries& f, std::int64_t offset) { return Access::with_offset(f, offset); }

QSeries settle_offset(const QSeries& f)
{
    if (f.offset() < 0 || f.offset() % 24 != 0)
        throw SeriesError("settle_offset: offset " + std::to_string(f.offset())
                          + "/24 is not a nonnegative integer power of q");
    return Access::with_offset(shift(f, static_cast<std::size_t>(f.offset() / 24)), 0);
}

// ---- generators ------------------------------------------------------------

ThetaSpec ThetaSpec::euler_pentagonal(std::int64_t k)
{
    ThetaSpec s;
    s.kind = Kind::euler_pentagonal;
    s.a = 3 * k;
    s.b = -k;
    s.c = 0;
    s.divisor = 2;
    s.range = Range::all_integers;
    s.sign = Sign::alternating;
    return s;
}

ThetaSpec ThetaSpec::jacobi_cube()
{
    ThetaSpec s;
    s.kind = Kind::jacobi_cube;
    s.a = 1;
    s.b = 1;
    s.c = 0;
    s.divisor = 2;
    s.range = Range::nonnegative;
    s.sign = Sign::alternating;
    s.weight = Weight::odd_linear;
    return s;
}

ThetaSpec ThetaSpec::quadratic(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t divisor, Range range)
{
    ThetaSpec s;
    s.a = a;
    s.b = b;
    s.c = c;
    s.divisor = divisor;
    s.range = range;
    return s;
}

QSeries theta_series(const ThetaSpec& spec, std::size_t trunc, Modulus m)
{
    if (spec.divisor < 1)
        throw SeriesError("theta_series: divisor must be positive");
    if (spec.a < 0 || (spec.a == 0 && (spec.b <= 0 || spec.range == ThetaSpec::Range::all_integers)))
        throw SeriesError("theta_series: exponent polynomial must grow along the index range");

    std::vector<std::pair<std::size_t, std::int64_t>> terms;
    const __int128 limit = static_cast<__int128>(trunc) * spec.divisor;
    auto visit = [&](std::int64_t n) -> bool {
        const __int128 num = static_cast<__int128>(spec.a) * n * n + static_cast<__int128>(spec.b) * n + spec.c;
        if (num > limit)
            return false;
        if (num < 0)
            throw SeriesError("theta_series: exponent polynomial is negative at n = " + std::to_string(n));
        if (num % spec.divisor != 0)
            throw SeriesError("theta_series: exponent is not an integer at n = " + std::to_string(n));
        std::int64_t coef = spec.weight == ThetaSpec::Weight::odd_linear ? 2 * n + 1 : 1;
        if (spec.sign == ThetaSpec::Sign::alternating && (n % 2 != 0))
            coef = -coef;
        terms.emplace_back(static_cast<std::size_t>(num / spec.divisor), coef);
        return true;
    };

    // Walk outward from the vertex of the parabola in each admissible direction.
    const std::int64_t lo = spec.range == ThetaSpec::Range::all_integers
        ? std::numeric_limits<std::int64_t>::min()
        : (spec.range == ThetaSpec::Range::nonnegative ? 0 : 1);
    std::int64_t vertex = spec.a > 0 ? -spec.b / (2 * spec.a) : lo;
    vertex = std::max(vertex, lo);
    for (std::int64_t n = vertex;; ++n) {
        if (!visit(n) && (spec.a == 0 || 2 * spec.a * n + spec.b > 0))
            break;
    }
    for (std::int64_t n = vertex - 1; n >= lo; --n) {
        if (!visit(n) && 2 * spec.a * n + spec.b < 0)
            break;
    }

    QSeries r = Access::make(m, trunc, 0);
    if (m == 0) {
        auto& out = Access::exact(r);
        for (auto [e, c] : terms)
            out[e] += c;
    } else if (m == 2) {
        auto& out = Access::bits(r);
        for (auto [e, c] : terms) {
            if (c & 1)
                flip_bit(out, e);
        }
    } else {
        auto& out = Access::residues(r);
        for (auto [e, c] : terms)
            out[e] = (out[e] + arith::reduce(c, m)) % m;
    }
    return r;
}

QSeries euler_series(std::int64_t k, std::size_t trunc, Modulus m)
{
    if (k < 1)
        throw SeriesError("euler_series: k must be positive");
    return theta_series(ThetaSpec::euler_pentagonal(k), trunc, m);
}

QSeries mul_eta_power(const QSeries& x, std::int64_t k, std::int64_t e)
{
    if (k < 1)
        throw SeriesError("eta_power: k must be positive");
    const std::size_t trunc = x.trunc();
    const Modulus m = x.modulus();
    if (e == 0)
        return x;

    if (m == 2) {
        // f_k^{2^J} = f_{k 2^J} = 1 below q^{k 2^J}, so only e mod 2^J matters.
        unsigned J = 0;
        while ((static_cast<std::size_t>(k) << J) <= trunc)
            ++J;
        const std::int64_t period = std::int64_t{1} << J;
        const std::uint64_t E = static_cast<std::uint64_t>(((e % period) + period) % period);
        QSeries acc = x;
        for (unsigned i = 0; i < J; ++i) {
            if ((E >> i) & 1)
                acc = ps_mul(acc, euler_series(k << i, trunc, 2));
        }
        return acc;
    }

    const QSeries base = euler_series(k, trunc, m);
    QSeries acc = x;
    for (std::int64_t i = 0; i < (e > 0 ? e : -e); ++i)
        acc = e > 0 ? ps_mul(acc, base) : ps_div(acc, base);
    return acc;
}

QSeries eta_power(std::int64_t k, std::int64_t e, std::size_t trunc, Modulus m)
{
    if (k < 1)
        throw SeriesError("eta_power: k must be positive");
    if (e > 0 && m != 2) {
        // start from f_k itself rather than multiplying 1 by it
        return mul_eta_power(euler_series(k, trunc, m), k, e - 1);
    }
    return mul_eta_power(QSeries::one(m, trunc), k, e);
}

// ---- comparison ------------------------------------------------------------

Congruence series_congruent(const QSeries& f, const QSeries& g, Modulus m, std::size_t upto)
{
    require_same_offset(f, g, "series_congruent");
    const std::size_t avail = std::min(f.trunc(), g.trunc());
    if (upto > avail)
        throw ShallowError(upto, avail);
    if (m == 1)
        throw SeriesError("series_congruent: modulus 1 is meaningless");
    if (m == 0 && (f.modulus() != 0 || g.modulus() != 0))
        throw SeriesError("series_congruent: exact comparison needs exact series");

    Congruence result{upto, std::nullopt};
    if (m == 2 && f.modulus() == 2 && g.modulus() == 2) {
        const auto &a = bits_of(f), &b = bits_of(g);
        const std::size_t W = word_count(upto);
        for (std::size_t i = 0; i < W; ++i) {
            u64 x = a[i] ^ b[i];
            if (i + 1 == W)
                x &= tail_mask(upto);
            if (x) {
                const std::size_t n = i * 64 + std::countr_zero(x);
                result.first_mismatch = Mismatch{n, f.coeff(n), g.coeff(n)};
                return result;
            }
        }
        return result;
    }
    for (std::size_t n = 0; n <= upto; ++n) {
        if (m == 0) {
            const auto &a = exact_of(f), &b = exact_of(g);
            if (a[n] != b[n]) {
                result.first_mismatch = Mismatch{n, a[n], b[n]};
                return result;
            }
        } else {
            const u64 a = f.coeff_mod(n, m), b = g.coeff_mod(n, m);
            if (a != b) {
                result.first_mismatch
                    = Mismatch{n, mpz_class(static_cast<unsigned long>(a)), mpz_class(static_cast<unsigned long>(b))};
                return result;
            }
        }
    }
    return result;
}

// ---- serialization ---------------------------------------------------------

std::string to_string(const mpz_class& v) { return v.get_str(); }

nlohmann::json to_json(const QSeries& f)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (std::size_t n = 0; n <= f.trunc(); ++n) {
        const mpz_class c = f.coeff(n);
        if (c.fits_slong_p())
            coeffs.push_back(c.get_si());
        else
            coeffs.push_back(c.get_str());
    }
    nlohmann::json j;
    j["modulus"] = f.modulus();
    j["trunc"] = f.trunc();
    if (f.offset() != 0)
        j["offset"] = f.offset();
    j["coeffs"] = std::move(coeffs);
    return j;
}

QSeries series_from_json(const nlohmann::json& j)
{
    const Modulus m = j.at("modulus").get<Modulus>();
    const auto& cj = j.at("coeffs");
    std::vector<mpz_class> coeffs;
    coeffs.reserve(cj.size());
    for (const auto& c : cj) {
        if (c.is_string())
            coeffs.emplace_back(c.get<std::string>());
        else if (c.is_number_unsigned())
            coeffs.emplace_back(static_cast<unsigned long>(c.get<std::uint64_t>()));
        else
            coeffs.emplace_back(static_cast<long>(c.get<std::int64_t>()));
    }
    if (j.contains("trunc") && j.at("trunc").get<std::size_t>() + 1 != coeffs.size())
        throw SeriesError("series_from_json: trunc does not match the coefficient count");
    const std::int64_t offset = j.value("offset", std::int64_t{0});
    return QSeries::from_integers(m, coeffs, offset);
}

} // namespace regulus
