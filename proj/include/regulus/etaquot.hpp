#pragma once

// Eta-quotients prod_{delta | N} eta(delta z)^{r_delta}: weight, the two
// mod-24 level conditions, the Kronecker character, cusp orders and the
// lacunarity inequality for mod-2 coefficients.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include <regulus/series.hpp>

namespace regulus {

class EtaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EtaQuotient {
    std::int64_t level = 1;
    std::map<std::int64_t, std::int64_t> exps; ///< delta -> r_delta

    /// Throws EtaError unless every key is a positive divisor of the level.
    void validate() const;

    /// `p=53; N=27p; 1:1 9:2 3:-1 p:1 3p:2 9p:1`. Names are bound by
    /// `name=value` clauses; `N=` sets the level (default: lcm of the deltas).
    static EtaQuotient parse(std::string_view text);
    std::string to_string() const;
};

/// Half-integer stored as twice its value.
struct HalfInteger {
    std::int64_t twice = 0;

    bool integral() const noexcept { return twice % 2 == 0; }
    std::int64_t value() const; ///< throws unless integral
    std::string to_string() const;
};

HalfInteger eta_weight(const EtaQuotient& E);

struct LevelConditions {
    std::int64_t delta_sum = 0;   ///< sum delta r_delta
    std::int64_t codelta_sum = 0; ///< sum (N / delta) r_delta

    bool delta_ok() const noexcept { return delta_sum % 24 == 0; }
    bool codelta_ok() const noexcept { return codelta_sum % 24 == 0; }
    bool holds() const noexcept { return delta_ok() && codelta_ok(); }
};

LevelConditions check_level_conditions(const EtaQuotient& E);

/// chi(d) = ((-1)^l s / d) with s = prod delta^{r_delta}, tracked through the
/// parity of each prime's exponent; s itself is never formed.
struct CharacterDescriptor {
    std::int64_t weight = 0;
    int sign = 1;                        ///< (-1)^l
    std::int64_t kernel = 1;             ///< squarefree part of s, positive
    std::vector<std::int64_t> primes;    ///< primes with nonzero exponent in s

    std::int64_t discriminant() const noexcept { return sign * kernel; }
    int operator()(std::int64_t d) const;
};

/// Throws EtaError when the weight is not an integer.
CharacterDescriptor eta_character_descriptor(const EtaQuotient& E);
int eta_character(const EtaQuotient& E, std::int64_t d);

/// Order of vanishing at the cusps c/d, gcd(c, d) = 1; d must divide N.
mpq_class cusp_order(const EtaQuotient& E, std::int64_t d);

struct HolomorphyReport {
    bool holomorphic = false;
    HalfInteger weight;
    LevelConditions level;
    std::optional<CharacterDescriptor> character;
    std::vector<std::pair<std::int64_t, mpq_class>> orders; ///< one per divisor of N
    std::string reason;                                     ///< empty when holomorphic
};

/// Integer weight, both level conditions and a nonnegative order at every cusp.
/// Half-integral weights are refused rather than analysed.
HolomorphyReport is_holomorphic_form(const EtaQuotient& E);

nlohmann::json to_json(const EtaQuotient& E, const HolomorphyReport& r);

/// prod f_delta^{r_delta} to T with offset sum delta r_delta (units of 1/24).
QSeries eta_expand(const EtaQuotient& E, std::size_t T, Modulus m);

/// Lacunarity mod 2 of prod f_a^r / prod f_c^s: sum r/a >= sum s c, exactly.
bool cotron_lacunarity_applicable(const std::map<std::int64_t, std::int64_t>& numerator,
                                  const std::map<std::int64_t, std::int64_t>& denominator);

} // namespace regulus
