#include <regulus/etaquot.hpp>

#include <regulus/arith.hpp>

#include <cctype>
#include <numeric>
#include <sstream>

namespace regulus {

void EtaQuotient::validate() const
{
    if (level < 1)
        throw EtaError("eta-quotient level must be positive");
    for (const auto& [delta, r] : exps) {
        if (delta < 1 || level % delta != 0)
            throw EtaError("eta-quotient: " + std::to_string(delta) + " does not divide N = " + std::to_string(level));
    }
}

namespace {

std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return std::string(s.substr(a, b - a));
}

// A product of integer literals and bound names, written "27p", "3*p" or "9 p".
std::int64_t eval_product(std::string_view text, const std::map<std::string, std::int64_t>& vars)
{
    std::int64_t v = 1;
    bool any = false;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            v *= std::stoll(std::string(text.substr(i, j - i)));
            i = j;
            any = true;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j])) && !std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            const std::string name(text.substr(i, j - i));
            auto it = vars.find(name);
            if (it == vars.end())
                throw EtaError("eta-quotient: unbound name '" + name + "'");
            v *= it->second;
            i = j;
            any = true;
        } else {
            throw EtaError("eta-quotient: unexpected '" + std::string(1, c) + "' in '" + std::string(text) + "'");
        }
    }
    if (!any)
        throw EtaError("eta-quotient: empty value");
    return v;
}

// Exponent of every prime in s = prod delta^{r_delta}.
std::map<std::int64_t, std::int64_t> s_exponents(const EtaQuotient& E)
{
    std::map<std::int64_t, std::int64_t> e;
    for (const auto& [delta, r] : E.exps)
        for (const auto& [p, k] : arith::factorize(delta))
            e[p] += static_cast<std::int64_t>(k) * r;
    return e;
}

} // namespace

EtaQuotient EtaQuotient::parse(std::string_view text)
{
    std::map<std::string, std::int64_t> vars;
    std::optional<std::int64_t> level;
    EtaQuotient E;

    std::stringstream clauses{std::string(text)};
    std::string clause;
    while (std::getline(clauses, clause, ';')) {
        clause = trim(clause);
        if (clause.empty())
            continue;
        if (auto eq = clause.find('='); eq != std::string::npos) {
            const std::string name = trim(std::string_view(clause).substr(0, eq));
            const std::int64_t value = eval_product(std::string_view(clause).substr(eq + 1), vars);
            if (name == "N")
                level = value;
            else
                vars[name] = value;
            continue;
        }
        std::stringstream items(clause);
        std::string item;
        while (items >> item) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw EtaError("eta-quotient: expected delta:r, got '" + item + "'");
            const std::int64_t delta = eval_product(std::string_view(item).substr(0, colon), vars);
            const std::string r = item.substr(colon + 1);
            std::size_t used = 0;
            std::int64_t exponent = 0;
            try {
                exponent = std::stoll(r, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != r.size())
                throw EtaError("eta-quotient: bad exponent '" + r + "'");
            E.exps[delta] += exponent;
        }
    }
    if (level) {
        E.level = *level;
    } else {
        E.level = 1;
        for (const auto& [delta, r] : E.exps)
            E.level = std::lcm(E.level, delta);
    }
    E.validate();
    return E;
}

std::string EtaQuotient::to_string() const
{
    std::string s = "N=" + std::to_string(level) + ";";
    for (const auto& [delta, r] : exps)
        s += " " + std::to_string(delta) + ":" + std::to_string(r);
    return s;
}

std::int64_t HalfInteger::value() const
{
    if (!integral())
        throw EtaError("weight " + to_string() + " is not an integer");
    return twice / 2;
}

std::string HalfInteger::to_string() const
{
    return integral() ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
}

HalfInteger eta_weight(const EtaQuotient& E)
{
    HalfInteger w;
    for (const auto& [delta, r] : E.exps)
        w.twice += r;
    return w;
}

LevelConditions check_level_conditions(const EtaQuotient& E)
{
    E.validate();
    LevelConditions c;
    for (const auto& [delta, r] : E.exps) {
        c.delta_sum += delta * r;
        c.codelta_sum += (E.level / delta) * r;
    }
    return c;
}

int CharacterDescriptor::operator()(std::int64_t d) const
{
    for (std::int64_t p : primes)
        if (d % p == 0)
            return 0;
    return arith::kronecker(discriminant(), d);
}

CharacterDescriptor eta_character_descriptor(const EtaQuotient& E)
{
    CharacterDescriptor chi;
    chi.weight = eta_weight(E).value();
    chi.sign = chi.weight % 2 == 0 ? 1 : -1;
    for (const auto& [p, e] : s_exponents(E)) {
        if (e == 0)
            continue;
        chi.primes.push_back(p);
        if (e % 2 != 0)
            chi.kernel *= p;
    }
    return chi;
}

int eta_character(const EtaQuotient& E, std::int64_t d) { return eta_character_descriptor(E)(d); }

mpq_class cusp_order(const EtaQuotient& E, std::int64_t d)
{
    E.validate();
    if (d < 1 || E.level % d != 0)
        throw EtaError("cusp_order: " + std::to_string(d) + " does not divide N = " + std::to_string(E.level));
    const std::int64_t g = std::gcd(d, E.level / d);
    mpq_class sum = 0;
    for (const auto& [delta, r] : E.exps) {
        const std::int64_t h = std::gcd(d, delta);
        sum += mpq_class(mpz_class(h) * h * r, mpz_class(g) * d * delta);
    }
    sum *= mpq_class(E.level, 24);
    sum.canonicalize();
    return sum;
}

HolomorphyReport is_holomorphic_form(const EtaQuotient& E)
{
    E.validate();
    HolomorphyReport rep;
    rep.weight = eta_weight(E);
    rep.level = check_level_conditions(E);
    for (std::int64_t d : arith::divisors(E.level))
        rep.orders.emplace_back(d, cusp_order(E, d));

    if (!rep.weight.integral()) {
        rep.reason = "half-integral weight " + rep.weight.to_string() + " is not handled";
        return rep;
    }
    rep.character = eta_character_descriptor(E);
    if (!rep.level.delta_ok())
        rep.reason = "sum delta r_delta = " + std::to_string(rep.level.delta_sum) + " is not 0 mod 24";
    else if (!rep.level.codelta_ok())
        rep.reason = "sum (N/delta) r_delta = " + std::to_string(rep.level.codelta_sum) + " is not 0 mod 24";
    else
        for (const auto& [d, order] : rep.orders)
            if (sgn(order) < 0) {
                rep.reason = "negative order " + order.get_str() + " at the cusps over d = " + std::to_string(d);
                break;
            }
    rep.holomorphic = rep.reason.empty();
    return rep;
}

nlohmann::json to_json(const EtaQuotient& E, const HolomorphyReport& r)
{
    nlohmann::json j;
    j["level"] = E.level;
    nlohmann::json exps = nlohmann::json::object();
    for (const auto& [delta, e] : E.exps)
        exps[std::to_string(delta)] = e;
    j["exps"] = exps;
    j["weight"] = r.weight.to_string();
    j["level_conditions"] = {{"sum_delta_r", r.level.delta_sum},
                             {"sum_codelta_r", r.level.codelta_sum},
                             {"delta_ok", r.level.delta_ok()},
                             {"codelta_ok", r.level.codelta_ok()}};
    if (r.character)
        j["character"] = {{"kernel", r.character->discriminant()}, {"primes", r.character->primes}};
    nlohmann::json orders = nlohmann::json::array();
    for (const auto& [d, o] : r.orders)
        orders.push_back({{"d", d}, {"order", o.get_str()}});
    j["cusp_orders"] = orders;
    j["holomorphic"] = r.holomorphic;
    if (!r.reason.empty())
        j["reason"] = r.reason;
    return j;
}

QSeries eta_expand(const EtaQuotient& E, std::size_t T, Modulus m)
{
    E.validate();
    QSeries x = QSeries::one(m, T);
    std::int64_t offset = 0;
    for (const auto& [delta, r] : E.exps) {
        x = mul_eta_power(x, delta, r);
        offset += delta * r;
    }
    return with_offset(x, offset);
}

bool cotron_lacunarity_applicable(const std::map<std::int64_t, std::int64_t>& numerator,
                                  const std::map<std::int64_t, std::int64_t>& denominator)
{
    mpq_class lhs = 0;
    mpq_class rhs = 0;
    for (const auto& [a, r] : numerator) {
        if (a < 1 || r < 1)
            throw EtaError("lacunarity test needs positive indices and exponents");
        lhs += mpq_class(r, a);
    }
    for (const auto& [c, s] : denominator) {
        if (c < 1 || s < 1)
            throw EtaError("lacunarity test needs positive indices and exponents");
        rhs += mpz_class(s) * c;
    }
    lhs.canonicalize();
    return lhs >= rhs;
}

} // namespace regulus
