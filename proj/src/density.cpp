#include <regulus/density.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace regulus {

mpq_class ParityCensus::delta1() const
{
    mpq_class d(mpz_class(odds), mpz_class(X == 0 ? 1 : X));
    d.canonicalize();
    return d;
}

ParityCensus parity_census(const QSeries& f, std::size_t X)
{
    if (f.trunc() < X)
        throw ShallowError(X, f.trunc());
    const QSeries g = f.modulus() == 2 ? truncate(f, X) : reduce_mod(truncate(f, X), 2);
    ParityCensus c;
    c.X = X;
    c.odds = g.support_size();
    c.evens = X + 1 - c.odds;
    return c;
}

ParityCensus parity_census(const Recipe& recipe, std::size_t X) { return parity_census(recipe.evaluate(X, 2), X); }

SqrtBoundReport sqrt_lowerbound_report(std::int64_t t, std::span<const std::size_t> Xs)
{
    if (t != 6 && t != 10 && t != 14)
        throw std::invalid_argument("sqrt_lowerbound_report: t must be 6, 10 or 14");
    SqrtBoundReport rep;
    rep.t = t;
    rep.series = t == 14 ? "ap(f14/f1, 2, 0)" : "f" + std::to_string(t) + "/f1";
    std::size_t top = 0;
    for (std::size_t X : Xs)
        top = std::max(top, X);
    const QSeries s = Recipe::parse(rep.series).evaluate(top, 2);

    bool first = true;
    bool have_constant = false;
    std::size_t prev_evens = 0;
    for (std::size_t X : Xs) {
        SqrtBoundRow row;
        row.X = X;
        row.evens = parity_census(s, X).evens;
        row.root = t == 14 ? std::sqrt(static_cast<double>(X) / 3.0) : std::sqrt(static_cast<double>(X));
        row.ratio = row.root > 0 ? static_cast<double>(row.evens) / row.root : 0.0;
        if (!first && row.evens < prev_evens)
            rep.monotone = false;
        if (static_cast<double>(row.evens) < row.root)
            rep.above_root = false;
        if (X > 0) {
            rep.constant = have_constant ? std::min(rep.constant, row.ratio) : row.ratio;
            have_constant = true;
        }
        prev_evens = row.evens;
        first = false;
        rep.rows.push_back(row);
    }
    return rep;
}

std::string family_recipe(const std::string& family, std::int64_t k)
{
    if (k < 0)
        throw std::invalid_argument("family index k must be nonnegative");
    std::int64_t p = 0;
    if (family == "7reg")
        p = 7;
    else if (family == "13reg")
        p = 13;
    else
        throw std::invalid_argument("unknown family '" + family + "' (expected 7reg or 13reg)");
    std::ostringstream s;
    s << 'f' << p << '^' << p * k + 1 << "/f1^" << k + 1;
    return s.str();
}

FamilyReport family_density_compare(const std::string& family, std::span<const std::int64_t> ks, std::size_t X,
                                    double tolerance)
{
    FamilyReport rep;
    rep.family = family;
    rep.X = X;
    rep.tolerance = tolerance;
    for (std::int64_t k : ks)
        rep.rows.push_back({k, parity_census(Recipe::parse(family_recipe(family, k)), X)});
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        for (std::size_t j = i + 1; j < rep.rows.size(); ++j)
            rep.max_gap = std::max(rep.max_gap, std::abs(rep.rows[i].census.delta1_value()
                                                         - rep.rows[j].census.delta1_value()));
    return rep;
}

void write_census_csv_header(std::ostream& out) { out << "family,k,X,evens,odds,delta1\n"; }

void write_census_csv_row(std::ostream& out, const std::string& family, std::int64_t k, const ParityCensus& c)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", c.delta1_value());
    out << family << ',' << k << ',' << c.X << ',' << c.evens << ',' << c.odds << ',' << buf << '\n';
}

nlohmann::json to_json(const ParityCensus& c)
{
    return {{"X", c.X}, {"evens", c.evens}, {"odds", c.odds}, {"delta1", c.delta1().get_str()},
            {"delta1_decimal", c.delta1_value()}};
}

nlohmann::json to_json(const SqrtBoundReport& r)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"X", row.X}, {"evens", row.evens}, {"root", row.root}, {"ratio", row.ratio}});
    return {{"t", r.t},         {"series", r.series},         {"rows", rows},        {"constant", r.constant},
            {"monotone", r.monotone}, {"above_root", r.above_root}, {"holds", r.holds()}};
}

nlohmann::json to_json(const FamilyReport& r)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        auto j = to_json(row.census);
        j["k"] = row.k;
        j["series"] = family_recipe(r.family, row.k);
        rows.push_back(j);
    }
    return {{"family", r.family},         {"X", r.X},
            {"rows", rows},               {"max_gap", r.max_gap},
            {"tolerance", r.tolerance},   {"consistent", r.consistent()}};
}

} // namespace regulus
