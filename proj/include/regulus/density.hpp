#pragma once

// Parity censuses of series coefficients and the estimators built on them.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include <regulus/recipe.hpp>
#include <regulus/series.hpp>

namespace regulus {

struct ParityCensus {
    std::size_t X = 0;
    std::size_t evens = 0;
    std::size_t odds = 0;

    /// odds / X, with X = 0 read as odds / 1.
    mpq_class delta1() const;
    double delta1_value() const { return delta1().get_d(); }

};

/// Counts over exponents 0..X of f reduced mod 2; f must be valid through X.
ParityCensus parity_census(const QSeries& f, std::size_t X);
ParityCensus parity_census(const Recipe& recipe, std::size_t X);

struct SqrtBoundRow {
    std::size_t X = 0;
    std::size_t evens = 0;
    double root = 0; ///< sqrt(X), or sqrt(X/3) on the b14(2n) lane
    double ratio = 0;
};

struct SqrtBoundReport {
    std::int64_t t = 0;
    std::string series;
    std::vector<SqrtBoundRow> rows;
    double constant = 0; ///< min evens / root over the rows with X > 0
    bool monotone = true;
    bool above_root = true; ///< evens >= root on every row

    bool holds() const noexcept { return monotone && above_root && (rows.empty() || constant > 0); }
};

/// t in {6, 10}: evens among b_t(n); t = 14: evens among b14(2n).
SqrtBoundReport sqrt_lowerbound_report(std::int64_t t, std::span<const std::size_t> Xs);

/// f_p^{pk+1} / f_1^{k+1} for family "7reg" (p = 7) or "13reg" (p = 13).
std::string family_recipe(const std::string& family, std::int64_t k);

struct FamilyRow {
    std::int64_t k = 0;
    ParityCensus census;
};

struct FamilyReport {
    std::string family;
    std::size_t X = 0;
    std::vector<FamilyRow> rows;
    double max_gap = 0;
    double tolerance = 0.02;

    bool consistent() const noexcept { return max_gap < tolerance; }
};

FamilyReport family_density_compare(const std::string& family, std::span<const std::int64_t> ks, std::size_t X,
                                    double tolerance = 0.02);

void write_census_csv_header(std::ostream& out);
void write_census_csv_row(std::ostream& out, const std::string& family, std::int64_t k, const ParityCensus& c);

nlohmann::json to_json(const ParityCensus& c);
nlohmann::json to_json(const SqrtBoundReport& r);
nlohmann::json to_json(const FamilyReport& r);

} // namespace regulus
