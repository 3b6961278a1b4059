#include <CLI11.hpp>

#include <regulus/catalog.hpp>
#include <regulus/density.hpp>
#include <regulus/etaquot.hpp>
#include <regulus/oracles.hpp>
#include <regulus/recipe.hpp>
#include <regulus/verify.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace regulus;

namespace {

constexpr int exit_usage = 2;

// Text containing ':' is an eta-quotient (`N=...; d:r ...`), anything else a recipe.
QSeries expand_spec(const std::string& spec, std::size_t T, Modulus m)
{
    if (spec.find(':') != std::string::npos)
        return eta_expand(EtaQuotient::parse(spec), T, m);
    return Recipe::parse(spec).evaluate(T, m);
}

void emit(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write " + path);
    out << text;
}

std::string series_text(const QSeries& f, const std::string& format)
{
    std::ostringstream os;
    if (format == "json") {
        os << to_json(f).dump() << '\n';
    } else if (format == "csv") {
        os << "n,coeff\n";
        for (std::size_t n = 0; n <= f.trunc(); ++n)
            os << n << ',' << to_string(f.coeff(n)) << '\n';
    } else {
        if (f.offset() != 0)
            os << "# q^(" << f.offset() << "/24)\n";
        for (std::size_t n = 0; n <= f.trunc(); ++n)
            os << (n ? "," : "") << to_string(f.coeff(n));
        os << '\n';
    }
    return os.str();
}

std::string report_text(const std::vector<Verdict>& vs, const DepthPolicy& policy, const std::string& format,
                        bool timing)
{
    std::ostringstream os;
    if (format == "json") {
        nlohmann::json j;
        j["schema_version"] = report_schema_version;
        j["policy"] = {{"name", policy.name}, {"max_depth", policy.max_depth}};
        nlohmann::json arr = nlohmann::json::array();
        std::map<std::string, int> counts{{"established", 0}, {"mismatch", 0}, {"shallow", 0}};
        for (const auto& v : vs) {
            arr.push_back(to_json(v, timing));
            ++counts[to_string(v.status)];
        }
        j["verdicts"] = arr;
        j["summary"] = counts;
        j["exit_code"] = exit_code(vs);
        os << j.dump(2) << '\n';
    } else {
        for (const auto& v : vs) {
            os << v.claim_id << ' ' << to_string(v.status) << " bound=" << v.bound;
            if (v.first_mismatch)
                os << " first_mismatch=" << v.first_mismatch->exponent;
            if (timing)
                os << " ms=" << static_cast<long long>(v.runtime_ms);
            if (!v.message.empty())
                os << " (" << v.message << ')';
            os << '\n';
        }
    }
    return os.str();
}

std::vector<std::int64_t> split_ints(const std::string& s)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        std::size_t used = 0;
        try {
            out.push_back(std::stoll(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw UsageError("bad integer list '" + s + "'");
    }
    return out;
}

bool lacks_conjectured_half(std::int64_t t)
{
    static const std::set<std::int64_t> listed{6, 10, 14, 15, 18, 20, 22, 26, 27, 28};
    return !listed.count(t);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"regulus: congruence, identity and parity checks for t-regular partitions"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format;

    auto* expand = app.add_subcommand("expand", "expand a recipe or eta-quotient to a coefficient prefix");
    std::string spec;
    std::size_t trunc = 20;
    Modulus modulus = 0;
    expand->add_option("spec", spec, "recipe (f9/f1) or eta-quotient (N=27; 1:1 9:2)")->required();
    expand->add_option("-T,--trunc", trunc, "last exponent")->check(CLI::PositiveNumber);
    expand->add_option("-m,--mod", modulus, "modulus, 0 for exact");
    expand->add_option("--format", format, "json|text|csv")->check(CLI::IsMember({"json", "text", "csv"}));
    expand->add_option("--out", out_path, "output file");

    auto* verify = app.add_subcommand("verify", "run claims from the catalog");
    std::vector<std::string> ids;
    std::string policy_name;
    std::size_t custom_depth = 0;
    std::string catalog_path;
    bool no_timing = false;
    unsigned threads = 0;
    verify->add_option("ids", ids, "claim ids, group names or all")->required();
    auto* quick = verify->add_flag("--quick", "quick depth policy");
    auto* full = verify->add_flag("--full", "full depth policy");
    auto* pol = verify->add_option("--policy", policy_name, "quick|full")->check(CLI::IsMember({"quick", "full"}));
    auto* depth = verify->add_option("-T,--trunc", custom_depth, "custom depth policy: largest expansion")
                      ->check(CLI::PositiveNumber);
    quick->excludes(full)->excludes(pol)->excludes(depth);
    full->excludes(pol)->excludes(depth);
    pol->excludes(depth);
    verify->add_option("--catalog", catalog_path, "claim catalog JSON (default: built in)");
    verify->add_flag("--no-timing", no_timing, "omit runtimes, for byte-stable reports");
    verify->add_option("-j,--jobs", threads, "worker threads (default: REGULUS_THREADS or all cores)");
    verify->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    verify->add_option("--out", out_path, "output file");

    auto* density = app.add_subcommand("density", "parity censuses");
    std::string family;
    std::string ks = "0,1,2";
    std::int64_t t = 6;
    std::size_t X = 100000;
    double tolerance = 0.02;
    density->add_option("family", family, "7reg, 13reg or bt")->required()->check(CLI::IsMember({"7reg", "13reg", "bt"}));
    density->add_option("--k", ks, "comma separated k values (7reg, 13reg)");
    density->add_option("--t", t, "t for the bt census")->check(CLI::Range(2, 1000));
    density->add_option("-X", X, "last exponent counted");
    density->add_option("--tolerance", tolerance, "largest allowed gap between family densities");
    density->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    density->add_option("--out", out_path, "output file");

    auto* eta = app.add_subcommand("eta", "holomorphy, weight and character of an eta-quotient");
    std::string eta_text;
    eta->add_option("quotient", eta_text, "e.g. \"p=53; N=27p; 1:1 9:2 3:-1 p:1 3p:2 9p:1\"")->required();
    eta->add_option("--out", out_path, "output file");

    auto* oracle = app.add_subcommand("oracle", "exact p(n) and b_t(n) modulo 10^9 as CSV");
    std::size_t N = 100;
    oracle->add_option("--t", t, "t")->check(CLI::Range(2, 1000000));
    oracle->add_option("-N", N, "last n");
    oracle->add_option("--out", out_path, "output file");

    auto* claims = app.add_subcommand("claims", "list the claim catalog");
    claims->add_option("--catalog", catalog_path, "claim catalog JSON (default: built in)");
    claims->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    try {
        if (*expand) {
            emit(out_path, series_text(expand_spec(spec, trunc, modulus), format.empty() ? "text" : format));
            return 0;
        }
        if (*verify) {
            DepthPolicy policy = DepthPolicy::quick();
            if (*full)
                policy = DepthPolicy::full();
            else if (*pol)
                policy = DepthPolicy::named(policy_name);
            else if (*depth)
                policy = DepthPolicy::custom(custom_depth);
            const Catalog cat = catalog_path.empty() ? Catalog(Catalog::builtin()) : Catalog::load(catalog_path);
            const auto verdicts = run_claims(cat.select(ids), policy, threads);
            emit(out_path, report_text(verdicts, policy, format.empty() ? "json" : format, !no_timing));
            return exit_code(verdicts);
        }
        if (*density) {
            std::ostringstream os;
            const bool json = format == "json";
            if (family == "bt") {
                const auto c = parity_census(Recipe::parse("f" + std::to_string(t) + "/f1"), X);
                if (json) {
                    nlohmann::json j = to_json(c);
                    j["t"] = t;
                    if (!lacks_conjectured_half(t))
                        j["conjectured_density"] = 0.5;
                    os << j.dump(2) << '\n';
                } else {
                    write_census_csv_header(os);
                    write_census_csv_row(os, "b" + std::to_string(t), t, c);
                }
            } else {
                const auto k_values = split_ints(ks);
                for (auto k : k_values)
                    if (k < 0)
                        throw UsageError("k must be nonnegative");
                const auto rep = family_density_compare(family, k_values, X, tolerance);
                if (json) {
                    os << to_json(rep).dump(2) << '\n';
                } else {
                    write_census_csv_header(os);
                    for (const auto& row : rep.rows)
                        write_census_csv_row(os, family, row.k, row.census);
                }
            }
            emit(out_path, os.str());
            return 0;
        }
        if (*eta) {
            const EtaQuotient E = EtaQuotient::parse(eta_text);
            const auto rep = is_holomorphic_form(E);
            emit(out_path, to_json(E, rep).dump(2) + "\n");
            return rep.holomorphic ? 0 : 1;
        }
        if (*oracle) {
            std::ostringstream os;
            oracles::write_csv(os, t, N);
            emit(out_path, os.str());
            return 0;
        }
        if (*claims) {
            const Catalog cat = catalog_path.empty() ? Catalog(Catalog::builtin()) : Catalog::load(catalog_path);
            if (format == "json") {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& e : cat.claims())
                    arr.push_back({{"id", e.id}, {"group", e.group}, {"driver", e.driver}, {"statement", e.statement}});
                std::cout << arr.dump(2) << '\n';
            } else {
                for (const auto& e : cat.claims())
                    std::cout << e.id << "  " << e.statement << '\n';
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.position() << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const EtaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ShallowError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const SeriesError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
