#include "avgent/avgent.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kCap = 3 };

struct Common {
    std::string format = "table";
    unsigned precision = 30;
    std::uint64_t seed = 0;
    unsigned workers   = std::max(1u, std::thread::hardware_concurrency());
    std::string archive;
    std::string output;
};

// Thrown to unwind with a specific exit code after the message has been reported.
struct ExitWith {
    int code;
};

int exit_code(avgent_status s) {
    switch (s) {
    case AVGENT_OK: return kOk;
    case AVGENT_ERR_INVALID:
    case AVGENT_ERR_DOMAIN: return kUsage;
    case AVGENT_ERR_CAP:
    case AVGENT_ERR_IO: return kCap;
    case AVGENT_ERR_PRECISION:
    case AVGENT_ERR_INTERNAL: return kCheckFailed;
    }
    return kCheckFailed;
}

void check(avgent_status s) {
    if (s == AVGENT_OK) return;
    std::cerr << "avgent: " << avgent_last_error() << "\n";
    throw ExitWith{exit_code(s)};
}

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ordered_json opt_json(const std::optional<std::string>& s) { return s ? ordered_json(*s) : ordered_json(nullptr); }

const char* c_str(const std::optional<std::string>& s) { return s ? s->c_str() : nullptr; }

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string aligned(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = header[i].size();
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            s += cells[i];
            if (i + 1 < cells.size()) s += std::string(w[i] - cells[i].size() + 2, ' ');
        }
        return s + "\n";
    };
    std::string out = line(header);
    for (const auto& r : rows) out += line(r);
    return out;
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    auto line = [](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + csv_cell(cells[i]);
        return s + "\n";
    };
    std::string out = line(header);
    for (const auto& r : rows) out += line(r);
    return out;
}

// Metadata block carried by every output: enough to rerun the command exactly.
ordered_json meta(const std::string& command, const Common& c, ordered_json config) {
    config["seed"]      = c.seed;
    config["precision"] = c.precision;
    config["workers"]   = c.workers;
    config["format"]    = c.format;
    return ordered_json{{"tool", "avgent"}, {"tool_version", avgent_version()}, {"command", command}, {"config", config}};
}

// Header comment lines for table and CSV output.
std::string meta_comment(const ordered_json& m) {
    return "# avgent " + m["tool_version"].get<std::string>() + " " + m["command"].get<std::string>() + "\n# config " +
           m["config"].dump() + "\n";
}

void emit(const Common& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(c.output, std::ios::binary);
    if (!out || !(out << text)) {
        std::cerr << "avgent: cannot write output file '" << c.output << "'\n";
        throw ExitWith{kCap};
    }
}

void archive(const Common& c, const ordered_json& m, const ordered_json& result, const ordered_json& extra) {
    if (c.archive.empty()) return;
    ordered_json config = m["config"];
    config["command"]   = m["command"];
    check(avgent_archive_append(c.archive.c_str(), config.dump().c_str(), result.dump().c_str(), extra.dump().c_str()));
}

void add_common(CLI::App* app, Common& c, bool uses_seed) {
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
    app->add_option("--precision", c.precision, "Decimal digits in rendered values (1-90)")
        ->check(CLI::Range(1u, 90u));
    if (uses_seed) {
        app->add_option("--seed", c.seed, "Base seed for Monte Carlo sampling");
        app->add_option("--workers", c.workers, "Worker threads (never changes results)")->check(CLI::Range(1u, 4096u));
    }
    app->add_option("--archive", c.archive, "Append a run record to this file");
    app->add_option("--output", c.output, "Write output to this file instead of stdout");
}

// ---- analytic --------------------------------------------------------------

struct AnalyticArgs {
    std::string quantity;
    std::optional<std::string> dims, keep, a, b;
    std::optional<std::uint64_t> m;
};

int run_analytic(const AnalyticArgs& args, const Common& c) {
    avgent_analytic_request req{};
    req.quantity = args.quantity.c_str();
    req.dims     = c_str(args.dims);
    req.keep     = c_str(args.keep);
    req.a        = c_str(args.a);
    req.b        = c_str(args.b);
    req.has_m    = args.m.has_value();
    req.m        = args.m.value_or(0);
    req.digits   = c.precision;
    avgent_rows* rows = nullptr;
    check(avgent_analytic_eval(&req, &rows));
    std::unique_ptr<avgent_rows, decltype(&avgent_rows_free)> guard(rows, avgent_rows_free);

    ordered_json config{{"quantity", args.quantity}, {"dims", opt_json(args.dims)}, {"keep", opt_json(args.keep)},
                        {"a", opt_json(args.a)},       {"b", opt_json(args.b)},
                        {"m", args.m ? ordered_json(*args.m) : ordered_json(nullptr)}};
    const ordered_json m = meta("analytic", c, config);

    ordered_json results = ordered_json::array();
    std::vector<std::vector<std::string>> table;
    for (std::size_t i = 0; i < avgent_rows_count(rows); ++i) {
        const char* exact = avgent_rows_exact(rows, i);
        const char* slack = avgent_rows_slack(rows, i);
        const bool approx = avgent_rows_approximation(rows, i);
        results.push_back({{"label", avgent_rows_label(rows, i)},
                           {"exact", exact ? ordered_json(exact) : ordered_json(nullptr)},
                           {"decimal", avgent_rows_decimal(rows, i)},
                           {"approximation", approx},
                           {"slack", slack ? ordered_json(slack) : ordered_json(nullptr)}});
        table.push_back({avgent_rows_label(rows, i), exact ? exact : "-", avgent_rows_decimal(rows, i),
                         approx ? std::string("approximation within ") + (slack ? slack : "?") + " nat"
                                : std::string(exact ? "exact rational" : "closed form")});
    }

    const std::vector<std::string> header{"quantity", "exact", "decimal", "kind"};
    if (c.format == "json")
        emit(c, ordered_json{{"meta", m}, {"results", results}}.dump(2) + "\n");
    else if (c.format == "csv")
        emit(c, meta_comment(m) + csv(header, table));
    else
        emit(c, meta_comment(m) + aligned(header, table));
    archive(c, m, results, ordered_json::object());
    return kOk;
}

// ---- mc --------------------------------------------------------------------

struct McArgs {
    std::string dims, quantity;
    std::optional<std::string> keep, a, b;
    double q              = 2.0;
    std::uint64_t samples = 100000;
};

int run_mc(const McArgs& args, const Common& c) {
    avgent_mc_request req{};
    req.dims     = args.dims.c_str();
    req.quantity = args.quantity.c_str();
    req.keep     = c_str(args.keep);
    req.a        = c_str(args.a);
    req.b        = c_str(args.b);
    req.q        = args.q;
    req.samples  = args.samples;
    req.seed     = c.seed;
    req.workers  = c.workers;
    avgent_mc_result r{};
    check(avgent_mc_estimate(&req, &r));

    ordered_json config{{"dims", args.dims},        {"quantity", args.quantity}, {"keep", opt_json(args.keep)},
                        {"a", opt_json(args.a)},    {"b", opt_json(args.b)},     {"q", args.q},
                        {"samples", args.samples}};
    const ordered_json m = meta("mc", c, config);

    ordered_json result{{"estimate", r.descriptor}, {"mean", r.mean},   {"stderr", r.std_error},
                        {"samples", r.samples},      {"seed", r.seed}};
    ordered_json extra = ordered_json::object();
    std::vector<std::vector<std::string>> table{{"estimate", r.descriptor},
                                                {"mean", g17(r.mean)},
                                                {"stderr", g17(r.std_error)},
                                                {"samples", std::to_string(r.samples)},
                                                {"seed", std::to_string(r.seed)}};
    if (r.has_oracle) {
        const double z = std::abs(r.mean - r.oracle) / r.std_error;
        result["oracle"] = r.oracle;
        result["z"]      = z;
        extra["oracle"]  = r.oracle;
        extra["z"]       = z;
        table.push_back({"oracle", g17(r.oracle)});
        table.push_back({"z", g17(z)});
    }
    if (r.has_upper_bound) {
        const double z        = (r.mean - r.upper_bound) / r.std_error;
        result["upper_bound"] = r.upper_bound;
        result["z_above_bound"] = z;
        extra["oracle"]       = r.upper_bound;
        extra["z"]            = z;
        table.push_back({"upper_bound", g17(r.upper_bound)});
        table.push_back({"z_above_bound", g17(z)});
    }

    if (c.format == "json")
        emit(c, ordered_json{{"meta", m}, {"result", result}}.dump(2) + "\n");
    else if (c.format == "csv")
        emit(c, meta_comment(m) + csv({"field", "value"}, table));
    else
        emit(c, meta_comment(m) + aligned({"field", "value"}, table));
    archive(c, m, result, extra);
    return kOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string check = "all";
    avgent_verify_config cfg{};
    std::optional<std::uint64_t> big_m_max;
};

std::string margin_text(const ordered_json& v) { return v.is_null() ? "exact" : g17(v.get<double>()); }

int run_verify(VerifyArgs args, const Common& c) {
    if (!args.big_m_max) args.cfg.big_m_max = args.cfg.m_max;
    else args.cfg.big_m_max = *args.big_m_max;
    args.cfg.seed    = c.seed;
    args.cfg.workers = c.workers;

    avgent_reports* reports = nullptr;
    check(avgent_verify_run(args.check.c_str(), &args.cfg, &reports));
    std::unique_ptr<avgent_reports, decltype(&avgent_reports_free)> guard(reports, avgent_reports_free);
    const auto parsed = ordered_json::parse(avgent_reports_json(reports));

    ordered_json config{{"check", args.check},        {"m_max", args.cfg.m_max},   {"big_m_max", args.cfg.big_m_max},
                        {"n_max", args.cfg.n_max},    {"na_max", args.cfg.na_max}, {"nb_max", args.cfg.nb_max},
                        {"nc_max", args.cfg.nc_max},  {"k_max", args.cfg.k_max}};
    const ordered_json m = meta("verify", c, config);

    bool all_passed = true;
    std::string first_failure;
    std::vector<std::vector<std::string>> table;
    for (std::size_t i = 0; i < avgent_reports_count(reports); ++i) {
        const bool ok = avgent_reports_passed(reports, i);
        if (!ok && all_passed) first_failure = avgent_reports_name(reports, i);
        all_passed = all_passed && ok;
        const auto& rep = parsed[i];
        table.push_back({rep["check"], ok ? "PASS" : "FAIL", std::to_string(rep["points"].get<std::uint64_t>()),
                         margin_text(rep["worst_margin"]), rep["worst_point"], rep["grid"]});
    }

    if (c.format == "json") {
        emit(c, ordered_json{{"meta", m}, {"passed", all_passed}, {"reports", parsed}}.dump(2) + "\n");
    } else {
        const std::vector<std::string> header{"check", "status", "points", "worst_margin", "worst_point", "grid"};
        std::string text = meta_comment(m);
        if (c.format == "csv") {
            text += csv(header, table);
        } else {
            text += aligned(header, table);
            for (const auto& rep : parsed) {
                text += "\n" + rep["check"].get<std::string>() + " observed margins:\n";
                for (const auto& [label, v] : rep["observed_margins"].items())
                    text += "  " + label + "  " + margin_text(v) + "\n";
                for (const auto& f : rep["failures"])
                    text += "  FAILURE " + f["inputs"].get<std::string>() + ": " + f["detail"].get<std::string>() + "\n";
            }
        }
        emit(c, text);
    }
    archive(c, m, ordered_json{{"passed", all_passed}, {"reports", parsed}}, ordered_json::object());
    if (!all_passed) {
        std::cerr << "avgent: check failed: " << first_failure << "\n";
        return kCheckFailed;
    }
    return kOk;
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs {
    std::string limit;
    std::uint64_t m = 2;
    unsigned k_max  = 10;
    std::uint64_t na = 2, nb = 2, nc_max = 64;
};

int run_sweep(const SweepArgs& args, const Common& c) {
    avgent_table* t = nullptr;
    ordered_json config{{"limit", args.limit}};
    if (args.limit == "entropy" || args.limit == "tangle") {
        config["m"]     = args.m;
        config["k_max"] = args.k_max;
        check(args.limit == "entropy" ? avgent_sweep_entropy(args.m, args.k_max, c.precision, &t)
                                      : avgent_sweep_tangle(args.m, args.k_max, c.precision, &t));
    } else {
        config["na"]     = args.na;
        config["nb"]     = args.nb;
        config["nc_max"] = args.nc_max;
        check(avgent_sweep_mutual_info(args.na, args.nb, args.nc_max, c.precision, &t));
    }
    std::unique_ptr<avgent_table, decltype(&avgent_table_free)> guard(t, avgent_table_free);
    const ordered_json m = meta("sweep", c, config);
    const auto table     = ordered_json::parse(avgent_table_render(t, "json"));

    if (c.format == "json")
        emit(c, ordered_json{{"meta", m}, {"table", table}}.dump(2) + "\n");
    else
        emit(c, meta_comment(m) + avgent_table_render(t, c.format.c_str()));
    archive(c, m, table, ordered_json::object());
    return kOk;
}

// ---- ledger ----------------------------------------------------------------

int run_ledger(const Common& c) {
    const ordered_json m = meta("ledger", c, ordered_json::object());
    const auto claims    = ordered_json::parse(avgent_claims_json());
    if (c.format == "json") {
        emit(c, ordered_json{{"meta", m}, {"claims", claims}}.dump(2) + "\n");
    } else if (c.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& cl : claims) rows.push_back({cl["claim"], cl["operation"], cl["command"]});
        emit(c, meta_comment(m) + csv({"claim", "operation", "command"}, rows));
    } else {
        emit(c, avgent_claims_markdown());
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Average entanglement of random pure states: closed forms, Monte Carlo checks, verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("avgent ") + avgent_version());

    Common common;

    AnalyticArgs an;
    auto* analytic = app.add_subcommand("analytic", "Evaluate a closed-form average");
    std::string quantity_help = "Quantity:";
    for (const auto& q : ordered_json::parse(avgent_analytic_quantities_json()))
        quantity_help += "\n  " + q["name"].get<std::string>() + "  (" + q["usage"].get<std::string>() + ")";
    analytic->add_option("--quantity", an.quantity, quantity_help)->required();
    analytic->add_option("--dims", an.dims, "Factor dimensions, e.g. 2x3x5");
    analytic->add_option("--keep", an.keep, "Kept factors, e.g. 0,2");
    analytic->add_option("--a", an.a, "First collection for mutual information");
    analytic->add_option("--b", an.b, "Second collection for mutual information");
    analytic->add_option("--m", an.m, "Small dimension for thermodynamic limits");
    Common analytic_common;
    add_common(analytic, analytic_common, false);

    McArgs mc;
    auto* mcmd = app.add_subcommand("mc", "Monte Carlo estimate over Haar-random pure states");
    mcmd->add_option("--dims", mc.dims, "Factor dimensions, e.g. 2x2x4")->required();
    mcmd->add_option("--quantity", mc.quantity,
                     "entropy, purity, tangle, concurrence, negativity, renyi, tsallis, mutual-info")
        ->required();
    mcmd->add_option("--keep", mc.keep, "Kept factors for single-collection quantities");
    mcmd->add_option("--a", mc.a, "First collection for mutual-info");
    mcmd->add_option("--b", mc.b, "Second collection for mutual-info");
    mcmd->add_option("--q", mc.q, "Renyi/Tsallis index");
    mcmd->add_option("--samples", mc.samples, "Number of Haar samples")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
    Common mc_common;
    add_common(mcmd, mc_common, true);

    VerifyArgs vf;
    avgent_verify_default_config(&vf.cfg);
    auto* verify = app.add_subcommand("verify", "Run verification campaigns");
    std::string names;
    for (const auto& n : ordered_json::parse(avgent_verify_check_names_json())) names += " " + n.get<std::string>();
    verify->add_option("--check", vf.check, "Check name:" + names);
    verify->add_option("--m-max", vf.cfg.m_max, "Largest m for delta-interval");
    verify->add_option("--big-m-max", vf.big_m_max, "Largest M for delta-interval (default: --m-max)");
    verify->add_option("--n-max", vf.cfg.n_max, "Largest n for harmonic");
    verify->add_option("--na-max", vf.cfg.na_max, "Largest nA for tripartite grids");
    verify->add_option("--nb-max", vf.cfg.nb_max, "Largest nB for tripartite grids");
    verify->add_option("--nc-max", vf.cfg.nc_max, "Largest nC for tripartite grids");
    verify->add_option("--k-max", vf.cfg.k_max, "Largest k in M = m 2^k for thermo-limit");
    Common verify_common;
    add_common(verify, verify_common, true);

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Convergence tables");
    sweep->add_option("--limit", sw.limit, "entropy, tangle or mutual-info")
        ->required()
        ->check(CLI::IsMember({"entropy", "tangle", "mutual-info"}));
    sweep->add_option("--m", sw.m, "Small dimension (entropy, tangle)");
    sweep->add_option("--k-max", sw.k_max, "Largest k in M = m 2^k");
    sweep->add_option("--na", sw.na, "nA (mutual-info)");
    sweep->add_option("--nb", sw.nb, "nB (mutual-info)");
    sweep->add_option("--nc-max", sw.nc_max, "Largest nC (mutual-info)");
    Common sweep_common;
    add_common(sweep, sweep_common, false);

    auto* ledger = app.add_subcommand("ledger", "Claims ledger: each implemented result and the command that checks it");
    Common ledger_common;
    ledger->add_option("--format", ledger_common.format, "table prints markdown")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    ledger->add_option("--output", ledger_common.output, "Write output to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*analytic) return run_analytic(an, analytic_common);
        if (*mcmd) return run_mc(mc, mc_common);
        if (*verify) return run_verify(vf, verify_common);
        if (*sweep) return run_sweep(sw, sweep_common);
        if (*ledger) return run_ledger(ledger_common);
    } catch (const ExitWith& e) {
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "avgent: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kUsage;
}
