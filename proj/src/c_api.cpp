#include "avgent/avgent.h"

#include "avgent/archive.hpp"
#include "avgent/catalog.hpp"
#include "avgent/errors.hpp"
#include "avgent/sampler.hpp"
#include "avgent/sweep.hpp"
#include "avgent/verify.hpp"
#include "avgent/version.hpp"

#include <json.hpp>

#include <cstring>
#include <map>
#include <new>

struct avgent_rows {
    std::vector<avgent::catalog::Row> rows;
};

struct avgent_reports {
    std::vector<avgent::verify::CheckReport> reports;
    std::string json;
};

struct avgent_table {
    avgent::sweep::Table table;
    std::map<std::string, std::string> rendered;
};

namespace {

thread_local std::string last_error;

avgent_status fail(avgent_status s, const char* what) {
    last_error = what;
    return s;
}

template <class F>
avgent_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return AVGENT_OK;
    } catch (const avgent::InvalidArgument& e) {
        return fail(AVGENT_ERR_INVALID, e.what());
    } catch (const avgent::DomainError& e) {
        return fail(AVGENT_ERR_DOMAIN, e.what());
    } catch (const avgent::CapExceeded& e) {
        return fail(AVGENT_ERR_CAP, e.what());
    } catch (const avgent::IoError& e) {
        return fail(AVGENT_ERR_IO, e.what());
    } catch (const avgent::PrecisionFailure& e) {
        return fail(AVGENT_ERR_PRECISION, e.what());
    } catch (const std::bad_alloc&) {
        return fail(AVGENT_ERR_CAP, "out of memory");
    } catch (const std::exception& e) {
        return fail(AVGENT_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(AVGENT_ERR_INTERNAL, "unknown error");
    }
}

std::optional<std::string> opt(const char* s) {
    if (!s) return std::nullopt;
    return std::string(s);
}

void need(const void* p, const char* what) {
    if (!p) throw avgent::InvalidArgument(std::string(what) + " must not be NULL");
}

template <class F>
avgent_status make_table(avgent_table** out, F&& build) {
    return guarded([&] {
        need(out, "out");
        auto t   = std::make_unique<avgent_table>();
        t->table = build();
        *out     = t.release();
    });
}
} // namespace

extern "C" {

const char* avgent_version(void) { return avgent::kVersion; }

const char* avgent_last_error(void) { return last_error.c_str(); }

avgent_status avgent_analytic_eval(const avgent_analytic_request* request, avgent_rows** out) {
    return guarded([&] {
        need(request, "request");
        need(out, "out");
        need(request->quantity, "quantity");
        avgent::catalog::AnalyticRequest r;
        r.quantity = request->quantity;
        if (request->dims) r.dims = avgent::FactorList::parse(request->dims);
        r.keep   = opt(request->keep);
        r.a      = opt(request->a);
        r.b      = opt(request->b);
        if (request->has_m) r.m = request->m;
        r.digits = request->digits;
        auto rows = std::make_unique<avgent_rows>();
        rows->rows = avgent::catalog::evaluate(r);
        *out = rows.release();
    });
}

size_t avgent_rows_count(const avgent_rows* rows) { return rows ? rows->rows.size() : 0; }

const char* avgent_rows_label(const avgent_rows* rows, size_t i) {
    return rows && i < rows->rows.size() ? rows->rows[i].label.c_str() : nullptr;
}

const char* avgent_rows_exact(const avgent_rows* rows, size_t i) {
    return rows && i < rows->rows.size() && rows->rows[i].exact ? rows->rows[i].exact->c_str() : nullptr;
}

const char* avgent_rows_decimal(const avgent_rows* rows, size_t i) {
    return rows && i < rows->rows.size() ? rows->rows[i].decimal.c_str() : nullptr;
}

int avgent_rows_approximation(const avgent_rows* rows, size_t i) {
    return rows && i < rows->rows.size() && rows->rows[i].approximation;
}

const char* avgent_rows_slack(const avgent_rows* rows, size_t i) {
    return rows && i < rows->rows.size() && rows->rows[i].slack ? rows->rows[i].slack->c_str() : nullptr;
}

void avgent_rows_free(avgent_rows* rows) { delete rows; }

const char* avgent_analytic_quantities_json(void) {
    static const std::string text = [] {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& q : avgent::catalog::analytic_quantities())
            arr.push_back({{"name", q.name}, {"operation", q.operation}, {"usage", q.usage}});
        return arr.dump();
    }();
    return text.c_str();
}

avgent_status avgent_mc_estimate(const avgent_mc_request* request, avgent_mc_result* out) {
    using namespace avgent;
    return guarded([&] {
        need(request, "request");
        need(out, "out");
        need(request->dims, "dims");
        need(request->quantity, "quantity");
        FactorList f         = FactorList::parse(request->dims);
        const auto quantity  = sampler::parse_quantity(request->quantity);
        auto build = [&] {
            if (quantity == sampler::Quantity::mutual_info) {
                if (!request->a || !request->b) throw InvalidArgument("mutual-info needs both --a and --b");
                return sampler::SampleSpec::mutual(f, Selector::parse(f, request->a), Selector::parse(f, request->b),
                                                   request->samples, request->seed);
            }
            if (!request->keep) throw InvalidArgument(std::string(request->quantity) + " needs --keep");
            return sampler::SampleSpec::single(f, quantity, Selector::parse(f, request->keep), request->samples,
                                               request->seed, request->q);
        };
        const sampler::SampleSpec spec = build();
        sampler::validate(spec);
        const auto oracle = sampler::analytic_oracle(spec);
        const auto bound  = sampler::analytic_upper_bound(spec);
        const auto est    = sampler::estimate(spec, request->workers);

        avgent_mc_result r{};
        r.mean            = est.mean;
        r.std_error       = est.stderr_;
        r.samples         = est.samples;
        r.seed            = est.seed;
        r.has_oracle      = oracle.has_value();
        r.oracle          = oracle ? oracle->convert_to<double>() : 0.0;
        r.has_upper_bound = bound.has_value();
        r.upper_bound     = bound ? bound->convert_to<double>() : 0.0;
        std::strncpy(r.descriptor, est.quantity.c_str(), sizeof r.descriptor - 1);
        *out = r;
    });
}

void avgent_verify_default_config(avgent_verify_config* config) {
    if (!config) return;
    const avgent::verify::VerifyConfig d;
    *config = {d.m_max, d.big_m_max, d.n_max, d.na_max, d.nb_max, d.nc_max, d.k_max, d.seed, d.workers};
}

const char* avgent_verify_check_names_json(void) {
    static const std::string text = nlohmann::json(avgent::verify::check_names()).dump();
    return text.c_str();
}

avgent_status avgent_verify_run(const char* check, const avgent_verify_config* config, avgent_reports** out) {
    return guarded([&] {
        need(check, "check");
        need(out, "out");
        avgent::verify::VerifyConfig cfg;
        if (config) {
            cfg.m_max     = config->m_max;
            cfg.big_m_max = config->big_m_max;
            cfg.n_max     = config->n_max;
            cfg.na_max    = config->na_max;
            cfg.nb_max    = config->nb_max;
            cfg.nc_max    = config->nc_max;
            cfg.k_max     = config->k_max;
            cfg.seed      = config->seed;
            cfg.workers   = config->workers;
        }
        auto r     = std::make_unique<avgent_reports>();
        r->reports = avgent::verify::run(check, cfg);
        r->json    = avgent::verify::to_json(r->reports);
        *out       = r.release();
    });
}

size_t avgent_reports_count(const avgent_reports* reports) { return reports ? reports->reports.size() : 0; }

const char* avgent_reports_name(const avgent_reports* reports, size_t i) {
    return reports && i < reports->reports.size() ? reports->reports[i].name.c_str() : nullptr;
}

int avgent_reports_passed(const avgent_reports* reports, size_t i) {
    return reports && i < reports->reports.size() && reports->reports[i].passed();
}

const char* avgent_reports_json(const avgent_reports* reports) { return reports ? reports->json.c_str() : nullptr; }

void avgent_reports_free(avgent_reports* reports) { delete reports; }

avgent_status avgent_sweep_entropy(uint64_t m, unsigned k_max, unsigned digits, avgent_table** out) {
    return make_table(out, [&] { return avgent::sweep::entropy_limit(m, k_max, digits); });
}

avgent_status avgent_sweep_tangle(uint64_t m, unsigned k_max, unsigned digits, avgent_table** out) {
    return make_table(out, [&] { return avgent::sweep::tangle_limit(m, k_max, digits); });
}

avgent_status avgent_sweep_mutual_info(uint64_t na, uint64_t nb, uint64_t nc_max, unsigned digits,
                                       avgent_table** out) {
    return make_table(out, [&] { return avgent::sweep::mutual_info_environment(na, nb, nc_max, digits); });
}

const char* avgent_table_render(avgent_table* table, const char* format) {
    if (!table || !format) return nullptr;
    const std::string f = format;
    auto it             = table->rendered.find(f);
    if (it != table->rendered.end()) return it->second.c_str();
    std::string text;
    if (f == "table")
        text = avgent::sweep::to_text(table->table);
    else if (f == "csv")
        text = avgent::sweep::to_csv(table->table);
    else if (f == "json")
        text = avgent::sweep::to_json(table->table);
    else {
        last_error = "unknown table format '" + f + "'";
        return nullptr;
    }
    return table->rendered.emplace(f, std::move(text)).first->second.c_str();
}

void avgent_table_free(avgent_table* table) { delete table; }

avgent_status avgent_archive_append(const char* path, const char* config_json, const char* result_json,
                                    const char* extra_json) {
    return guarded([&] {
        need(path, "path");
        need(config_json, "config");
        need(result_json, "result");
        avgent::archive::append(path, config_json, result_json, extra_json ? extra_json : "{}");
    });
}

const char* avgent_claims_markdown(void) {
    static const std::string text = avgent::catalog::claims_markdown();
    return text.c_str();
}

const char* avgent_claims_json(void) {
    static const std::string text = avgent::catalog::claims_json();
    return text.c_str();
}

} // extern "C"
