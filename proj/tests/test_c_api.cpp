#include "avgent/avgent.h"

#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <string>

TEST_CASE("version and error slot") {
    CHECK(std::strlen(avgent_version()) > 0);
    avgent_rows* rows = nullptr;
    avgent_analytic_request req{};
    req.quantity = "nope";
    req.digits   = 10;
    CHECK(avgent_analytic_eval(&req, &rows) == AVGENT_ERR_INVALID);
    CHECK(rows == nullptr);
    CHECK(std::string(avgent_last_error()).find("nope") != std::string::npos);
    CHECK(avgent_analytic_eval(nullptr, &rows) == AVGENT_ERR_INVALID);
}

TEST_CASE("analytic rows") {
    avgent_analytic_request req{};
    req.quantity      = "entropy";
    req.dims          = "2x2";
    req.digits        = 8;
    avgent_rows* rows = nullptr;
    REQUIRE(avgent_analytic_eval(&req, &rows) == AVGENT_OK);
    REQUIRE(avgent_rows_count(rows) == 1);
    CHECK(std::string(avgent_rows_exact(rows, 0)) == "1/3");
    CHECK(std::string(avgent_rows_decimal(rows, 0)) == "0.33333333");
    CHECK(avgent_rows_approximation(rows, 0) == 0);
    CHECK(avgent_rows_slack(rows, 0) == nullptr);
    CHECK(avgent_rows_label(rows, 5) == nullptr);
    avgent_rows_free(rows);

    req.quantity = "mutual-info";
    req.dims     = "4x2x2";
    CHECK(avgent_analytic_eval(&req, &rows) == AVGENT_ERR_DOMAIN);
    req.dims = "2x0";
    CHECK(avgent_analytic_eval(&req, &rows) == AVGENT_ERR_INVALID);
    CHECK(std::strlen(avgent_analytic_quantities_json()) > 10);
}

TEST_CASE("monte carlo through the C interface") {
    avgent_mc_request req{};
    req.dims     = "2x2";
    req.quantity = "purity";
    req.keep     = "0";
    req.samples  = 2000;
    req.seed     = 5;
    req.workers  = 1;
    avgent_mc_result a{}, b{};
    REQUIRE(avgent_mc_estimate(&req, &a) == AVGENT_OK);
    req.workers = 4;
    REQUIRE(avgent_mc_estimate(&req, &b) == AVGENT_OK);
    CHECK(std::memcmp(&a.mean, &b.mean, sizeof a.mean) == 0);
    CHECK(std::memcmp(&a.std_error, &b.std_error, sizeof a.std_error) == 0);
    CHECK(a.has_oracle);
    CHECK(a.oracle == doctest::Approx(0.8));
    CHECK(std::string(a.descriptor) == "purity[0] on 2x2");

    req.dims = "4096x4096";
    CHECK(avgent_mc_estimate(&req, &a) == AVGENT_ERR_CAP);
    req.dims = "2x2";
    req.keep = "7";
    CHECK(avgent_mc_estimate(&req, &a) == AVGENT_ERR_INVALID);
    req.keep     = nullptr;
    req.quantity = "mutual-info";
    req.a        = "0";
    CHECK(avgent_mc_estimate(&req, &a) == AVGENT_ERR_INVALID);
}

TEST_CASE("verify, sweep, ledger and archive handles") {
    avgent_verify_config cfg;
    avgent_verify_default_config(&cfg);
    CHECK(cfg.m_max == 64);
    cfg.m_max = cfg.big_m_max = 10;
    avgent_reports* reports   = nullptr;
    REQUIRE(avgent_verify_run("delta-interval", &cfg, &reports) == AVGENT_OK);
    CHECK(avgent_reports_count(reports) == 1);
    CHECK(avgent_reports_passed(reports, 0) == 1);
    CHECK(std::string(avgent_reports_name(reports, 0)) == "delta-interval");
    CHECK(std::string(avgent_reports_json(reports)).find("\"passed\":true") != std::string::npos);
    avgent_reports_free(reports);
    CHECK(avgent_verify_run("bogus", &cfg, &reports) == AVGENT_ERR_INVALID);

    avgent_table* t = nullptr;
    REQUIRE(avgent_sweep_tangle(4, 3, 10, &t) == AVGENT_OK);
    const char* csv = avgent_table_render(t, "csv");
    REQUIRE(csv != nullptr);
    CHECK(std::string(csv).rfind("k,M,", 0) == 0);
    CHECK(avgent_table_render(t, "xml") == nullptr);
    avgent_table_free(t);
    CHECK(avgent_sweep_mutual_info(2, 2, 1, 10, &t) == AVGENT_ERR_INVALID);

    CHECK(std::string(avgent_claims_markdown()).find("analytic::avg_tangle") != std::string::npos);
    CHECK(avgent_archive_append("/nonexistent-dir/a.jsonl", "{}", "{}", nullptr) == AVGENT_ERR_IO);
    CHECK(avgent_archive_append("/tmp/x.jsonl", "{", "{}", nullptr) == AVGENT_ERR_INVALID);
}
