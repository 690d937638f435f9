#include "avgent/archive.hpp"
#include "avgent/catalog.hpp"
#include "avgent/errors.hpp"
#include "avgent/sweep.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

using namespace avgent;
namespace fs = std::filesystem;

namespace {

// Public operations declared in a module header, read from the header itself.
std::set<std::string> declared_operations(const std::string& module) {
    std::ifstream in(std::string(AVGENT_INCLUDE_DIR) + "/avgent/" + module + ".hpp");
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const std::regex decl(R"(^[A-Za-z_][\w:<>]*\s+([a-z_]+)\(.*\);)", std::regex::multiline);
    std::set<std::string> ops;
    for (std::sregex_iterator it(text.begin(), text.end(), decl), end; it != end; ++it) ops.insert((*it)[1]);
    return ops;
}

fs::path temp_file(const char* name) {
    const auto p = fs::temp_directory_path() / (std::string("avgent_test_") + name + "_" + std::to_string(::getpid()));
    fs::remove(p);
    return p;
}

std::vector<std::string> lines_of(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    return lines;
}

} // namespace

TEST_CASE("every analytic and quantum operation appears exactly once in the claims ledger") {
    // Plumbing without a closed-form claim of its own.
    const std::set<std::string> plumbing{"current_caps", "reshape"};
    std::map<std::string, int> seen;
    for (const auto& c : catalog::claims()) ++seen[c.operation];
    for (const auto& [op, n] : seen) CHECK_MESSAGE(n == 1, op);

    std::size_t checked = 0;
    for (const char* module : {"analytic", "quantum"}) {
        const auto ops = declared_operations(module);
        CHECK(ops.size() > 5);
        for (const auto& op : ops) {
            if (plumbing.count(op)) continue;
            CHECK_MESSAGE(seen.count(std::string(module) + "::" + op) == 1, module, "::", op);
            ++checked;
        }
    }
    CHECK(checked >= 25);
}

TEST_CASE("ledger rows tie results to their checks") {
    auto find = [](const std::string& op) {
        for (const auto& c : catalog::claims())
            if (c.operation == op) return c;
        FAIL("missing " << op);
        return catalog::Claim{};
    };
    CHECK(find("analytic::entropy_deficit").command.find("delta-interval") != std::string::npos);
    CHECK(find("analytic::tripartite_avg_mutual_info").command.find("mutual-info") != std::string::npos);
    CHECK(find("analytic::avg_tangle").command.find("--quantity tangle") != std::string::npos);
    const auto md = catalog::claims_markdown();
    CHECK(md.rfind("| Claim |", 0) == 0);
    CHECK(nlohmann::json::parse(catalog::claims_json()).size() == catalog::claims().size());
}

TEST_CASE("every analytic quantity names a ledgered operation") {
    std::set<std::string> ops;
    for (const auto& c : catalog::claims()) ops.insert(c.operation);
    for (const auto& q : catalog::analytic_quantities()) CHECK_MESSAGE(ops.count(q.operation) == 1, q.name);
}

TEST_CASE("catalog evaluation") {
    catalog::AnalyticRequest r;
    r.quantity = "entropy";
    r.dims     = FactorList::parse("2x2");
    r.digits   = 6;
    auto rows  = catalog::evaluate(r);
    REQUIRE(rows.size() == 1);
    CHECK(*rows[0].exact == "1/3");
    CHECK(rows[0].decimal == "0.333333");

    r.quantity = "tangle";
    CHECK(*catalog::evaluate(r)[0].exact == "2/5");

    r.quantity = "entropy-sum-approx";
    r.dims     = FactorList::parse("2x2x4");
    rows       = catalog::evaluate(r);
    CHECK(rows[0].approximation);
    CHECK(*rows[0].slack == "3/2");

    r.quantity = "mutual-info";
    r.dims     = FactorList::parse("2x2x8");
    r.a        = "0";
    r.b        = "1";
    CHECK(catalog::evaluate(r)[0].exact.has_value());

    catalog::AnalyticRequest bad;
    bad.quantity = "nope";
    CHECK_THROWS_AS(catalog::evaluate(bad), InvalidArgument);
    bad.quantity = "thermo-tangle";
    CHECK_THROWS_AS(catalog::evaluate(bad), InvalidArgument);
    bad.m = 4;
    CHECK(*catalog::evaluate(bad)[0].exact == "3/2");
    bad.digits = 0;
    CHECK_THROWS_AS(catalog::evaluate(bad), InvalidArgument);
}

TEST_CASE("entropy sweep deficits shrink and stay under m/(2M)") {
    const auto t = sweep::entropy_limit(2, 10, 20);
    REQUIRE(t.rows.size() == 11);
    double prev = 1e9;
    for (const auto& row : t.rows) {
        const double gap = std::stod(row[4]), edge = std::stod(row[5]);
        CHECK(gap <= edge);
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("tangle sweep rises toward 2(1 - 1/m)") {
    const auto t = sweep::tangle_limit(4, 10, 20);
    double prev  = -1;
    for (const auto& row : t.rows) {
        const double v = std::stod(row[2]);
        CHECK(v > prev);
        CHECK(v < 1.5);
        prev = v;
    }
    CHECK(prev > 1.49);
}

TEST_CASE("mutual information sweep falls toward 0") {
    const auto t = sweep::mutual_info_environment(2, 2, 64, 20);
    REQUIRE(t.rows.size() == 61);
    double prev = 1;
    for (const auto& row : t.rows) {
        const double v = std::stod(row[1]);
        CHECK(v < prev);
        CHECK(std::stod(row[4]) >= 0);
        prev = v;
    }
    CHECK(prev < 0.05);
    CHECK_THROWS_AS(sweep::mutual_info_environment(2, 2, 3, 10), InvalidArgument);
}

TEST_CASE("sweep renderings") {
    const auto t = sweep::entropy_limit(3, 2, 8);
    const auto csv = sweep::to_csv(t);
    CHECK(csv.rfind("k,M,S,ln m,ln m - S,m/(2M)\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    const auto j = nlohmann::json::parse(sweep::to_json(t));
    CHECK(j["rows"].size() == 3);
    CHECK(sweep::to_text(t).find("entropy limit") == 0);
}

TEST_CASE("archive appends one record per call") {
    const auto p = temp_file("archive");
    archive::append(p.string(), R"({"x":1})", R"({"mean":0.5})");
    CHECK(lines_of(p).size() == 1);
    archive::append(p.string(), R"({"x":2})", R"({"mean":0.5})", R"({"z":1.5})");
    const auto lines = lines_of(p);
    REQUIRE(lines.size() == 2);
    const auto a = nlohmann::json::parse(lines[0]), b = nlohmann::json::parse(lines[1]);
    CHECK(a["schema_version"] == archive::kSchemaVersion);
    CHECK(a["config"]["x"] == 1);
    CHECK(b["config"]["x"] == 2);
    CHECK(b["z"] == 1.5);
    CHECK(a["result"] == b["result"]);
    CHECK(a.contains("timestamp"));
    CHECK(a.contains("tool_version"));
    fs::remove(p);
}

TEST_CASE("concurrent appends never interleave") {
    const auto p = temp_file("concurrent");
    {
        std::vector<std::jthread> threads;
        for (int t = 0; t < 8; ++t)
            threads.emplace_back([&, t] {
                for (int i = 0; i < 50; ++i)
                    archive::append(p.string(), "{\"t\":" + std::to_string(t) + "}",
                                    "{\"payload\":\"" + std::string(500, 'a' + t) + "\"}");
            });
    }
    const auto lines = lines_of(p);
    CHECK(lines.size() == 400);
    for (const auto& l : lines) CHECK(nlohmann::json::accept(l));
    fs::remove(p);
}

TEST_CASE("archive errors") {
    CHECK_THROWS_AS(archive::append("/nonexistent-dir/x/archive.jsonl", "{}", "{}"), IoError);
    const auto p = temp_file("bad");
    CHECK_THROWS_AS(archive::append(p.string(), "{", "{}"), InvalidArgument);
    CHECK_THROWS_AS(archive::append(p.string(), "{}", "{}", "[1]"), InvalidArgument);
    fs::remove(p);
}
