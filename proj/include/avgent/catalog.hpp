#pragma once

#include "avgent/partition.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace avgent::catalog {

/// One rendered analytic value.
struct Row {
    std::string label;
    std::optional<std::string> exact; // "p/q" when the value is rational
    std::string decimal;
    bool approximation = false;
    std::optional<std::string> slack; // stated tolerance in nats, approximations only
};

struct AnalyticRequest {
    std::string quantity;
    std::optional<FactorList> dims;
    std::optional<std::string> keep;
    std::optional<std::string> a;
    std::optional<std::string> b;
    std::optional<std::uint64_t> m;
    unsigned digits = 30;
};

struct QuantityInfo {
    std::string name;
    std::string operation; // "analytic::..." it evaluates
    std::string usage;
};

/// Every quantity the analytic command understands.
const std::vector<QuantityInfo>& analytic_quantities();

/// Evaluates a named closed form. Throws InvalidArgument for unknown names or missing inputs,
/// DomainError when a precondition fails.
std::vector<Row> evaluate(const AnalyticRequest& request);

/// One implemented equation or theorem, where it lives, and the command that exercises it.
struct Claim {
    std::string claim;
    std::string operation; // module::operation, unique across the ledger
    std::string command;
};

const std::vector<Claim>& claims();

/// Markdown table of claims().
std::string claims_markdown();
std::string claims_json();

} // namespace avgent::catalog
