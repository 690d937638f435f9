#include "avgent/sweep.hpp"
#include "avgent/analytic.hpp"
#include "avgent/errors.hpp"

#include <json.hpp>

#include <algorithm>

namespace avgent::sweep {

namespace {

void check_digits(unsigned digits) {
    if (digits == 0 || digits > kMaxDigits)
        throw InvalidArgument("precision must be in [1, " + std::to_string(kMaxDigits) + "] digits");
}

void check_k(unsigned k_max) {
    if (k_max > 200) throw InvalidArgument("k-max must be at most 200");
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

Table entropy_limit(std::uint64_t m, unsigned k_max, unsigned digits) {
    check_digits(digits);
    check_k(k_max);
    if (m < 1) throw InvalidArgument("m must be >= 1");
    Table t{"entropy limit, m = " + std::to_string(m),
            {"k", "M", "S", "ln m", "ln m - S", "m/(2M)"},
            {}};
    const BigReal ln_m = log_real(m);
    for (unsigned k = 0; k <= k_max; ++k) {
        const BigInt big_m = BigInt(m) << k;
        const BigReal s    = analytic::page_sen_entropy(BigInt(m), big_m).nats;
        const Rational edge(BigInt(m), 2 * big_m);
        t.rows.push_back({std::to_string(k), big_m.str(), to_string(s, digits), to_string(ln_m, digits),
                          to_string(BigReal(ln_m - s), digits), to_string(to_real(edge), digits)});
    }
    return t;
}

Table tangle_limit(std::uint64_t m, unsigned k_max, unsigned digits) {
    check_digits(digits);
    check_k(k_max);
    if (m < 1) throw InvalidArgument("m must be >= 1");
    Table t{"tangle limit, m = " + std::to_string(m),
            {"k", "M", "<tau>", "exact", "limit", "deficit", "2/M"},
            {}};
    const Rational limit = analytic::thermo_limit_tangle(BigInt(m));
    for (unsigned k = 0; k <= k_max; ++k) {
        const BigInt big_m = BigInt(m) << k;
        const Rational tau = analytic::avg_tangle(BigInt(m), big_m);
        const Rational def = analytic::tangle_deficit(BigInt(m), big_m);
        t.rows.push_back({std::to_string(k), big_m.str(), to_string(to_real(tau), digits), to_string(tau),
                          to_string(to_real(limit), digits), to_string(to_real(def), digits),
                          to_string(to_real(Rational(2, big_m)), digits)});
    }
    return t;
}

Table mutual_info_environment(std::uint64_t na, std::uint64_t nb, std::uint64_t nc_max, unsigned digits) {
    check_digits(digits);
    if (na < 1 || nb < 1) throw InvalidArgument("nA and nB must be >= 1");
    const std::uint64_t lo = na * nb;
    if (nc_max < lo)
        throw InvalidArgument("nc-max must be at least nA nB = " + std::to_string(lo));
    if (nc_max - lo > 100000) throw InvalidArgument("at most 100001 environment sizes per sweep");
    Table t{"mutual information, nA = " + std::to_string(na) + ", nB = " + std::to_string(nb),
            {"nC", "<I_A:B>", "exact", "nA nB/(2 nC)", "bound - <I>"},
            {}};
    for (std::uint64_t nc = lo; nc <= nc_max; ++nc) {
        const auto info   = analytic::tripartite_avg_mutual_info(na, nb, nc);
        const auto bound  = analytic::tripartite_mutual_info_bound(na, nb, nc);
        t.rows.push_back({std::to_string(nc), to_string(info.nats, digits),
                          info.exact ? to_string(*info.exact) : std::string(),
                          to_string(to_real(bound), digits), to_string(BigReal(to_real(bound) - info.nats), digits)});
    }
    return t;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_cell(t.columns[i]);
    out += '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + csv_cell(r[i]);
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    nlohmann::json j{{"title", t.title}, {"columns", t.columns}, {"rows", t.rows}};
    return j.dump(2);
}

std::string to_text(const Table& t) {
    std::vector<std::size_t> w(t.columns.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.columns[i].size();
    for (const auto& r : t.rows)
        for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            s += cells[i];
            if (i + 1 < cells.size()) s += std::string(w[i] - cells[i].size() + 2, ' ');
        }
        return s + '\n';
    };
    std::string out = t.title + '\n' + line(t.columns);
    for (const auto& r : t.rows) out += line(r);
    return out;
}

} // namespace avgent::sweep
