#include "avgent/catalog.hpp"
#include "avgent/analytic.hpp"
#include "avgent/errors.hpp"

#include <json.hpp>

#include <functional>
#include <map>

namespace avgent::catalog {

namespace {

using analytic::Value;

Row row(std::string label, const Value& v, unsigned digits) {
    Row r;
    r.label         = std::move(label);
    r.decimal       = to_string(v.nats, digits);
    r.approximation = v.approximation;
    if (v.exact) r.exact = to_string(*v.exact);
    if (v.slack) r.slack = to_string(*v.slack);
    return r;
}

Row row(std::string label, const Rational& q, unsigned digits) {
    Value v;
    v.nats  = to_real(q);
    v.exact = q;
    return row(std::move(label), v, digits);
}

Row row(std::string label, const BigReal& x, unsigned digits) {
    Value v;
    v.nats = x;
    return row(std::move(label), v, digits);
}

const FactorList& need_dims(const AnalyticRequest& r, std::size_t count) {
    if (!r.dims) throw InvalidArgument(r.quantity + " needs --dims");
    if (count && r.dims->size() != count)
        throw InvalidArgument(r.quantity + " needs exactly " + std::to_string(count) + " dimensions, got " +
                              r.dims->to_string());
    return *r.dims;
}

// (n_K, n / n_K) from --keep when given, else the two factors of a bipartite --dims.
std::pair<BigInt, BigInt> bipartite_pair(const AnalyticRequest& r) {
    if (r.keep) {
        const FactorList& f = need_dims(r, 0);
        const auto cd       = collection_dims(f, Selector::parse(f, *r.keep));
        return {cd.kept, cd.complement};
    }
    const FactorList& f = need_dims(r, 2);
    return {f[0], f[1]};
}

std::string pair_text(const std::pair<BigInt, BigInt>& p) { return p.first.str() + "," + p.second.str(); }

std::uint64_t need_m(const AnalyticRequest& r) {
    if (!r.m) throw InvalidArgument(r.quantity + " needs --m");
    return *r.m;
}

using Evaluator = std::function<std::vector<Row>(const AnalyticRequest&)>;

struct Entry {
    QuantityInfo info;
    Evaluator eval;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table{
        {{"entropy", "analytic::page_sen_entropy",
          "--dims AxB, or --dims with --keep for a collection entropy"},
         [](const AnalyticRequest& r) {
             const unsigned d = r.digits;
             if (r.keep) {
                 const FactorList& f = need_dims(r, 0);
                 const Selector k    = Selector::parse(f, *r.keep);
                 return std::vector<Row>{
                     row("S[" + k.to_string() + "] on " + f.to_string(), analytic::multipartite_collection_entropy(f, k), d)};
             }
             const auto p = bipartite_pair(r);
             return std::vector<Row>{row("S(" + pair_text(p) + ")", analytic::page_sen_entropy(p.first, p.second), d)};
         }},
        {{"deficit", "analytic::entropy_deficit", "--dims AxB (or --keep)"},
         [](const AnalyticRequest& r) {
             const auto p = bipartite_pair(r);
             return std::vector<Row>{row("Delta(" + pair_text(p) + ")", analytic::entropy_deficit(p.first, p.second), r.digits)};
         }},
        {{"symmetric-info", "analytic::symmetric_info", "--dims AxB (or --keep)"},
         [](const AnalyticRequest& r) {
             const auto p = bipartite_pair(r);
             return std::vector<Row>{row("I(" + pair_text(p) + ")", analytic::symmetric_info(p.first, p.second), r.digits)};
         }},
        {{"asymmetric-info", "analytic::asymmetric_info", "--dims AxB (or --keep)"},
         [](const AnalyticRequest& r) {
             const auto p    = bipartite_pair(r);
             const auto asym = analytic::asymmetric_info(p.first, p.second);
             return std::vector<Row>{
                 row("I~(A,B)", asym.tilde_ab, r.digits),
                 row("I~(B,A)", asym.tilde_ba, r.digits),
                 row("I-bar", asym.average, r.digits),
                 row("I~(A,B)-I~(B,A)", asym.tilde_ab.nats - asym.tilde_ba.nats, r.digits),
             };
         }},
        {{"purity", "analytic::avg_purity", "--dims AxB (or --keep)"},
         [](const AnalyticRequest& r) {
             const auto p = bipartite_pair(r);
             return std::vector<Row>{row("<tr rho^2>(" + pair_text(p) + ")", analytic::avg_purity(p.first, p.second), r.digits)};
         }},
        {{"tangle", "analytic::avg_tangle", "--dims AxB (or --keep)"},
         [](const AnalyticRequest& r) {
             const auto p = bipartite_pair(r);
             return std::vector<Row>{row("<tau>(" + pair_text(p) + ")", analytic::avg_tangle(p.first, p.second), r.digits)};
         }},
        {{"concurrence-bound", "analytic::concurrence_bound", "--dims AxB (or --keep)"},
         [](const AnalyticRequest& r) {
             const auto p = bipartite_pair(r);
             return std::vector<Row>{
                 row("sqrt<tau>(" + pair_text(p) + ")", analytic::concurrence_bound(p.first, p.second), r.digits)};
         }},
        {{"tangle-deficit", "analytic::tangle_deficit", "--dims AxB (or --keep)"},
         [](const AnalyticRequest& r) {
             const auto p = bipartite_pair(r);
             return std::vector<Row>{
                 row("Delta tau(" + pair_text(p) + ")", analytic::tangle_deficit(p.first, p.second), r.digits)};
         }},
        {{"mutual-info", "analytic::tripartite_avg_mutual_info",
          "--dims AxBxC (needs nA nB <= nC), or --dims with --a/--b for collections"},
         [](const AnalyticRequest& r) {
             if (r.a || r.b) {
                 const FactorList& f = need_dims(r, 0);
                 const Selector a = Selector::parse(f, r.a.value_or("")), b = Selector::parse(f, r.b.value_or(""));
                 return std::vector<Row>{row("<I>[" + a.to_string() + ":" + b.to_string() + "] on " + f.to_string(),
                                             analytic::multipartite_avg_mutual_info(f, a, b), r.digits)};
             }
             const FactorList& f = need_dims(r, 3);
             return std::vector<Row>{
                 row("<I_A:B>(" + f.to_string() + ")", analytic::tripartite_avg_mutual_info(f[0], f[1], f[2]), r.digits)};
         }},
        {{"mutual-info-bound", "analytic::tripartite_mutual_info_bound",
          "--dims AxBxC (needs nA nB <= nC), or --dims with --a/--b for collections"},
         [](const AnalyticRequest& r) {
             if (r.a || r.b) {
                 const FactorList& f = need_dims(r, 0);
                 const Selector a = Selector::parse(f, r.a.value_or("")), b = Selector::parse(f, r.b.value_or(""));
                 return std::vector<Row>{row("bound[" + a.to_string() + ":" + b.to_string() + "] on " + f.to_string(),
                                             analytic::multipartite_mutual_info_bound(f, a, b), r.digits)};
             }
             const FactorList& f = need_dims(r, 3);
             return std::vector<Row>{row("nA nB/(2 nC)(" + f.to_string() + ")",
                                         analytic::tripartite_mutual_info_bound(f[0], f[1], f[2]), r.digits)};
         }},
        {{"entropy-sum-approx", "analytic::tripartite_entropy_sum_approx", "--dims AxBxC"},
         [](const AnalyticRequest& r) {
             const FactorList& f = need_dims(r, 3);
             return std::vector<Row>{row("<S_A+S_B+S_C> approx(" + f.to_string() + ")",
                                         analytic::tripartite_entropy_sum_approx(f[0], f[1], f[2]), r.digits)};
         }},
        {{"lumped-mutual-info", "analytic::lumped_avg_mutual_info", "--dims with --keep"},
         [](const AnalyticRequest& r) {
             const FactorList& f = need_dims(r, 0);
             const Selector k    = Selector::parse(f, r.keep.value_or("0"));
             return std::vector<Row>{
                 row("<I>[" + k.to_string() + ":rest] on " + f.to_string(), analytic::lumped_avg_mutual_info(f, k), r.digits)};
         }},
        {{"thermo-entropy", "analytic::thermo_limit_entropy", "--m"},
         [](const AnalyticRequest& r) {
             const auto m = need_m(r);
             return std::vector<Row>{row("lim S(" + std::to_string(m) + ",M)", analytic::thermo_limit_entropy(m), r.digits)};
         }},
        {{"thermo-tangle", "analytic::thermo_limit_tangle", "--m"},
         [](const AnalyticRequest& r) {
             const auto m = need_m(r);
             return std::vector<Row>{
                 row("lim <tau>(" + std::to_string(m) + ",M)", analytic::thermo_limit_tangle(m), r.digits)};
         }},
    };
    return table;
}

} // namespace

const std::vector<QuantityInfo>& analytic_quantities() {
    static const std::vector<QuantityInfo> infos = [] {
        std::vector<QuantityInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

std::vector<Row> evaluate(const AnalyticRequest& request) {
    if (request.digits == 0 || request.digits > kMaxDigits)
        throw InvalidArgument("precision must be in [1, " + std::to_string(kMaxDigits) + "] digits");
    for (const auto& e : entries())
        if (e.info.name == request.quantity) return e.eval(request);
    std::string known;
    for (const auto& e : entries()) known += (known.empty() ? "" : ", ") + e.info.name;
    throw InvalidArgument("unknown analytic quantity '" + request.quantity + "' (known: " + known + ")");
}

const std::vector<Claim>& claims() {
    static const std::vector<Claim> table{
        // exact closed forms
        {"Mean subsystem entropy H_{mM} - H_M - (m-1)/(2M)", "analytic::page_sen_entropy",
         "avgent analytic --quantity entropy --dims 2x2"},
        {"Entropy deficit theorem: Delta_{m,M} in (-m/(2M), -(m-1)/(2M))", "analytic::entropy_deficit",
         "avgent verify --check delta-interval"},
        {"Symmetric average subsystem information I = ln m - S in ((m-1)/(2M), m/(2M))", "analytic::symmetric_info",
         "avgent analytic --quantity symmetric-info --dims 2x2"},
        {"Asymmetric information: difference ln(nA/nB), average ln(M/m)/2 + I", "analytic::asymmetric_info",
         "avgent analytic --quantity asymmetric-info --dims 2x8"},
        {"Average purity (nA + nB)/(nA nB + 1)", "analytic::avg_purity",
         "avgent analytic --quantity purity --dims 3x5"},
        {"Average tangle 2(m-1)(M-1)/(mM+1)", "analytic::avg_tangle", "avgent analytic --quantity tangle --dims 2x2"},
        {"Average concurrence bound sqrt(<tau>)", "analytic::concurrence_bound",
         "avgent analytic --quantity concurrence-bound --dims 2x2"},
        {"Tangle deficit 2(m^2-1)/(m(mM+1)) <= 2/M", "analytic::tangle_deficit", "avgent verify --check thermo-limit"},
        {"Exact tripartite <I_A:B> for nA nB <= nC", "analytic::tripartite_avg_mutual_info",
         "avgent analytic --quantity mutual-info --dims 2x2x4"},
        {"Tripartite theorem <I_A:B> <= nA nB/(2 nC) <= 1/2", "analytic::tripartite_mutual_info_bound",
         "avgent verify --check tripartite-bound"},
        {"Tripartite entropy-sum approximation ln n + min{0, ln n - 2 ln max} (3/2 nat)",
         "analytic::tripartite_entropy_sum_approx", "avgent verify --check approximation-slacks"},
        {"Collection entropy S_{n_K, n/n_K} within half a nat of ln m_K", "analytic::multipartite_collection_entropy",
         "avgent verify --check multipartite"},
        {"Mutual information of disjoint collections <S_A> + <S_B> - <S_AB>", "analytic::multipartite_avg_mutual_info",
         "avgent analytic --quantity mutual-info --dims 2x2x8 --a 0 --b 1"},
        {"Lumped mutual information <I_{K:rest}> = 2<S_K>", "analytic::lumped_avg_mutual_info",
         "avgent analytic --quantity lumped-mutual-info --dims 2x2x4 --keep 0"},
        {"Collection bound <I_A:B> <= n_A^2 n_B^2/(2n) <= 1/2 for small collections",
         "analytic::multipartite_mutual_info_bound", "avgent verify --check multipartite"},
        {"Thermodynamic limit S_{m,M} -> ln m with |S - ln m| <= m/(2M)", "analytic::thermo_limit_entropy",
         "avgent sweep --limit entropy --m 2 --k-max 10"},
        {"Thermodynamic limit <tau> -> 2(1 - 1/m)", "analytic::thermo_limit_tangle",
         "avgent sweep --limit tangle --m 4 --k-max 10"},
        // harmonic numbers
        {"Harmonic number H_n = sum 1/i (exact rational)", "exactmath::harmonic", "avgent verify --check harmonic"},
        {"Asymptotic expansion of H_n", "exactmath::harmonic_approx", "avgent verify --check harmonic"},
        {"Explicit bound epsilon_n in (1/(2(n+1)), 1/(2n)), epsilon_n decreasing", "exactmath::havil_epsilon",
         "avgent verify --check harmonic"},
        {"Franel remainder in (0,1) and fourth-order remainder in (0,1)", "exactmath::franel_epsilon",
         "avgent verify --check harmonic"},
        {"Weak bound H_n - ln n in (1/n, 1]", "exactmath::weak_epsilon", "avgent verify --check harmonic"},
        // per-state machinery
        {"Partial trace rho_K = tr_{rest} |psi><psi|", "quantum::partial_trace",
         "ctest -R quantum (partial trace cases)"},
        {"Schmidt equality: rho_K and rho_{rest} share nonzero spectrum", "quantum::spectrum_of",
         "avgent mc --dims 2x2 --keep 0 --quantity entropy"},
        {"Von Neumann entropy -sum lambda ln lambda", "quantum::von_neumann",
         "avgent mc --dims 2x2 --keep 0 --quantity entropy --samples 200000 --seed 42"},
        {"Tsallis entropy (1 - tr rho^q)/(q - 1)", "quantum::tsallis",
         "avgent mc --dims 3x5 --keep 1 --quantity tsallis --q 2"},
        {"Renyi entropy ln tr rho^q/(1 - q)", "quantum::renyi", "avgent mc --dims 2x4 --keep 0 --quantity renyi --q 2"},
        {"Purity tr rho^2", "quantum::purity", "avgent mc --dims 3x5 --keep 0 --quantity purity"},
        {"Tangle 2(1 - tr rho^2) = 2 S_Tsallis(q=2)", "quantum::tangle", "avgent mc --dims 2x2 --keep 0 --quantity tangle"},
        {"Concurrence sqrt(2(1 - tr rho^2))", "quantum::concurrence",
         "avgent mc --dims 2x2 --keep 0 --quantity concurrence"},
        {"Pure-state negativity ((tr sqrt rho)^2 - 1)/2", "quantum::pure_state_negativity",
         "avgent mc --dims 2x2 --keep 0 --quantity negativity"},
        {"Mutual information S_A + S_B - S_AB", "quantum::mutual_info",
         "avgent mc --dims 2x2x4 --a 0 --b 1 --quantity mutual-info --samples 100000 --seed 7"},
    };
    return table;
}

std::string claims_markdown() {
    std::string out = "| Claim | Operation | Checked by |\n|---|---|---|\n";
    for (const auto& c : claims()) out += "| " + c.claim + " | `" + c.operation + "` | `" + c.command + "` |\n";
    return out;
}

std::string claims_json() {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : claims()) arr.push_back({{"claim", c.claim}, {"operation", c.operation}, {"command", c.command}});
    return arr.dump(2);
}

} // namespace avgent::catalog
