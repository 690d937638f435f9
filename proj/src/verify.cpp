#include "avgent/verify.hpp"
#include "avgent/analytic.hpp"
#include "avgent/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace avgent::verify {

namespace {

using analytic::Value;

// Margin recorded for an exact identity that holds.
constexpr double kExact = std::numeric_limits<double>::infinity();

double to_double(const BigReal& x) { return x.convert_to<double>(); }
double to_double(const Rational& q) { return to_double(to_real(q)); }

std::string fmt(const BigReal& x) { return to_string(x, 30); }

std::string triple_text(const Triple& t) {
    return "nA=" + std::to_string(t.na) + " nB=" + std::to_string(t.nb) + " nC=" + std::to_string(t.nc);
}

// Exact difference when both sides are rational, otherwise working-precision reals.
struct Compared {
    double margin;
    bool nonnegative; // margin >= 0
    bool positive;    // margin > 0
};

Compared compare(const Value& hi, const Value& lo) {
    if (hi.exact && lo.exact) {
        const Rational d = *hi.exact - *lo.exact;
        return {to_double(d), d >= 0, d > 0};
    }
    const BigReal d = hi.nats - lo.nats;
    return {to_double(d), d >= 0, d > 0};
}

Value rational_value(const Rational& q) {
    Value v;
    v.nats  = to_real(q);
    v.exact = q;
    return v;
}

} // namespace

void CheckReport::assert_margin(std::string_view label, double margin, bool ok, const std::string& inputs,
                                const std::string& detail) {
    ++points;
    auto it = std::find_if(observations.begin(), observations.end(), [&](const auto& o) { return o.first == label; });
    if (it == observations.end())
        observations.emplace_back(std::string(label), margin);
    else if (margin < it->second)
        it->second = margin;
    if (margin < worst_margin) {
        worst_margin = margin;
        worst_point  = std::string(label) + " @ " + inputs;
    }
    if (!ok) {
        ++failure_count;
        if (failures.size() < kMaxRecordedFailures)
            failures.push_back({inputs, std::string(label) + ": " + detail, margin});
    }
}

std::vector<Triple> environment_grid(std::uint64_t na_max, std::uint64_t nb_max, std::uint64_t nc_max) {
    std::vector<Triple> grid;
    for (std::uint64_t a = 1; a <= na_max; ++a)
        for (std::uint64_t b = 1; b <= nb_max; ++b)
            for (std::uint64_t c = a * b; c <= nc_max; ++c) grid.push_back({a, b, c});
    return grid;
}

CheckReport check_delta_interval(std::uint64_t m_max, std::uint64_t big_m_max) {
    CheckReport r;
    r.name = "delta-interval";
    r.grid = "1 <= m <= M, m <= " + std::to_string(m_max) + ", M <= " + std::to_string(big_m_max);
    for (std::uint64_t M = 1; M <= big_m_max; ++M) {
        const auto d = analytic::entropy_deficit(1, M);
        const bool zero = d.exact && *d.exact == 0;
        r.assert_margin("m1_exact_zero", zero ? kExact : -std::abs(to_double(d.nats)), zero,
                        "m=1 M=" + std::to_string(M), "Delta=" + fmt(d.nats));
    }
    for (std::uint64_t m = 2; m <= m_max; ++m) {
        for (std::uint64_t M = m; M <= big_m_max; ++M) {
            const BigReal delta = analytic::entropy_deficit(m, M).nats;
            const BigReal lo    = -BigReal(m) / (2 * M);
            const BigReal hi    = -BigReal(m - 1) / (2 * M);
            const std::string in = "m=" + std::to_string(m) + " M=" + std::to_string(M);
            const std::string detail = "Delta=" + fmt(delta) + " interval (" + fmt(lo) + ", " + fmt(hi) + ")";
            r.assert_margin("lower", to_double(delta - lo), delta > lo, in, detail);
            r.assert_margin("upper", to_double(hi - delta), delta < hi, in, detail);
        }
    }
    return r;
}

CheckReport check_harmonic_bounds(std::uint64_t n_max) {
    CheckReport r;
    r.name = "harmonic";
    r.grid = "1 <= n <= " + std::to_string(n_max);
    const BigReal& gamma = euler_gamma();
    BigReal h         = 0;
    BigReal prev_eps  = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const BigReal x(n);
        h += 1 / x;
        const BigReal ln  = mp::log(x);
        const BigReal eps = h - gamma - ln;
        const std::string in = "n=" + std::to_string(n);

        const BigReal lo = 1 / (2 * (x + 1));
        const BigReal hi = 1 / (2 * x);
        r.assert_margin("havil", to_double(eps - lo < hi - eps ? eps - lo : hi - eps), eps > lo && eps < hi, in,
                        "epsilon=" + fmt(eps));

        const BigReal franel = 8 * x * x * (gamma + ln + 1 / (2 * x) - h);
        r.assert_margin("franel", to_double(franel < 1 - franel ? franel : 1 - franel), franel > 0 && franel < 1, in,
                        "franel=" + fmt(franel));

        const BigReal fourth = 120 * mp::pow(x, 4) * (eps - 1 / (2 * x) + 1 / (12 * x * x));
        r.assert_margin("fourth_order", to_double(fourth < 1 - fourth ? fourth : 1 - fourth), fourth > 0 && fourth < 1,
                        in, "fourth=" + fmt(fourth));

        const BigReal weak = h - ln;
        if (n == 1) {
            r.assert_margin("weak", weak == 1 ? kExact : -1.0, weak == 1, in, "weak=" + fmt(weak) + " (must equal 1)");
        } else {
            const BigReal wlo = 1 / x;
            r.assert_margin("weak", to_double(weak - wlo < 1 - weak ? weak - wlo : 1 - weak), weak > wlo && weak < 1,
                            in, "weak=" + fmt(weak));
        }

        if (n > 1)
            r.assert_margin("monotone", to_double(prev_eps - eps), eps < prev_eps, in,
                            "epsilon_n=" + fmt(eps) + " previous=" + fmt(prev_eps));
        prev_eps = eps;
    }
    if (n_max >= 1) {
        // Incremental sum against the independent exact / series route.
        const BigReal ref  = harmonic_approx(n_max, 80);
        const BigReal diff = mp::abs(h - ref);
        r.assert_margin("running_sum_vs_exact", to_double(BigReal("1e-80") - diff), diff < BigReal("1e-80"),
                        "n=" + std::to_string(n_max), "difference=" + to_string(diff, 90));
    }
    return r;
}

CheckReport check_tripartite_bound(const std::vector<Triple>& grid) {
    CheckReport r;
    r.name = "tripartite-bound";
    r.grid = std::to_string(grid.size()) + " triples with nA nB <= nC";
    const Value half = rational_value(Rational(1, 2));
    const Value zero = rational_value(Rational(0));
    for (const auto& t : grid) {
        const std::string in = triple_text(t);
        const Value info  = analytic::tripartite_avg_mutual_info(t.na, t.nb, t.nc);
        const Value bound = rational_value(analytic::tripartite_mutual_info_bound(t.na, t.nb, t.nc));
        const std::string detail = "I=" + fmt(info.nats) + " bound=" + fmt(bound.nats);

        auto c = compare(info, zero);
        r.assert_margin("nonnegative", c.margin, c.nonnegative, in, detail);
        c = compare(bound, info);
        r.assert_margin("theorem_bound", c.margin, c.nonnegative, in, detail);
        c = compare(half, bound);
        r.assert_margin("half_nat", c.margin, c.nonnegative, in, detail);

        // Same quantity via collection entropies S_A + S_B - S_AB.
        const FactorList f({t.na, t.nb, t.nc});
        const Value lumped = analytic::multipartite_avg_mutual_info(f, Selector(f, {0}), Selector(f, {1}));
        const auto d = compare(info, lumped);
        const bool same = info.exact && lumped.exact ? *info.exact == *lumped.exact
                                                     : mp::abs(info.nats - lumped.nats) < BigReal("1e-80");
        r.assert_margin("two_routes_agree", same ? kExact : -std::abs(d.margin), same, in,
                        "closed form " + fmt(info.nats) + " vs entropy combination " + fmt(lumped.nats));
    }
    return r;
}

CheckReport check_approximation_slacks(const std::vector<Triple>& grid) {
    CheckReport r;
    r.name = "approximation-slacks";
    r.grid = std::to_string(grid.size()) + " triples with nA nB <= nC";
    const BigReal three_halves = BigReal(3) / 2;
    for (const auto& t : grid) {
        const std::string in = triple_text(t);
        const BigReal sa = analytic::page_sen_entropy(t.na, t.nb * t.nc).nats;
        const BigReal sb = analytic::page_sen_entropy(t.nb, t.na * t.nc).nats;
        const BigReal sc = analytic::page_sen_entropy(t.nc, t.na * t.nb).nats;

        // Sum rule on each lumped bipartition X | rest.
        const std::uint64_t n = t.na * t.nb * t.nc;
        for (std::uint64_t nx : {t.na, t.nb, t.nc}) {
            const std::uint64_t nr = n / nx;
            const auto asym = analytic::asymmetric_info(nx, nr);
            const BigReal s   = analytic::page_sen_entropy(nx, nr).nats;
            const BigReal dev = mp::abs(asym.tilde_ab.nats + asym.tilde_ba.nats + 2 * s - log_real(nx * nr));
            r.assert_margin("sum_rule", to_double(three_halves - dev), dev <= three_halves,
                            in + " split=" + std::to_string(nx) + "|" + std::to_string(nr), "deviation=" + fmt(dev));
        }

        const BigReal pair_dev = mp::abs(sa + sb - sc);
        r.assert_margin("sa_plus_sb_vs_sc", to_double(1 - pair_dev), pair_dev <= 1, in, "deviation=" + fmt(pair_dev));

        const BigReal iac_dev = mp::abs((sa + sc - sb) - 2 * sa);
        r.assert_margin("i_ac_vs_2sa", to_double(1 - iac_dev), iac_dev <= 1, in, "deviation=" + fmt(iac_dev));
        const BigReal ibc_dev = mp::abs((sb + sc - sa) - 2 * sb);
        r.assert_margin("i_bc_vs_2sb", to_double(1 - ibc_dev), ibc_dev <= 1, in, "deviation=" + fmt(ibc_dev));

        const BigReal approx  = analytic::tripartite_entropy_sum_approx(t.na, t.nb, t.nc).nats;
        const BigReal sum_dev = mp::abs(sa + sb + sc - approx);
        r.assert_margin("entropy_sum_approx", to_double(three_halves - sum_dev), sum_dev <= three_halves, in,
                        "sum=" + fmt(sa + sb + sc) + " approx=" + fmt(approx));
    }
    return r;
}

CheckReport check_thermo_limits(const std::vector<std::uint64_t>& ms, unsigned k_max) {
    CheckReport r;
    r.name = "thermo-limit";
    r.grid = "M = m 2^k, k <= " + std::to_string(k_max);
    for (std::uint64_t m : ms) {
        const BigReal ln_m        = analytic::thermo_limit_entropy(m).nats;
        const Rational tangle_lim = analytic::thermo_limit_tangle(m);
        BigReal prev_deficit;
        Rational prev_tangle;
        for (unsigned k = 0; k <= k_max; ++k) {
            const std::uint64_t M = m << k;
            const std::string in  = "m=" + std::to_string(m) + " M=" + std::to_string(M);
            const BigReal deficit = ln_m - analytic::page_sen_entropy(m, M).nats;
            const BigReal bound   = BigReal(m) / (2 * M);
            r.assert_margin("entropy_deficit_bound", to_double(bound - deficit), deficit >= 0 && deficit <= bound, in,
                            "ln m - S=" + fmt(deficit) + " bound=" + fmt(bound));
            if (k > 0)
                r.assert_margin("entropy_deficit_nonincreasing", to_double(prev_deficit - deficit),
                                deficit <= prev_deficit, in, "deficit=" + fmt(deficit) + " previous=" + fmt(prev_deficit));

            const Rational tangle = analytic::avg_tangle(m, M);
            const Rational gap    = tangle_lim - tangle;
            const Rational closed = analytic::tangle_deficit(m, M);
            r.assert_margin("tangle_deficit_identity", gap == closed ? kExact : -std::abs(to_double(Rational(gap - closed))),
                            gap == closed, in, "limit-<tau>=" + to_string(gap) + " closed form=" + to_string(closed));
            const Rational two_over_m(2, M);
            r.assert_margin("tangle_deficit_bound", to_double(Rational(two_over_m - gap)), gap >= 0 && gap <= two_over_m, in,
                            "deficit=" + to_string(gap));
            if (k > 0)
                r.assert_margin("tangle_nondecreasing", to_double(Rational(tangle - prev_tangle)), tangle >= prev_tangle, in,
                                "<tau>=" + to_string(tangle) + " previous=" + to_string(prev_tangle));
            prev_deficit = deficit;
            prev_tangle  = tangle;
        }
    }
    return r;
}

CheckReport check_multipartite_bounds(const std::vector<FactorList>& factor_lists) {
    CheckReport r;
    r.name = "multipartite";
    std::string grid;
    for (const auto& f : factor_lists) grid += (grid.empty() ? "" : " ") + f.to_string();
    r.grid = grid;
    const Value half = rational_value(Rational(1, 2));
    const Value zero = rational_value(Rational(0));
    for (const auto& f : factor_lists) {
        const std::size_t nf = f.size();
        if (nf > 10) throw InvalidArgument("multipartite check enumerates subsets; use at most 10 factors");
        auto subset = [&](std::uint32_t mask) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < nf; ++i)
                if (mask >> i & 1u) idx.push_back(i);
            return Selector(f, std::move(idx));
        };
        const std::uint32_t full = (1u << nf) - 1;
        for (std::uint32_t mask = 0; mask <= full; ++mask) {
            const Selector k = subset(mask);
            const auto split = min_max_split(k.kept_dim(), f.total());
            const BigReal delta = analytic::multipartite_collection_entropy(f, k).nats - log_real(split.m);
            const std::string in = "dims=" + f.to_string() + " K={" + k.to_string() + "}";
            if (split.m == 1) {
                r.assert_margin("trivial_collection_zero", delta == 0 ? kExact : -to_double(mp::abs(delta)), delta == 0, in,
                                "Delta=" + fmt(delta));
            } else {
                r.assert_margin("half_nat_lower", to_double(delta + BigReal(1) / 2), delta > BigReal(-1) / 2, in,
                                "Delta=" + fmt(delta));
                r.assert_margin("below_max_mixing", to_double(-delta), delta < 0, in, "Delta=" + fmt(delta));
            }
        }
        for (std::uint32_t ma = 1; ma <= full; ++ma) {
            for (std::uint32_t mb = 1; mb <= full; ++mb) {
                if (ma & mb) continue;
                const Selector a = subset(ma), b = subset(mb);
                const BigInt nab = a.kept_dim() * b.kept_dim();
                if (nab * nab > f.total()) continue;
                const std::string in = "dims=" + f.to_string() + " A={" + a.to_string() + "} B={" + b.to_string() + "}";
                const Value info  = analytic::multipartite_avg_mutual_info(f, a, b);
                const Value bound = rational_value(analytic::multipartite_mutual_info_bound(f, a, b));
                const std::string detail = "I=" + fmt(info.nats) + " bound=" + fmt(bound.nats);
                auto c = compare(info, zero);
                r.assert_margin("nonnegative", c.margin, c.nonnegative, in, detail);
                c = compare(bound, info);
                r.assert_margin("collection_bound", c.margin, c.nonnegative, in, detail);
                c = compare(half, bound);
                r.assert_margin("half_nat", c.margin, c.nonnegative, in, detail);
            }
        }
    }
    return r;
}

CheckReport check_mc_agreement(const std::vector<McCase>& campaign, unsigned workers) {
    CheckReport r;
    r.name = "mc-agreement";
    r.grid = std::to_string(campaign.size()) + " sampling specs";
    for (const auto& c : campaign) {
        const auto est = sampler::estimate(c.spec, workers);
        std::ostringstream in;
        in << c.spec.descriptor() << " samples=" << c.spec.samples << " seed=" << c.spec.seed;
        std::optional<BigReal> target = c.target == McTarget::oracle ? sampler::analytic_oracle(c.spec)
                                                                     : sampler::analytic_upper_bound(c.spec);
        if (!target) throw InvalidArgument("no closed form available for " + c.spec.descriptor());
        const double ref = to_double(*target);
        const double z   = c.target == McTarget::oracle ? std::abs(est.mean - ref) / est.stderr_
                                                        : (est.mean - ref) / est.stderr_;
        std::ostringstream detail;
        detail.precision(10);
        detail << "mean=" << est.mean << " stderr=" << est.stderr_ << (c.target == McTarget::oracle ? " oracle=" : " bound=")
               << ref << " z=" << z;
        r.assert_margin(c.target == McTarget::oracle ? "z_score" : "z_above_bound", kZThreshold - z, z <= kZThreshold,
                        in.str(), detail.str());
        r.assert_margin("stderr_ceiling", c.stderr_ceiling - est.stderr_, est.stderr_ <= c.stderr_ceiling, in.str(),
                        detail.str());
    }
    return r;
}

std::vector<McCase> default_campaign(std::uint64_t base_seed) {
    using sampler::Quantity;
    using sampler::SampleSpec;
    const FactorList d22({2, 2});
    const FactorList d35({3, 5});
    const FactorList d224({2, 2, 4});
    const FactorList d235({2, 3, 5});
    std::vector<McCase> c;
    c.push_back({SampleSpec::single(d22, Quantity::entropy, Selector(d22, {0}), 200000, base_seed + 0), 0.002});
    c.push_back({SampleSpec::single(d35, Quantity::purity, Selector(d35, {0}), 100000, base_seed + 1), 0.002});
    c.push_back({SampleSpec::single(d22, Quantity::tangle, Selector(d22, {0}), 100000, base_seed + 2), 0.002});
    c.push_back({SampleSpec::mutual(d224, Selector(d224, {0}), Selector(d224, {1}), 100000, base_seed + 3), 0.002});
    c.push_back({SampleSpec::single(d235, Quantity::entropy, Selector(d235, {0, 2}), 20000, base_seed + 4), 0.005});
    c.push_back({SampleSpec::single(d35, Quantity::tsallis, Selector(d35, {1}), 20000, base_seed + 5, 2.0), 0.005});
    c.push_back({SampleSpec::single(d22, Quantity::concurrence, Selector(d22, {0}), 50000, base_seed + 6), 0.005,
                 McTarget::upper_bound});
    return c;
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{"delta-interval", "harmonic",     "tripartite-bound",
                                                "approximation-slacks", "thermo-limit", "multipartite",
                                                "mc-agreement", "all"};
    return names;
}

std::vector<CheckReport> run(std::string_view check, const VerifyConfig& cfg) {
    const bool all = check == "all";
    bool known     = all;
    std::vector<CheckReport> out;
    auto want = [&](std::string_view name) {
        if (all || check == name) {
            known = true;
            return true;
        }
        return false;
    };
    if (want("delta-interval")) out.push_back(check_delta_interval(cfg.m_max, cfg.big_m_max));
    if (want("harmonic")) out.push_back(check_harmonic_bounds(cfg.n_max));
    if (want("tripartite-bound"))
        out.push_back(check_tripartite_bound(environment_grid(cfg.na_max, cfg.nb_max, cfg.nc_max)));
    if (want("approximation-slacks"))
        out.push_back(check_approximation_slacks(environment_grid(cfg.na_max, cfg.nb_max, cfg.nc_max)));
    if (want("thermo-limit")) out.push_back(check_thermo_limits(cfg.thermo_ms, cfg.k_max));
    if (want("multipartite"))
        out.push_back(check_multipartite_bounds({FactorList({2, 2, 8}), FactorList({2, 3, 4, 6}),
                                                 FactorList({2, 2, 2, 2, 16}), FactorList({3, 3, 27}),
                                                 FactorList({2, 2, 2, 2, 2, 2})}));
    if (want("mc-agreement")) out.push_back(check_mc_agreement(default_campaign(cfg.seed), cfg.workers));
    if (!known) throw InvalidArgument("unknown check '" + std::string(check) + "'");
    return out;
}

std::string to_json(const std::vector<CheckReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json obs = nlohmann::json::object();
        for (const auto& [label, margin] : r.observations) obs[label] = margin;
        nlohmann::json fails = nlohmann::json::array();
        for (const auto& f : r.failures) fails.push_back({{"inputs", f.inputs}, {"detail", f.detail}, {"margin", f.margin}});
        arr.push_back({{"check", r.name},
                       {"passed", r.passed()},
                       {"grid", r.grid},
                       {"points", r.points},
                       {"worst_margin", r.worst_margin},
                       {"worst_point", r.worst_point},
                       {"observed_margins", obs},
                       {"failure_count", r.failure_count},
                       {"failures", fails}});
    }
    return arr.dump();
}

} // namespace avgent::verify
