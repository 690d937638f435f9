// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include "avgent/analytic.hpp"
#include "avgent/quantum.hpp"
#include "avgent/sampler.hpp"
#include "avgent/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>

using namespace avgent;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

Rational naive_harmonic(std::uint64_t n) {
    Rational h = 0;
    for (std::uint64_t i = 1; i <= n; ++i) h += Rational(1, i);
    return h;
}

std::string g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

Outcome criterion_1() {
    if (*analytic::page_sen_entropy(2, 2).exact != Rational(1, 3)) return {false, "S(2,2) != 1/3"};
    std::vector<Rational> h(401);
    for (std::uint64_t n = 1; n <= 400; ++n) h[n] = h[n - 1] + Rational(1, n);
    if (h[100] != naive_harmonic(100)) return {false, "harmonic table inconsistent"};
    int identities = 0;
    for (std::uint64_t k = 1; k <= 100; ++k) {
        const auto s2 = analytic::page_sen_entropy(2, k).exact;
        if (!s2 || *s2 != h[2 * k - 1] - h[k]) return {false, "S(2," + std::to_string(k) + ")"};
        ++identities;
        // The m = 3, 4 families presuppose m <= k.
        if (k >= 3) {
            const auto s3 = analytic::page_sen_entropy(3, k).exact;
            if (!s3 || *s3 != h[3 * k] - h[k] - Rational(1, k)) return {false, "S(3," + std::to_string(k) + ")"};
            ++identities;
        }
        if (k >= 4) {
            const auto s4 = analytic::page_sen_entropy(4, k).exact;
            if (!s4 || *s4 != h[4 * k] - h[k] - Rational(3, 2 * k)) return {false, "S(4," + std::to_string(k) + ")"};
            ++identities;
        }
    }
    return {true, "S(2,2) = 1/3; " + std::to_string(identities) + " family identities exact for m <= k <= 100"};
}

Outcome criterion_2() {
    // Compare at 30 significant digits: round both sides before testing strictness.
    const BigReal unit = pow(BigReal(10), -30);
    auto round30       = [&](const BigReal& x) { return BigReal(round(BigReal(x / unit)) * unit); };
    double worst       = 1;
    for (std::uint64_t M = 1; M <= 64; ++M) {
        const auto d1 = analytic::entropy_deficit(1, M);
        if (!d1.exact || *d1.exact != 0) return {false, "Delta(1," + std::to_string(M) + ") != 0"};
        for (std::uint64_t m = 2; m <= M; ++m) {
            const BigReal del = round30(analytic::entropy_deficit(m, M).nats);
            const BigReal lo  = round30(to_real(Rational(-BigInt(m), 2 * BigInt(M))));
            const BigReal hi  = round30(to_real(Rational(-BigInt(m - 1), 2 * BigInt(M))));
            if (!(lo < del && del < hi))
                return {false, "m=" + std::to_string(m) + " M=" + std::to_string(M) + " outside interval"};
            worst = std::min({worst, BigReal(del - lo).convert_to<double>(), BigReal(hi - del).convert_to<double>()});
        }
    }
    return {true, "2080 pairs strictly inside, min gap " + g(worst) + "; Delta(1,M) = 0 exactly"};
}

Outcome from_report(const verify::CheckReport& r) {
    std::string d = std::to_string(r.points) + " assertions, worst margin " + g(r.worst_margin);
    if (!r.passed()) d += ", " + std::to_string(r.failure_count) + " failures; first: " + r.failures[0].inputs + " " + r.failures[0].detail;
    return {r.passed(), d};
}

Outcome criterion_3() { return from_report(verify::check_harmonic_bounds(100000)); }

sampler::SampleSpec single(const char* dims, sampler::Quantity q, std::uint64_t samples, std::uint64_t seed) {
    const auto f = FactorList::parse(dims);
    return sampler::SampleSpec::single(f, q, Selector::parse(f, "0"), samples, seed);
}

std::string mc_text(const sampler::EstimateResult& r, double oracle) {
    return "mean " + g(r.mean) + " vs " + g(oracle) + ", stderr " + g(r.stderr_) + ", |z| " +
           g(std::abs(r.mean - oracle) / r.stderr_);
}

const sampler::SampleSpec kEntropySpec = single("2x2", sampler::Quantity::entropy, 200000, 42);

Outcome criterion_4() {
    const auto r = sampler::estimate(kEntropySpec, 0);
    const double oracle = 1.0 / 3.0;
    return {std::abs(r.mean - oracle) <= 3 * r.stderr_ && r.stderr_ <= 0.002, mc_text(r, oracle)};
}

Outcome criterion_5() {
    const auto p      = sampler::estimate(single("3x5", sampler::Quantity::purity, 100000, 42), 0);
    const auto t      = sampler::estimate(single("2x2", sampler::Quantity::tangle, 100000, 42), 0);
    const double po   = analytic::avg_purity(3, 5).convert_to<double>();
    const double to   = analytic::avg_tangle(2, 2).convert_to<double>();
    const bool ok     = po == 0.5 && std::abs(to - 0.4) < 1e-16 && std::abs(p.mean - po) <= 3 * p.stderr_ &&
                    std::abs(t.mean - to) <= 3 * t.stderr_;
    return {ok, "purity " + mc_text(p, po) + "; tangle " + mc_text(t, to)};
}

Outcome criterion_6() {
    const auto f    = FactorList::parse("2x2x4");
    const auto spec = sampler::SampleSpec::mutual(f, Selector::parse(f, "0"), Selector::parse(f, "1"), 100000, 7);
    const auto r    = sampler::estimate(spec, 0);
    const auto exact = analytic::tripartite_avg_mutual_info(2, 2, 4);
    const double oracle = exact.nats.convert_to<double>();
    const bool ok = exact.exact && *exact.exact == Rational(200611, 720720) && std::abs(r.mean - oracle) <= 3 * r.stderr_ &&
                    r.mean <= 0.5;
    return {ok, mc_text(r, oracle) + ", estimate <= 1/2"};
}

Outcome criterion_7() {
    std::uint64_t points = 0;
    double worst         = 1;
    for (std::uint64_t a = 1; a <= 4; ++a)
        for (std::uint64_t b = 1; b <= 4; ++b)
            for (std::uint64_t c = a * b; c <= 64; ++c) {
                const auto info  = analytic::tripartite_avg_mutual_info(a, b, c);
                const auto bound = analytic::tripartite_mutual_info_bound(a, b, c);
                if (!info.exact) return {false, "no exact value"};
                if (!(*info.exact <= bound && bound <= Rational(1, 2)))
                    return {false, "violated at " + std::to_string(a) + "x" + std::to_string(b) + "x" + std::to_string(c)};
                worst = std::min(worst, Rational(bound - *info.exact).convert_to<double>());
                ++points;
            }
    return {true, std::to_string(points) + " triples, min bound - <I> = " + g(worst)};
}

Outcome criterion_8() {
    std::uint64_t points = 0;
    for (std::uint64_t m : {2u, 3u, 4u}) {
        BigReal prev_gap = -1;
        for (unsigned k = 0; k <= 12; ++k) {
            const BigInt M    = BigInt(m) << k;
            const BigReal gap = abs(BigReal(analytic::page_sen_entropy(BigInt(m), M).nats - log_real(m)));
            if (gap > to_real(Rational(BigInt(m), 2 * M))) return {false, "entropy gap too large at k=" + std::to_string(k)};
            if (k > 0 && gap > prev_gap) return {false, "entropy gap increased at k=" + std::to_string(k)};
            prev_gap = gap;
            const Rational tau  = analytic::avg_tangle(BigInt(m), M);
            const Rational lim  = Rational(2) * (1 - Rational(1, m));
            const Rational def  = lim - tau;
            if (analytic::thermo_limit_tangle(m) != lim) return {false, "tangle limit mismatch"};
            if (def < 0 || def > Rational(2, M)) return {false, "tangle deficit above 2/M"};
            ++points;
        }
    }
    return {true, std::to_string(points) + " (m, k) points; entropy gaps <= m/(2M) and non-increasing; tangle deficit <= 2/M"};
}

Outcome criterion_9() {
    const auto f = FactorList::parse("2x2x4");
    const std::vector<std::string> subsets{"0", "1", "2", "0,1", "0,2", "1,2"};
    double worst_schmidt = 0, worst_lumped = 0, worst_cap = -1e9;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        auto stream      = sampler::sample_stream(2024, i);
        const auto state = sampler::sample_haar_state(f, stream);
        for (const auto& s : subsets) {
            const auto k    = Selector::parse(f, s);
            const auto kbar = k.complement(f);
            const double sk = quantum::von_neumann(quantum::spectrum_of(quantum::partial_trace(state, k)));
            const double sc = quantum::von_neumann(quantum::spectrum_of(quantum::partial_trace(state, kbar)));
            worst_schmidt   = std::max(worst_schmidt, std::abs(sk - sc));
            const double nk = k.kept_dim().convert_to<double>();
            worst_cap       = std::max(worst_cap, sk - std::log(std::min(nk, 16.0 / nk)));
        }
        const auto a  = Selector::parse(f, "0");
        const double sa = quantum::von_neumann(quantum::spectrum_of(quantum::partial_trace(state, a)));
        worst_lumped  = std::max(worst_lumped, std::abs(quantum::mutual_info(state, a, Selector::parse(f, "1,2")) - 2 * sa));
    }
    const bool ok = worst_schmidt <= 1e-9 && worst_lumped <= 1e-9 && worst_cap <= 1e-9;
    return {ok, "1000 states: max |S_K - S_Kbar| " + g(worst_schmidt) + ", max |I_A:BC - 2S_A| " + g(worst_lumped) +
                    ", max S_K - ln min " + g(worst_cap)};
}

Outcome criterion_10() {
    const auto r1 = sampler::estimate(kEntropySpec, 1);
    std::string detail = "mean " + g(r1.mean) + ", stderr " + g(r1.stderr_);
    for (unsigned w : {4u, 8u}) {
        const auto r = sampler::estimate(kEntropySpec, w);
        if (std::memcmp(&r.mean, &r1.mean, sizeof r.mean) || std::memcmp(&r.stderr_, &r1.stderr_, sizeof r.stderr_) ||
            r.samples != r1.samples || r.seed != r1.seed || r.quantity != r1.quantity)
            return {false, "workers=" + std::to_string(w) + " differs from workers=1"};
    }
    return {true, detail + " identical for workers 1, 4, 8"};
}

Outcome criterion_11() { return from_report(verify::check_approximation_slacks(verify::environment_grid(4, 4, 64))); }

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"exact Page-Sen values and family identities", criterion_1},
        {"entropy deficit interval", criterion_2},
        {"harmonic bounds for n <= 100000", criterion_3},
        {"MC entropy 2x2", criterion_4},
        {"MC purity 3x5 and tangle 2x2", criterion_5},
        {"MC tripartite mutual information 2x2x4", criterion_6},
        {"tripartite bound sweep", criterion_7},
        {"thermodynamic convergence", criterion_8},
        {"per-sample identities", criterion_9},
        {"determinism across worker counts", criterion_10},
        {"approximation slacks", criterion_11},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed ? 1 : 0;
}
