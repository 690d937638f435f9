#include "avgent/analytic.hpp"
#include "avgent/errors.hpp"
#include "avgent/sampler.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>

using namespace avgent;
using namespace avgent::sampler;

namespace {

SampleSpec entropy_spec(std::uint64_t samples, std::uint64_t seed) {
    const auto f = FactorList::parse("2x2");
    return SampleSpec::single(f, Quantity::entropy, Selector::parse(f, "0"), samples, seed);
}

bool same_bytes(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_CASE("quantity names round-trip") {
    for (auto q : {Quantity::entropy, Quantity::purity, Quantity::tangle, Quantity::concurrence, Quantity::negativity,
                   Quantity::renyi, Quantity::tsallis, Quantity::mutual_info})
        CHECK(parse_quantity(quantity_name(q)) == q);
    CHECK_THROWS_AS(parse_quantity("discord"), InvalidArgument);
}

TEST_CASE("haar states are normalized and depend only on seed and index") {
    const auto f = FactorList::parse("3x5");
    auto s1      = sample_stream(9, 4);
    auto s2      = sample_stream(9, 4);
    const auto a = sample_haar_state(f, s1);
    const auto b = sample_haar_state(f, s2);
    CHECK(a.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.amplitudes() == b.amplitudes());
    auto s3 = sample_stream(9, 5);
    CHECK(sample_haar_state(f, s3).amplitudes() != a.amplitudes());
    auto s4 = sample_stream(10, 4);
    CHECK(sample_haar_state(f, s4).amplitudes() != a.amplitudes());
}

TEST_CASE("estimate is invariant under the worker count") {
    const auto spec = entropy_spec(3000, 42);
    const auto ref  = estimate(spec, 1);
    for (unsigned w : {2u, 3u, 4u, 8u}) {
        const auto r = estimate(spec, w);
        CHECK(same_bytes(r.mean, ref.mean));
        CHECK(same_bytes(r.stderr_, ref.stderr_));
    }
}

TEST_CASE("estimate matches a direct recomputation from per-sample values") {
    const auto spec = entropy_spec(500, 3);
    long double sum = 0;
    std::vector<double> v;
    for (std::uint64_t i = 0; i < spec.samples; ++i) v.push_back(sample_value(spec, i));
    for (double x : v) sum += x;
    const long double mean = sum / v.size();
    long double ss         = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double se = std::sqrt(static_cast<double>(ss / (v.size() - 1) / v.size()));
    const auto r    = estimate(spec, 2);
    CHECK(r.mean == doctest::Approx(static_cast<double>(mean)).epsilon(1e-13));
    CHECK(r.stderr_ == doctest::Approx(se).epsilon(1e-10));
    CHECK(r.samples == 500);
    CHECK(r.seed == 3);
    CHECK(r.quantity == "entropy[0] on 2x2");
}

TEST_CASE("small campaigns land near the closed forms") {
    const auto f = FactorList::parse("3x5");
    for (auto q : {Quantity::purity, Quantity::tangle, Quantity::entropy}) {
        const auto spec   = SampleSpec::single(f, q, Selector::parse(f, "0"), 4000, 11);
        const auto r      = estimate(spec, 0);
        const auto oracle = analytic_oracle(spec);
        REQUIRE(oracle.has_value());
        CHECK(std::abs(r.mean - oracle->convert_to<double>()) / r.stderr_ < 4.5);
    }
    const auto g    = FactorList::parse("2x2x4");
    const auto spec = SampleSpec::mutual(g, Selector::parse(g, "0"), Selector::parse(g, "1"), 4000, 5);
    const auto r    = estimate(spec, 0);
    CHECK(std::abs(r.mean - 200611.0 / 720720.0) / r.stderr_ < 4.5);
}

TEST_CASE("oracles and bounds exist where a closed form does") {
    const auto f = FactorList::parse("2x2");
    const auto k = Selector::parse(f, "0");
    CHECK(analytic_oracle(SampleSpec::single(f, Quantity::tsallis, k, 10, 0, 2.0)).has_value());
    CHECK_FALSE(analytic_oracle(SampleSpec::single(f, Quantity::tsallis, k, 10, 0, 3.0)).has_value());
    CHECK_FALSE(analytic_oracle(SampleSpec::single(f, Quantity::negativity, k, 10, 0)).has_value());
    CHECK_FALSE(analytic_oracle(SampleSpec::single(f, Quantity::concurrence, k, 10, 0)).has_value());
    CHECK(analytic_upper_bound(SampleSpec::single(f, Quantity::concurrence, k, 10, 0)).has_value());
}

TEST_CASE("validation") {
    const auto f = FactorList::parse("2x2x4");
    CHECK_THROWS_AS(validate(entropy_spec(1, 0)), InvalidArgument);
    CHECK_THROWS_AS(validate(SampleSpec::mutual(f, Selector::parse(f, "0,1"), Selector::parse(f, "1"), 10, 0)),
                    InvalidArgument);
    CHECK_THROWS_AS(
        validate(SampleSpec::single(f, Quantity::renyi, Selector::parse(f, "0"), 10, 0, 1.0)), InvalidArgument);
    const auto one = FactorList::parse("1x1");
    CHECK_THROWS_AS(validate(SampleSpec::single(one, Quantity::entropy, Selector::parse(one, "0"), 10, 0)),
                    InvalidArgument);
    const auto huge = FactorList::parse("4096x4096");
    CHECK_THROWS_AS(validate(SampleSpec::single(huge, Quantity::entropy, Selector::parse(huge, "0"), 10, 0)),
                    CapExceeded);
    const auto wide = FactorList::parse("32x40");
    ::setenv("AVGENT_SPECTRAL_CAP", "31", 1);
    CHECK_THROWS_AS(validate(SampleSpec::single(wide, Quantity::entropy, Selector::parse(wide, "0"), 10, 0)),
                    CapExceeded);
    ::unsetenv("AVGENT_SPECTRAL_CAP");
    CHECK_NOTHROW(validate(SampleSpec::single(wide, Quantity::entropy, Selector::parse(wide, "0"), 10, 0)));
}
