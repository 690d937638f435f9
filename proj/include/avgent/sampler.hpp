#pragma once

#include "avgent/exactmath.hpp"
#include "avgent/partition.hpp"
#include "avgent/quantum.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace avgent::sampler {

enum class Quantity { entropy, purity, tangle, concurrence, negativity, renyi, tsallis, mutual_info };

/// "entropy", "purity", ..., "mutual-info" (also accepts "mutual_info").
Quantity parse_quantity(std::string_view name);
std::string_view quantity_name(Quantity q);

struct SampleSpec {
    FactorList factors;
    Quantity quantity = Quantity::entropy;
    std::optional<Selector> keep; // single-collection quantities
    std::optional<Selector> a;    // mutual_info
    std::optional<Selector> b;
    double q              = 2.0; // renyi / tsallis index
    std::uint64_t samples = 0;
    std::uint64_t seed    = 0;

    static SampleSpec single(FactorList factors, Quantity quantity, Selector keep, std::uint64_t samples,
                             std::uint64_t seed, double q = 2.0);
    static SampleSpec mutual(FactorList factors, Selector a, Selector b, std::uint64_t samples, std::uint64_t seed);

    /// e.g. "entropy[0] on 2x2" or "mutual-info[0:1] on 2x2x4".
    std::string descriptor() const;
};

struct EstimateResult {
    double mean   = 0;
    double stderr_ = 0; // sample standard deviation / sqrt(samples), unbiased variance
    std::uint64_t samples = 0;
    std::uint64_t seed    = 0;
    std::string quantity;
};

/// Random stream for one sample, a pure function of (seed, sample_index).
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t sample_index);

/// Haar-uniform state: 2n iid standard normals as n complex amplitudes, normalized.
/// Throws CapExceeded above the state cap and InvalidArgument for n < 2.
quantum::PureState sample_haar_state(const FactorList& factors, std::mt19937_64& stream);

/// Throws InvalidArgument / CapExceeded for any problem, before sampling starts.
void validate(const SampleSpec& spec);

/// The per-state quantity for sample `index` of `spec`.
double sample_value(const SampleSpec& spec, std::uint64_t index);

/// Mean and standard error over exactly spec.samples draws. Bit-identical for any
/// worker count (0 means hardware concurrency).
EstimateResult estimate(const SampleSpec& spec, unsigned workers);

/// Closed-form average for the quantity when one exists.
std::optional<BigReal> analytic_oracle(const SampleSpec& spec);

/// Closed-form upper bound when only a bound exists (concurrence).
std::optional<BigReal> analytic_upper_bound(const SampleSpec& spec);

} // namespace avgent::sampler
