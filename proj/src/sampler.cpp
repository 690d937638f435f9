#include "avgent/sampler.hpp"
#include "avgent/analytic.hpp"
#include "avgent/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace avgent::sampler {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_  = 0;
    double comp_ = 0;
};

const Selector& need(const std::optional<Selector>& s, const char* what) {
    if (!s) throw InvalidArgument(std::string("quantity needs a ") + what + " selector");
    return *s;
}

constexpr std::uint64_t kChunk = 256;

} // namespace

Quantity parse_quantity(std::string_view name) {
    if (name == "entropy") return Quantity::entropy;
    if (name == "purity") return Quantity::purity;
    if (name == "tangle") return Quantity::tangle;
    if (name == "concurrence") return Quantity::concurrence;
    if (name == "negativity") return Quantity::negativity;
    if (name == "renyi") return Quantity::renyi;
    if (name == "tsallis") return Quantity::tsallis;
    if (name == "mutual-info" || name == "mutual_info") return Quantity::mutual_info;
    throw InvalidArgument("unknown Monte Carlo quantity '" + std::string(name) + "'");
}

std::string_view quantity_name(Quantity q) {
    switch (q) {
    case Quantity::entropy: return "entropy";
    case Quantity::purity: return "purity";
    case Quantity::tangle: return "tangle";
    case Quantity::concurrence: return "concurrence";
    case Quantity::negativity: return "negativity";
    case Quantity::renyi: return "renyi";
    case Quantity::tsallis: return "tsallis";
    case Quantity::mutual_info: return "mutual-info";
    }
    return "?";
}

SampleSpec SampleSpec::single(FactorList factors, Quantity quantity, Selector keep, std::uint64_t samples,
                              std::uint64_t seed, double q) {
    SampleSpec s{std::move(factors), quantity, std::move(keep), std::nullopt, std::nullopt, q, samples, seed};
    return s;
}

SampleSpec SampleSpec::mutual(FactorList factors, Selector a, Selector b, std::uint64_t samples, std::uint64_t seed) {
    SampleSpec s{std::move(factors), Quantity::mutual_info, std::nullopt, std::move(a), std::move(b), 2.0, samples, seed};
    return s;
}

std::string SampleSpec::descriptor() const {
    std::string d(quantity_name(quantity));
    if (quantity == Quantity::renyi || quantity == Quantity::tsallis) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "(q=%.17g)", q);
        d += buf;
    }
    if (quantity == Quantity::mutual_info)
        d += "[" + (a ? a->to_string() : "") + ":" + (b ? b->to_string() : "") + "]";
    else
        d += "[" + (keep ? keep->to_string() : "") + "]";
    return d + " on " + factors.to_string();
}

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t sample_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(sample_index), static_cast<std::uint32_t>(sample_index >> 32)};
    return std::mt19937_64(seq);
}

quantum::PureState sample_haar_state(const FactorList& factors, std::mt19937_64& stream) {
    const auto cap = quantum::current_caps().state_amplitudes;
    if (factors.total() > cap)
        throw CapExceeded("state dimension " + factors.total().str() + " exceeds the materialization cap " +
                          std::to_string(cap));
    if (factors.total() < 2) throw InvalidArgument("Haar sampling needs total dimension >= 2");
    const auto n = factors.total().convert_to<Eigen::Index>();
    std::normal_distribution<double> gauss(0.0, 1.0);
    quantum::Amplitudes amp(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = gauss(stream);
        const double im = gauss(stream);
        amp[i] = {re, im};
    }
    return quantum::PureState::normalized(factors, std::move(amp));
}

void validate(const SampleSpec& spec) {
    const auto caps = quantum::current_caps();
    if (spec.samples < 2) throw InvalidArgument("need at least 2 samples for a standard error");
    if (spec.factors.total() > caps.state_amplitudes)
        throw CapExceeded("state dimension " + spec.factors.total().str() + " exceeds the materialization cap " +
                          std::to_string(caps.state_amplitudes));
    if (spec.factors.total() < 2) throw InvalidArgument("Haar sampling needs total dimension >= 2");

    auto check_side = [&](const Selector& s) {
        const auto cd = collection_dims(spec.factors, s);
        const BigInt& side = cd.kept <= cd.complement ? cd.kept : cd.complement;
        if (side > caps.spectral_side)
            throw CapExceeded("smaller side " + side.str() + " of collection {" + s.to_string() +
                              "} exceeds the spectral cap " + std::to_string(caps.spectral_side));
    };

    if (spec.quantity == Quantity::mutual_info) {
        const Selector& a = need(spec.a, "first (--a)");
        const Selector& b = need(spec.b, "second (--b)");
        if (!disjoint(a, b))
            throw InvalidArgument("mutual information selectors {" + a.to_string() + "} and {" + b.to_string() +
                                  "} overlap");
        check_side(a);
        check_side(b);
        check_side(a.united(spec.factors, b));
        return;
    }
    check_side(need(spec.keep, "keep (--keep)"));
    if (spec.quantity == Quantity::renyi || spec.quantity == Quantity::tsallis)
        if (!(spec.q > 0) || spec.q == 1.0 || !std::isfinite(spec.q))
            throw InvalidArgument("entropy index q must be positive, finite and != 1");
}

double sample_value(const SampleSpec& spec, std::uint64_t index) {
    auto stream = sample_stream(spec.seed, index);
    const auto state = sample_haar_state(spec.factors, stream);
    if (spec.quantity == Quantity::mutual_info) return quantum::mutual_info(state, *spec.a, *spec.b);

    const auto spec_k = quantum::spectrum_of(state, *spec.keep);
    switch (spec.quantity) {
    case Quantity::entropy: return quantum::von_neumann(spec_k);
    case Quantity::purity: return quantum::purity(spec_k);
    case Quantity::tangle: return quantum::tangle(spec_k);
    case Quantity::concurrence: return quantum::concurrence(spec_k);
    case Quantity::negativity: return quantum::pure_state_negativity(spec_k);
    case Quantity::renyi: return quantum::renyi(spec_k, spec.q);
    case Quantity::tsallis: return quantum::tsallis(spec_k, spec.q);
    case Quantity::mutual_info: break;
    }
    throw InvalidArgument("unhandled quantity");
}

EstimateResult estimate(const SampleSpec& spec, unsigned workers) {
    validate(spec);
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t n = spec.samples;
    std::vector<double> values(n);

    // Workers claim fixed chunks of sample indices; each value depends only on (seed, index).
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (std::uint64_t begin; (begin = next.fetch_add(kChunk)) < n;) {
                const std::uint64_t end = std::min(n, begin + kChunk);
                for (std::uint64_t i = begin; i < end; ++i) values[i] = sample_value(spec, i);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(n);
        }
    };
    const unsigned nthreads = static_cast<unsigned>(std::min<std::uint64_t>(workers, (n + kChunk - 1) / kChunk));
    if (nthreads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    // Fixed index-order reduction.
    CompensatedSum sum;
    for (double v : values) sum.add(v);
    const double mean = sum.value() / static_cast<double>(n);
    CompensatedSum sq;
    for (double v : values) sq.add((v - mean) * (v - mean));
    const double var = sq.value() / static_cast<double>(n - 1);

    return {mean, std::sqrt(var / static_cast<double>(n)), n, spec.seed, spec.descriptor()};
}

std::optional<BigReal> analytic_oracle(const SampleSpec& spec) {
    if (spec.quantity == Quantity::mutual_info)
        return analytic::multipartite_avg_mutual_info(spec.factors, *spec.a, *spec.b).nats;
    if (!spec.keep) return std::nullopt;
    const auto cd = collection_dims(spec.factors, *spec.keep);
    switch (spec.quantity) {
    case Quantity::entropy: return analytic::multipartite_collection_entropy(spec.factors, *spec.keep).nats;
    case Quantity::purity: return to_real(analytic::avg_purity(cd.kept, cd.complement));
    case Quantity::tangle: return to_real(analytic::avg_tangle(cd.kept, cd.complement));
    case Quantity::tsallis:
        if (spec.q == 2.0) return to_real(1 - analytic::avg_purity(cd.kept, cd.complement));
        return std::nullopt;
    default: return std::nullopt;
    }
}

std::optional<BigReal> analytic_upper_bound(const SampleSpec& spec) {
    if (spec.quantity != Quantity::concurrence || !spec.keep) return std::nullopt;
    const auto cd = collection_dims(spec.factors, *spec.keep);
    return analytic::concurrence_bound(cd.kept, cd.complement);
}

} // namespace avgent::sampler
