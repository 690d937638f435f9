#include "avgent/quantum.hpp"
#include "avgent/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>

namespace avgent::quantum {

namespace {

constexpr double kNormTol     = 1e-12;
constexpr double kClampTol    = 1e-8;
constexpr double kSumTol      = 1e-10;
constexpr double kMutualClamp = 1e-9;

std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end          = nullptr;
    unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0) return fallback;
    return v;
}

std::uint64_t as_index(const BigInt& n, std::uint64_t cap, const char* what) {
    if (n > cap) throw CapExceeded(std::string(what) + " " + n.str() + " exceeds cap " + std::to_string(cap));
    return n.convert_to<std::uint64_t>();
}

void require_q(double q) {
    if (!(q > 0) || q == 1.0 || !std::isfinite(q))
        throw InvalidArgument("entropy index q must be positive, finite and != 1 (got " + std::to_string(q) + ")");
}

double power_sum(const Spectrum& spec, double q) {
    double s = 0;
    for (double l : spec.values())
        if (l > 0) s += std::pow(l, q);
    return s;
}

} // namespace

Caps current_caps() {
    Caps c;
    c.state_amplitudes = env_cap("AVGENT_STATE_CAP", c.state_amplitudes);
    c.spectral_side    = env_cap("AVGENT_SPECTRAL_CAP", c.spectral_side);
    return c;
}

PureState::PureState(FactorList factors, Amplitudes amplitudes)
    : factors_(std::move(factors)), amplitudes_(std::move(amplitudes)) {
    if (BigInt(amplitudes_.size()) != factors_.total())
        throw InvalidArgument("state has " + std::to_string(amplitudes_.size()) + " amplitudes but dimensions " +
                              factors_.to_string() + " need " + factors_.total().str());
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTol)
        throw InvalidArgument("state is not normalized (|psi|^2 = " + std::to_string(amplitudes_.squaredNorm()) + ")");
}

PureState PureState::normalized(FactorList factors, Amplitudes amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0)) throw InvalidArgument("cannot normalize the zero vector");
    amplitudes /= norm;
    return PureState(std::move(factors), std::move(amplitudes));
}

Spectrum::Spectrum(std::vector<double> eigenvalues) : values_(std::move(eigenvalues)) {
    for (double& l : values_) {
        if (!std::isfinite(l) || l < -kClampTol)
            throw PrecisionFailure("eigenvalue " + std::to_string(l) + " is below -1e-8; spectral kernel is broken");
        l = std::clamp(l, 0.0, 1.0);
    }
    std::sort(values_.begin(), values_.end(), std::greater<>());
    const double sum = std::accumulate(values_.begin(), values_.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTol)
        throw PrecisionFailure("spectrum sums to " + std::to_string(sum) + ", not 1");
}

Eigen::MatrixXcd reshape(const PureState& state, const Selector& keep) {
    const auto& dims = state.factors().dims();
    const std::size_t nf = dims.size();
    const auto cd = collection_dims(state.factors(), keep);
    const auto rows = cd.kept.convert_to<Eigen::Index>();
    const auto cols = cd.complement.convert_to<Eigen::Index>();

    // Per-factor stride inside the kept or complement multi-index.
    std::vector<Eigen::Index> stride(nf, 0);
    std::vector<bool> kept(nf, false);
    Eigen::Index ks = 1, cs = 1;
    for (std::size_t i = nf; i-- > 0;) {
        kept[i] = keep.contains(i);
        if (kept[i]) {
            stride[i] = ks;
            ks *= static_cast<Eigen::Index>(dims[i]);
        } else {
            stride[i] = cs;
            cs *= static_cast<Eigen::Index>(dims[i]);
        }
    }

    Eigen::MatrixXcd psi(rows, cols);
    std::vector<std::uint64_t> digit(nf, 0);
    Eigen::Index a = 0, c = 0;
    const auto& amp = state.amplitudes();
    for (Eigen::Index f = 0; f < amp.size(); ++f) {
        psi(a, c) = amp[f];
        // advance the mixed-radix counter, least significant factor last
        for (std::size_t i = nf; i-- > 0;) {
            Eigen::Index& target = kept[i] ? a : c;
            if (++digit[i] < dims[i]) {
                target += stride[i];
                break;
            }
            digit[i] = 0;
            target -= stride[i] * static_cast<Eigen::Index>(dims[i] - 1);
        }
    }
    return psi;
}

DensityMatrix partial_trace(const PureState& state, const Selector& keep) {
    const auto caps = current_caps();
    as_index(collection_dims(state.factors(), keep).kept, caps.spectral_side,
             "kept dimension (use spectrum_of for the Gram path)");
    const Eigen::MatrixXcd psi = reshape(state, keep);
    return psi * psi.adjoint();
}

Spectrum spectrum_of(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw PrecisionFailure("Hermitian eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    return Spectrum(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

Spectrum spectrum_of(const PureState& state, const Selector& sel) {
    const auto caps = current_caps();
    const auto cd   = collection_dims(state.factors(), sel);
    const BigInt& side = cd.kept <= cd.complement ? cd.kept : cd.complement;
    as_index(side, caps.spectral_side, "smaller subsystem dimension");
    const Eigen::MatrixXcd psi = reshape(state, sel);
    if (cd.kept <= cd.complement) return spectrum_of(DensityMatrix(psi * psi.adjoint()));
    return spectrum_of(DensityMatrix(psi.adjoint() * psi));
}

double von_neumann(const Spectrum& spec) {
    double s = 0;
    for (double l : spec.values())
        if (l > 0) s -= l * std::log(l);
    return s;
}

double tsallis(const Spectrum& spec, double q) {
    require_q(q);
    return (1 - power_sum(spec, q)) / (q - 1);
}

double renyi(const Spectrum& spec, double q) {
    require_q(q);
    return std::log(power_sum(spec, q)) / (1 - q);
}

double purity(const Spectrum& spec) {
    double s = 0;
    for (double l : spec.values()) s += l * l;
    return s;
}

double tangle(const Spectrum& spec) { return 2 * (1 - purity(spec)); }

double concurrence(const Spectrum& spec) { return std::sqrt(std::max(0.0, tangle(spec))); }

double pure_state_negativity(const Spectrum& spec) {
    double t = 0;
    for (double l : spec.values()) t += std::sqrt(l);
    return (t * t - 1) / 2;
}

double mutual_info(const PureState& state, const Selector& a, const Selector& b) {
    if (!disjoint(a, b))
        throw InvalidArgument("mutual information needs disjoint selectors, got {" + a.to_string() + "} and {" +
                              b.to_string() + "}");
    const auto& f = state.factors();
    const double i = von_neumann(spectrum_of(state, a)) + von_neumann(spectrum_of(state, b)) -
                     von_neumann(spectrum_of(state, a.united(f, b)));
    if (i < -kMutualClamp) throw PrecisionFailure("mutual information came out negative: " + std::to_string(i));
    return std::max(0.0, i);
}

} // namespace avgent::quantum
