#pragma once

#include "avgent/partition.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace avgent::quantum {

using Complex       = std::complex<double>;
using Amplitudes    = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

/// Resource limits for materialized states and dense eigenproblems.
struct Caps {
    std::uint64_t state_amplitudes = std::uint64_t{1} << 22;
    std::uint64_t spectral_side    = 2048;
};

/// Default caps, with AVGENT_STATE_CAP / AVGENT_SPECTRAL_CAP environment overrides.
Caps current_caps();

/// Unit-norm amplitude vector over a FactorList, row-major with factor 0 most significant.
class PureState {
  public:
    /// Takes amplitudes as given; throws InvalidArgument if the length is wrong or
    /// the norm differs from 1 by more than 1e-12.
    PureState(FactorList factors, Amplitudes amplitudes);

    /// Rescales to unit norm first.
    static PureState normalized(FactorList factors, Amplitudes amplitudes);

    const FactorList& factors() const noexcept { return factors_; }
    const Amplitudes& amplitudes() const noexcept { return amplitudes_; }

  private:
    FactorList factors_;
    Amplitudes amplitudes_;
};

/// Eigenvalues of a reduced density matrix, descending, each in [0, 1], summing to 1.
class Spectrum {
  public:
    /// Clamps tiny negatives (>= -1e-8) to zero and values just above 1 to 1; throws
    /// PrecisionFailure below -1e-8 or when the sum is off by more than 1e-10.
    explicit Spectrum(std::vector<double> eigenvalues);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_.at(i); }

  private:
    std::vector<double> values_;
};

/// Psi[a, c] = psi[idx(a, c)] with a over the kept factors and c over the rest,
/// both in row-major order of their original factor positions.
Eigen::MatrixXcd reshape(const PureState& state, const Selector& keep);

/// rho_K[a, b] = sum_c psi[idx(a, c)] conj(psi[idx(b, c)]). Throws CapExceeded when
/// n_K is above the spectral cap.
DensityMatrix partial_trace(const PureState& state, const Selector& keep);

/// Spectrum of a Hermitian density matrix (full path).
Spectrum spectrum_of(const DensityMatrix& rho);

/// Nonzero spectrum of rho_K via the Gram matrix on the smaller of K and its complement.
/// The result has min(n_K, n / n_K) entries; the remaining eigenvalues of rho_K are zero.
Spectrum spectrum_of(const PureState& state, const Selector& sel);

double von_neumann(const Spectrum& spec);
double tsallis(const Spectrum& spec, double q);
double renyi(const Spectrum& spec, double q);
double purity(const Spectrum& spec);
double tangle(const Spectrum& spec);
double concurrence(const Spectrum& spec);
double pure_state_negativity(const Spectrum& spec);

/// S_A + S_B - S_{AB} for disjoint selectors; results in [-1e-9, 0) are clamped to 0.
double mutual_info(const PureState& state, const Selector& a, const Selector& b);

} // namespace avgent::quantum
