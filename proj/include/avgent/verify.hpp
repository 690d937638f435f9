#pragma once

#include "avgent/sampler.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace avgent::verify {

struct FailurePoint {
    std::string inputs; // enough to rerun the point alone
    std::string detail; // computed values and the violated assertion
    double margin = 0;  // negative (or zero on a strict bound) distance to the bound
};

/// Outcome of one sweep. A report fails iff at least one grid point violated its assertion.
struct CheckReport {
    std::string name;
    std::string grid;
    std::uint64_t points = 0;
    double worst_margin  = std::numeric_limits<double>::infinity();
    std::string worst_point;
    /// Worst observed margin per sub-assertion, in the order first seen.
    std::vector<std::pair<std::string, double>> observations;
    std::uint64_t failure_count = 0;
    std::vector<FailurePoint> failures; // first kMaxRecordedFailures only

    static constexpr std::size_t kMaxRecordedFailures = 100;

    bool passed() const noexcept { return failure_count == 0; }

    /// Record one assertion. `margin` is the signed distance from the bound (> 0 means satisfied
    /// for strict bounds, >= 0 for non-strict ones).
    void assert_margin(std::string_view label, double margin, bool ok, const std::string& inputs,
                       const std::string& detail);
};

struct Triple {
    std::uint64_t na, nb, nc;
};

/// All (n_A, n_B, n_C) with n_A <= na_max, n_B <= nb_max, n_A n_B <= n_C <= nc_max.
std::vector<Triple> environment_grid(std::uint64_t na_max, std::uint64_t nb_max, std::uint64_t nc_max);

/// Delta_{m,M} strictly inside (-m/(2M), -(m-1)/(2M)) for 2 <= m <= M, and Delta_{1,M} = 0.
CheckReport check_delta_interval(std::uint64_t m_max, std::uint64_t big_m_max);

/// Havil interval, Franel and fourth-order remainders in (0,1), weak bound, and strictly
/// decreasing epsilon_n for every n <= n_max.
CheckReport check_harmonic_bounds(std::uint64_t n_max);

/// 0 <= <I_{A:B}> <= n_A n_B / (2 n_C) <= 1/2 using the exact tripartite formula.
CheckReport check_tripartite_bound(const std::vector<Triple>& grid);

/// Analytic-level approximation slacks: the sum rule (3/2 nat), <S_A>+<S_B> vs <S_C> and the
/// <I_{A:C}> ~ 2<S_A> forms (1 nat), and the tripartite entropy-sum approximation (3/2 nat).
CheckReport check_approximation_slacks(const std::vector<Triple>& grid);

/// Bipartite thermodynamic limits along M = m 2^k: entropy deficit <= m/(2M) and non-increasing,
/// tangle deficit <= 2/M, tangle non-decreasing.
CheckReport check_thermo_limits(const std::vector<std::uint64_t>& ms, unsigned k_max);

/// Multi-partite framework: every collection within half a nat of ln m_K, and every pair of
/// disjoint small collections below n_A^2 n_B^2 / (2n).
CheckReport check_multipartite_bounds(const std::vector<FactorList>& factor_lists);

enum class McTarget { oracle, upper_bound };

struct McCase {
    sampler::SampleSpec spec;
    double stderr_ceiling = 0;
    McTarget target       = McTarget::oracle;
};

/// z-score threshold for Monte Carlo agreement (two-sided false alarm ~6e-5 per case).
inline constexpr double kZThreshold = 4.0;

/// Passes iff |mean - oracle| / stderr <= 4 (or (mean - bound) / stderr <= 4 for bounds)
/// and stderr is below the case's ceiling.
CheckReport check_mc_agreement(const std::vector<McCase>& campaign, unsigned workers);

/// The built-in campaign; case i uses seed base_seed + i.
std::vector<McCase> default_campaign(std::uint64_t base_seed);

struct VerifyConfig {
    std::uint64_t m_max     = 64;
    std::uint64_t big_m_max = 64;
    std::uint64_t n_max     = 100000;
    std::uint64_t na_max    = 4;
    std::uint64_t nb_max    = 4;
    std::uint64_t nc_max    = 64;
    std::vector<std::uint64_t> thermo_ms{2, 3, 4};
    unsigned k_max     = 12;
    std::uint64_t seed = 0;
    unsigned workers   = 0;
};

/// Names accepted by run(): each check plus "all".
const std::vector<std::string>& check_names();

/// Runs one named check, or every check for "all". Throws InvalidArgument on an unknown name.
std::vector<CheckReport> run(std::string_view check, const VerifyConfig& config);

/// Structured rendering used by the CLI and the archive.
std::string to_json(const std::vector<CheckReport>& reports);

} // namespace avgent::verify
