#pragma once

#include "avgent/exactmath.hpp"
#include "avgent/partition.hpp"

#include <optional>

namespace avgent::analytic {

/// A closed-form averaged quantity in nats.
///
/// `exact` is set when the whole value is rational. `rational_part` holds the
/// harmonic-number combination before logarithms are subtracted (entropy
/// deficits, informations). Values that are only approximations carry
/// `approximation = true` and the stated tolerance in `slack`.
struct Value {
    BigReal nats;
    std::optional<Rational> exact;
    std::optional<Rational> rational_part;
    bool approximation = false;
    std::optional<Rational> slack;
};

using EntropyValue = Value;
using InfoValue    = Value;

struct AsymmetricInfo {
    InfoValue tilde_ab; // ln n_A - S
    InfoValue tilde_ba; // ln n_B - S
    InfoValue average;  // (tilde_ab + tilde_ba)/2 = ln(M/m)/2 + I
};

/// Mean subsystem entropy of a Haar-random pure state on n_A x n_B:
/// H_{mM} - H_M - (m-1)/(2M). Exact rational while mM is under the exact cap.
EntropyValue page_sen_entropy(const BigInt& na, const BigInt& nb);

/// page_sen_entropy - ln m. Lies in (-m/(2M), -(m-1)/(2M)) for m >= 2; exactly 0 for m = 1.
InfoValue entropy_deficit(const BigInt& na, const BigInt& nb);

/// ln m - S = -deficit; in ((m-1)/(2M), m/(2M)) for m >= 2.
InfoValue symmetric_info(const BigInt& na, const BigInt& nb);

AsymmetricInfo asymmetric_info(const BigInt& na, const BigInt& nb);

/// <tr rho_A^2> = (n_A + n_B) / (n_A n_B + 1).
Rational avg_purity(const BigInt& na, const BigInt& nb);

/// <tau> = 2(m-1)(M-1)/(mM+1) = 2(1 - <tr rho^2>).
Rational avg_tangle(const BigInt& na, const BigInt& nb);

/// sqrt(<tau>), an upper bound on <C> by Jensen.
BigReal concurrence_bound(const BigInt& na, const BigInt& nb);

/// 2(1 - 1/m) - <tau> = 2(m^2-1)/(m(mM+1)) <= 2/M.
Rational tangle_deficit(const BigInt& na, const BigInt& nb);

/// Exact <I_{A:B}> for a pure state on A x B x C, valid only when n_A n_B <= n_C:
/// H_{n} + H_{n_C} - H_{n_A n_C} - H_{n_B n_C} + (n_A-1)(n_B-1)(n_A n_B + n_A + n_B)/(2 n_A n_B n_C).
/// Throws DomainError outside that regime.
InfoValue tripartite_avg_mutual_info(const BigInt& na, const BigInt& nb, const BigInt& nc);

/// n_A n_B / (2 n_C); requires n_A n_B <= n_C.
Rational tripartite_mutual_info_bound(const BigInt& na, const BigInt& nb, const BigInt& nc);

/// ln n + min{0, ln n - 2 ln max(n_A, n_B, n_C)}: approximation to <S_A + S_B + S_C>, slack 3/2 nat.
EntropyValue tripartite_entropy_sum_approx(const BigInt& na, const BigInt& nb, const BigInt& nc);

/// Mean entropy of the collection K: page_sen_entropy(n_K, n / n_K).
EntropyValue multipartite_collection_entropy(const FactorList& factors, const Selector& sel);

/// <S_A> + <S_B> - <S_{AB}> for disjoint collections, any dimensions.
InfoValue multipartite_avg_mutual_info(const FactorList& factors, const Selector& a, const Selector& b);

/// Lumped mutual information <I_{K:(rest)}> = 2 <S_K>.
InfoValue lumped_avg_mutual_info(const FactorList& factors, const Selector& sel);

/// n_A^2 n_B^2 / (2n) for disjoint "small" collections (n_A^2 n_B^2 <= n); 0 when either is empty.
Rational multipartite_mutual_info_bound(const FactorList& factors, const Selector& a, const Selector& b);

/// lim_{M -> inf} S_{m,M} = ln m.
EntropyValue thermo_limit_entropy(const BigInt& m);

/// lim_{M -> inf} <tau> = 2(1 - 1/m).
Rational thermo_limit_tangle(const BigInt& m);

} // namespace avgent::analytic
