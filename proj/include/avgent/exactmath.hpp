#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>

namespace avgent {

namespace mp = boost::multiprecision;

using BigInt   = mp::mpz_int;
using Rational = mp::mpq_rational;

/// Working real type: 100 significant decimal digits, no expression templates.
using BigReal = mp::number<mp::mpfr_float_backend<100>, mp::et_off>;

inline constexpr unsigned kWorkingDigits = 100;
/// Largest number of digits a caller may request for rendering or harmonic_approx.
inline constexpr unsigned kMaxDigits = 90;
/// Largest n for which harmonic() sums exactly.
inline constexpr std::uint64_t kExactHarmonicCap = 100000;

/// Euler-Mascheroni constant to 100 digits (OEIS A001620).
const BigReal& euler_gamma();

BigReal to_real(const Rational& q);
BigReal log_real(const BigInt& n);
BigReal log_real(std::uint64_t n);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
/// Fixed-point rendering with `digits` digits after the point.
std::string to_string(const BigReal& x, unsigned digits);

/// Exact H_n = sum_{i=1}^n 1/i. Throws DomainError above kExactHarmonicCap.
Rational harmonic(std::uint64_t n);

/// Exact partial sum sum_{i=lo}^{hi} 1/i (lo >= 1, empty when hi < lo). No cap.
Rational harmonic_range(std::uint64_t lo, std::uint64_t hi);

/// H_n with absolute error below 10^-digits. Exact summation up to the exact
/// cap, the Euler-Maclaurin series (Bernoulli terms) above it.
BigReal harmonic_approx(const BigInt& n, unsigned digits);
BigReal harmonic_approx(std::uint64_t n, unsigned digits);

/// H_n as a real at working precision; exact path below the cap.
BigReal harmonic_real(const BigInt& n);

/// epsilon_n = H_n - gamma - ln n, checked to lie in (1/(2(n+1)), 1/(2n)).
BigReal havil_epsilon(std::uint64_t n);

/// Franel remainder: H_n = gamma + ln n + 1/(2n) - e/(8n^2), checked e in (0,1).
BigReal franel_epsilon(std::uint64_t n);

/// Fourth-order remainder: H_n = gamma + ln n + 1/(2n) - 1/(12n^2) + e/(120n^4), checked e in (0,1).
BigReal fourth_order_epsilon(std::uint64_t n);

/// H_n - ln n, checked in (1/n, 1] with equality only at n = 1.
BigReal weak_epsilon(std::uint64_t n);

/// Unchecked variants taking a precomputed H_n; used by sweeps that build H_n incrementally.
namespace remainder {
BigReal havil(const BigReal& h, std::uint64_t n);
BigReal franel(const BigReal& h, std::uint64_t n);
BigReal fourth_order(const BigReal& h, std::uint64_t n);
BigReal weak(const BigReal& h, std::uint64_t n);
} // namespace remainder

} // namespace avgent
