#include "avgent/exactmath.hpp"
#include "avgent/errors.hpp"

#include <utility>
#include <vector>

namespace avgent {

namespace {

// Sum_{i=lo}^{hi-1} 1/i as an unreduced fraction (num, den), by binary splitting.
std::pair<BigInt, BigInt> split_sum(std::uint64_t lo, std::uint64_t hi) {
    if (hi - lo == 1) return {BigInt(1), BigInt(lo)};
    if (hi - lo == 2) return {BigInt(2 * lo + 1), BigInt(lo) * BigInt(lo + 1)};
    std::uint64_t mid = lo + (hi - lo) / 2;
    auto [p1, q1] = split_sum(lo, mid);
    auto [p2, q2] = split_sum(mid, hi);
    return {p1 * q2 + p2 * q1, q1 * q2};
}

// B_0, B_2, B_4, ... as exact rationals (Akiyama-Tanigawa).
const std::vector<Rational>& even_bernoulli() {
    static const std::vector<Rational> table = [] {
        constexpr int kMax = 120;
        std::vector<Rational> a(kMax + 1);
        std::vector<Rational> b;
        for (int m = 0; m <= kMax; ++m) {
            a[m] = Rational(1, m + 1);
            for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
            if (m % 2 == 0) b.push_back(a[0]);
        }
        return b;
    }();
    return table;
}

BigReal inv_pow(const BigReal& n, int k) { return 1 / mp::pow(n, k); }

[[noreturn]] void bound_failure(const char* what, std::uint64_t n, const BigReal& value) {
    throw PrecisionFailure(std::string(what) + " violated its guaranteed interval at n=" + std::to_string(n) +
                           " (value " + to_string(value, 40) + ")");
}

} // namespace

const BigReal& euler_gamma() {
    static const BigReal g(
        "0.5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495");
    return g;
}

BigReal to_real(const Rational& q) {
    return BigReal(mp::numerator(q)) / BigReal(mp::denominator(q));
}

BigReal log_real(const BigInt& n) { return mp::log(BigReal(n)); }
BigReal log_real(std::uint64_t n) { return mp::log(BigReal(n)); }

std::string to_string(const Rational& q) {
    if (mp::denominator(q) == 1) return mp::numerator(q).str();
    return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

std::string to_string(const BigReal& x, unsigned digits) {
    std::string s = x.str(static_cast<std::streamsize>(digits), std::ios::fixed);
    // "-0.000" -> "0.000"
    if (!s.empty() && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

Rational harmonic_range(std::uint64_t lo, std::uint64_t hi) {
    if (lo == 0) throw InvalidArgument("harmonic_range: lower index must be >= 1");
    if (hi < lo) return Rational(0);
    auto [p, q] = split_sum(lo, hi + 1);
    return Rational(p, q);
}

Rational harmonic(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("harmonic: n must be >= 1");
    if (n > kExactHarmonicCap)
        throw DomainError("harmonic: n=" + std::to_string(n) + " exceeds the exact-mode cap " +
                          std::to_string(kExactHarmonicCap) + "; use harmonic_approx");
    return harmonic_range(1, n);
}

BigReal harmonic_approx(const BigInt& n, unsigned digits) {
    if (n < 1) throw InvalidArgument("harmonic_approx: n must be >= 1");
    if (digits == 0 || digits > kMaxDigits)
        throw InvalidArgument("harmonic_approx: digits must be in [1, " + std::to_string(kMaxDigits) + "]");
    if (n <= kExactHarmonicCap) return to_real(harmonic(n.convert_to<std::uint64_t>()));

    // H_n = gamma + ln n + 1/(2n) - sum_k B_2k / (2k n^2k); the remainder is bounded by the
    // first omitted term, so stop once a term drops below the target.
    const BigReal x(n);
    const BigReal target = mp::pow(BigReal(10), -static_cast<int>(digits) - 5);
    BigReal h = euler_gamma() + mp::log(x) + 1 / (2 * x);
    const auto& bern = even_bernoulli();
    for (std::size_t k = 1; k < bern.size(); ++k) {
        BigReal term = to_real(bern[k]) / (2 * static_cast<int>(k)) * inv_pow(x, 2 * static_cast<int>(k));
        h -= term;
        if (mp::abs(term) < target) return h;
    }
    throw PrecisionFailure("harmonic_approx: asymptotic series did not reach the requested digits");
}

BigReal harmonic_approx(std::uint64_t n, unsigned digits) { return harmonic_approx(BigInt(n), digits); }

BigReal harmonic_real(const BigInt& n) { return harmonic_approx(n, kMaxDigits); }

namespace remainder {

BigReal havil(const BigReal& h, std::uint64_t n) { return h - euler_gamma() - log_real(n); }

BigReal franel(const BigReal& h, std::uint64_t n) {
    const BigReal x(n);
    return 8 * x * x * (euler_gamma() + mp::log(x) + 1 / (2 * x) - h);
}

BigReal fourth_order(const BigReal& h, std::uint64_t n) {
    const BigReal x(n);
    return 120 * mp::pow(x, 4) * (h - euler_gamma() - mp::log(x) - 1 / (2 * x) + 1 / (12 * x * x));
}

BigReal weak(const BigReal& h, std::uint64_t n) { return h - log_real(n); }

} // namespace remainder

BigReal havil_epsilon(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("havil_epsilon: n must be >= 1");
    BigReal e = remainder::havil(harmonic_real(BigInt(n)), n);
    const BigReal x(n);
    if (!(e > 1 / (2 * (x + 1)) && e < 1 / (2 * x))) bound_failure("havil_epsilon", n, e);
    return e;
}

BigReal franel_epsilon(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("franel_epsilon: n must be >= 1");
    BigReal e = remainder::franel(harmonic_real(BigInt(n)), n);
    if (!(e > 0 && e < 1)) bound_failure("franel_epsilon", n, e);
    return e;
}

BigReal fourth_order_epsilon(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("fourth_order_epsilon: n must be >= 1");
    BigReal e = remainder::fourth_order(harmonic_real(BigInt(n)), n);
    if (!(e > 0 && e < 1)) bound_failure("fourth_order_epsilon", n, e);
    return e;
}

BigReal weak_epsilon(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("weak_epsilon: n must be >= 1");
    BigReal e = remainder::weak(harmonic_real(BigInt(n)), n);
    const bool ok = n == 1 ? e == 1 : (e > BigReal(1) / n && e < 1);
    if (!ok) bound_failure("weak_epsilon", n, e);
    return e;
}

} // namespace avgent
