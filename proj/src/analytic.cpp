#include "avgent/analytic.hpp"
#include "avgent/errors.hpp"

namespace avgent::analytic {

namespace {

void require_positive(const BigInt& n, const char* name) {
    if (n < 1) throw InvalidArgument(std::string(name) + " must be >= 1, got " + n.str());
}

Value exact_value(const Rational& q) {
    Value v;
    v.nats  = to_real(q);
    v.exact = q;
    return v;
}

// H_hi - H_lo for lo <= hi, exact when hi is under the exact cap.
struct HarmonicDiff {
    std::optional<Rational> exact;
    BigReal real;
};

HarmonicDiff harmonic_diff(const BigInt& hi, const BigInt& lo) {
    if (hi <= kExactHarmonicCap) {
        Rational q = harmonic_range(lo.convert_to<std::uint64_t>() + 1, hi.convert_to<std::uint64_t>());
        return {q, to_real(q)};
    }
    return {std::nullopt, harmonic_real(hi) - harmonic_real(lo)};
}

} // namespace

EntropyValue page_sen_entropy(const BigInt& na, const BigInt& nb) {
    require_positive(na, "n_A");
    require_positive(nb, "n_B");
    const auto [m, M] = min_max_split(na, na * nb);
    if (m == 1) return exact_value(Rational(0));

    const Rational tail(BigInt(m - 1), BigInt(2 * M));
    const auto diff = harmonic_diff(m * M, M);
    if (diff.exact) return exact_value(*diff.exact - tail);
    Value v;
    v.nats = diff.real - to_real(tail);
    return v;
}

InfoValue entropy_deficit(const BigInt& na, const BigInt& nb) {
    const EntropyValue s = page_sen_entropy(na, nb);
    const BigInt m = na < nb ? na : nb;
    if (m == 1) return exact_value(Rational(0));
    Value v;
    v.nats          = s.nats - log_real(m);
    v.rational_part = s.exact;
    return v;
}

InfoValue symmetric_info(const BigInt& na, const BigInt& nb) {
    Value v = entropy_deficit(na, nb);
    v.nats = -v.nats;
    if (v.exact) v.exact = -*v.exact;
    if (v.rational_part) v.rational_part = -*v.rational_part;
    return v;
}

AsymmetricInfo asymmetric_info(const BigInt& na, const BigInt& nb) {
    const EntropyValue s = page_sen_entropy(na, nb);
    auto minus_s = [&](const BigInt& n) {
        Value v;
        v.nats = log_real(n) - s.nats;
        if (s.exact) {
            v.rational_part = -*s.exact;
            if (n == 1) v.exact = -*s.exact;
        }
        return v;
    };
    AsymmetricInfo out{minus_s(na), minus_s(nb), {}};
    out.average.nats = (out.tilde_ab.nats + out.tilde_ba.nats) / 2;
    return out;
}

Rational avg_purity(const BigInt& na, const BigInt& nb) {
    require_positive(na, "n_A");
    require_positive(nb, "n_B");
    return Rational(BigInt(na + nb), BigInt(na * nb + 1));
}

Rational avg_tangle(const BigInt& na, const BigInt& nb) {
    require_positive(na, "n_A");
    require_positive(nb, "n_B");
    const auto [m, M] = min_max_split(na, na * nb);
    return Rational(BigInt(2 * (m - 1) * (M - 1)), BigInt(m * M + 1));
}

BigReal concurrence_bound(const BigInt& na, const BigInt& nb) { return mp::sqrt(to_real(avg_tangle(na, nb))); }

Rational tangle_deficit(const BigInt& na, const BigInt& nb) {
    require_positive(na, "n_A");
    require_positive(nb, "n_B");
    const auto [m, M] = min_max_split(na, na * nb);
    return Rational(BigInt(2 * (m * m - 1)), BigInt(m * (m * M + 1)));
}

InfoValue tripartite_avg_mutual_info(const BigInt& na, const BigInt& nb, const BigInt& nc) {
    require_positive(na, "n_A");
    require_positive(nb, "n_B");
    require_positive(nc, "n_C");
    if (na * nb > nc)
        throw DomainError("exact tripartite mutual information requires n_A n_B <= n_C (got " + na.str() + "*" +
                          nb.str() + " > " + nc.str() + ")");
    const BigInt n = na * nb * nc;
    const Rational tail(BigInt((na - 1) * (nb - 1) * (na * nb + na + nb)), BigInt(2 * n));
    // (H_n - H_{nA nC}) - (H_{nB nC} - H_{nC})
    const auto upper = harmonic_diff(n, na * nc);
    const auto lower = harmonic_diff(nb * nc, nc);
    if (upper.exact && lower.exact) return exact_value(*upper.exact - *lower.exact + tail);
    Value v;
    v.nats = upper.real - lower.real + to_real(tail);
    return v;
}

Rational tripartite_mutual_info_bound(const BigInt& na, const BigInt& nb, const BigInt& nc) {
    require_positive(na, "n_A");
    require_positive(nb, "n_B");
    require_positive(nc, "n_C");
    if (na * nb > nc)
        throw DomainError("tripartite mutual information bound requires n_A n_B <= n_C (got " + na.str() + "*" +
                          nb.str() + " > " + nc.str() + ")");
    return Rational(BigInt(na * nb), BigInt(2 * nc));
}

EntropyValue tripartite_entropy_sum_approx(const BigInt& na, const BigInt& nb, const BigInt& nc) {
    require_positive(na, "n_A");
    require_positive(nb, "n_B");
    require_positive(nc, "n_C");
    BigInt largest = na;
    if (nb > largest) largest = nb;
    if (nc > largest) largest = nc;
    const BigReal ln_n = log_real(BigInt(na * nb * nc));
    const BigReal correction = ln_n - 2 * log_real(largest);
    Value v;
    v.nats          = ln_n + (correction < 0 ? correction : BigReal(0));
    v.approximation = true;
    v.slack         = Rational(3, 2);
    return v;
}

EntropyValue multipartite_collection_entropy(const FactorList& factors, const Selector& sel) {
    const auto dims = collection_dims(factors, sel);
    return page_sen_entropy(dims.kept, dims.complement);
}

InfoValue multipartite_avg_mutual_info(const FactorList& factors, const Selector& a, const Selector& b) {
    if (!disjoint(a, b))
        throw DomainError("mutual information needs disjoint collections, got {" + a.to_string() + "} and {" +
                          b.to_string() + "}");
    const Value sa  = multipartite_collection_entropy(factors, a);
    const Value sb  = multipartite_collection_entropy(factors, b);
    const Value sab = multipartite_collection_entropy(factors, a.united(factors, b));
    if (sa.exact && sb.exact && sab.exact) return exact_value(*sa.exact + *sb.exact - *sab.exact);
    Value v;
    v.nats = sa.nats + sb.nats - sab.nats;
    return v;
}

InfoValue lumped_avg_mutual_info(const FactorList& factors, const Selector& sel) {
    Value v = multipartite_collection_entropy(factors, sel);
    v.nats *= 2;
    if (v.exact) v.exact = 2 * *v.exact;
    return v;
}

Rational multipartite_mutual_info_bound(const FactorList& factors, const Selector& a, const Selector& b) {
    if (!disjoint(a, b))
        throw DomainError("mutual information bound needs disjoint collections, got {" + a.to_string() + "} and {" +
                          b.to_string() + "}");
    if (a.empty() || b.empty()) return Rational(0);
    const BigInt nab = collection_dims(factors, a).kept * collection_dims(factors, b).kept;
    if (nab * nab > factors.total())
        throw DomainError("mutual information bound requires n_A^2 n_B^2 <= n (got " + BigInt(nab * nab).str() +
                          " > " + factors.total().str() + ")");
    return Rational(BigInt(nab * nab), BigInt(2 * factors.total()));
}

EntropyValue thermo_limit_entropy(const BigInt& m) {
    require_positive(m, "m");
    if (m == 1) return exact_value(Rational(0));
    Value v;
    v.nats = log_real(m);
    return v;
}

Rational thermo_limit_tangle(const BigInt& m) {
    require_positive(m, "m");
    return 2 * (1 - Rational(BigInt(1), m));
}

} // namespace avgent::analytic
