#include "isi2d/neighborhood.hpp"

#include <cmath>
#include <stdexcept>

namespace isi2d {

namespace {

void check(const NeighborhoodParams& p) {
    if (p.t < 0 || p.i_c < 1 || p.d_v < 1 || p.d_c < 2 || p.f_c < 1 || p.f_d < 1)
        throw std::invalid_argument("neighborhood: invalid parameters");
}

// sum_{i=0}^{n-1} base^i, zero when n <= 0.
BigInt geometric_sum(const BigInt& base, int n) {
    BigInt acc = 0, term = 1;
    for (int i = 0; i < n; ++i) {
        acc += term;
        term *= base;
    }
    return acc;
}

// sum_{j=1}^{t} base^j.
BigInt power_sum_from_one(const BigInt& base, int t) {
    BigInt acc = 0, term = 1;
    for (int j = 1; j <= t; ++j) {
        term *= base;
        acc += term;
    }
    return acc;
}

BigInt pow_int(const BigInt& base, int e) {
    BigInt acc = 1;
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
}

}  // namespace

BigInt q_v(const NeighborhoodParams& p) {
    check(p);
    const BigInt d = BigInt(p.d_v - 1) * (p.d_c - 1);
    const BigInt decoder_tree = geometric_sum(d, p.i_c);

    // Variables hanging below one detector-reached neighbor bit: the bit plus
    // d_v (d_v-1)^{i-1} (d_c-1)^i more through i = 1 .. I_c-1 decoder stages.
    BigInt below = 0, term = 1;
    for (int i = 1; i <= p.i_c - 1; ++i) {
        term *= p.d_c - 1;
        below += term;
        term *= p.d_v - 1;
    }
    const BigInt branch = 1 + BigInt(p.d_v) * below;
    const BigInt w = BigInt(4 * p.f_c * p.f_d - 1) * branch;
    return decoder_tree + pow_int(d, p.i_c - 1) * power_sum_from_one(w, p.t);
}

BigInt q_c(const NeighborhoodParams& p) {
    check(p);
    const BigInt d = BigInt(p.d_v - 1) * (p.d_c - 1);
    const BigInt decoder_tree = 1 + BigInt(p.d_v - 1) * geometric_sum(d, p.i_c - 1);
    const BigInt x = BigInt(4 * p.f_c * p.f_d - 1) * p.d_v * geometric_sum(d, p.i_c - 1);
    return decoder_tree + pow_int(d, p.i_c - 1) * power_sum_from_one(x, p.t);
}

GammaBound gamma_bound(const NeighborhoodParams& p, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("gamma_bound: N must be positive");
    const BigInt qv = q_v(p);
    const BigInt qc = q_c(p);
    GammaBound out;
    out.gamma_scaled = BigInt(p.d_v) * qv * qv + BigInt(p.d_c) * qc * qc;
    out.gamma_denominator = p.d_v;

    const double m = static_cast<double>(n) * p.d_v / p.d_c;
    const double qv_d = qv.convert_to<double>();
    const double qc_d = qc.convert_to<double>();
    out.vacuous = !(qv_d < static_cast<double>(n)) || !(qc_d < m);

    const double gamma = out.gamma_scaled.convert_to<double>() / p.d_v;
    out.gamma_over_n = gamma / static_cast<double>(n);
    if (out.vacuous) {
        out.tree_prob_lower = 0.0;
    } else {
        out.tree_prob_lower =
            std::exp(qv_d * std::log1p(-qv_d / static_cast<double>(n)) +
                     qc_d * std::log1p(-qc_d / m));
    }
    return out;
}

}  // namespace isi2d
