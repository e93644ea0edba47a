#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace isi2d {

using BigInt = boost::multiprecision::cpp_int;

// Message-flow neighborhood size parameters: t outer rounds, i_c decoder
// iterations per round, regular (d_v, d_c) degrees and detector window
// radii (f_c, f_d).
struct NeighborhoodParams {
    int t = 1;
    int i_c = 1;
    int d_v = 2;
    int d_c = 3;
    int f_c = 1;
    int f_d = 1;
};

// Variable-node and check-node counts of the depth-t message-flow
// neighborhood. Empty sums evaluate to zero, so i_c = 1 and t = 0 edge cases
// are well defined.
BigInt q_v(const NeighborhoodParams& p);
BigInt q_c(const NeighborhoodParams& p);

struct GammaBound {
    BigInt gamma_scaled;     // d_v * gamma = d_v*Q_v^2 + d_c*Q_c^2
    int gamma_denominator;   // d_v
    double gamma_over_n;     // gamma / N
    double tree_prob_lower;  // (1 - Q_v/N)^Q_v (1 - Q_c/M)^Q_c
    bool vacuous;            // neighborhood no smaller than the graph
};

// Tree-probability bound: Pr{not tree-like} <= gamma/N with
// gamma = Q_v^2 + (d_c/d_v) Q_c^2, and the matching product lower bound.
GammaBound gamma_bound(const NeighborhoodParams& p, std::int64_t n);

}  // namespace isi2d
