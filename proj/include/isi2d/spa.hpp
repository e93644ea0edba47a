#pragma once

#include <cstdint>
#include <vector>

#include "isi2d/parity_check.hpp"

namespace isi2d {

// Edge-indexed message storage for the log-domain sum-product algorithm.
// Edges are numbered row by row in adjacency order.
class MessageStore {
public:
    explicit MessageStore(const ParityCheckMatrix& pcm);

    int n_edges() const { return static_cast<int>(edge_var_.size()); }
    int n_vars() const { return n_; }
    int n_checks() const { return m_; }

    // Edges of check m are the contiguous range [check_begin(m), check_begin(m+1)).
    int check_begin(int m) const { return check_off_[m]; }
    int edge_var(int e) const { return edge_var_[e]; }
    const std::vector<int>& var_edges(int n) const { return var_edges_[n]; }

    std::vector<double> z;  // variable -> check
    std::vector<double> q;  // check -> variable

    void reset_messages();

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<int> check_off_;
    std::vector<int> edge_var_;
    std::vector<std::vector<int>> var_edges_;
};

// z_e = L_ext1(n) + sum of q over the other edges of variable n.
void variable_update(MessageStore& store, const std::vector<double>& l_ext1, int n);

// tanh(q/2) = (-1)^d_m * prod tanh(z/2) over the other edges of check m,
// evaluated in sign/log-magnitude form with |z| clamped to kSpaLlrClamp.
void check_update(MessageStore& store, int m, int d_m);

constexpr double kSpaLlrClamp = 38.0;

struct SpaResult {
    std::vector<double> l_c;     // L_ext1 + sum q (posterior)
    std::vector<double> l_ext2;  // sum q (extrinsic to the detector)
    std::vector<std::uint8_t> hard;
    bool converged = false;  // hard word satisfies the coset syndrome
    int iterations = 0;
};

// Flooding-schedule decode: i_c full iterations, messages starting from zero.
// d is the coset syndrome (empty means all-zero). When early_exit is set the
// loop stops as soon as the hard decision satisfies the syndrome.
SpaResult spa_decode(const ParityCheckMatrix& pcm, const std::vector<std::uint8_t>& d,
                     const std::vector<double>& l_ext1, int i_c, bool early_exit = false);

}  // namespace isi2d
