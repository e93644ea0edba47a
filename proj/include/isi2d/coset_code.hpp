#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "isi2d/parity_check.hpp"

namespace isi2d {

// Dense GF(2) generator, rows bit-packed into 64-bit words.
// Row k is the codeword emitted for info bit k, in original column order.
class Generator {
public:
    Generator() = default;
    Generator(int k, int n);

    int k() const { return k_; }
    int n() const { return n_; }

    bool get(int row, int col) const;
    void set(int row, int col, bool v);

    // s = u * G over GF(2), |u| = K, |s| = N.
    std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& u) const;

    // Column permutation used during derivation: column j of the systematic
    // arrangement corresponds to original column perm[j]. Informational.
    std::vector<int> perm;

private:
    int k_ = 0;
    int n_ = 0;
    int words_per_row_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct RankDeficientError : std::runtime_error {
    int rank;
    int expected;
    RankDeficientError(int rank_, int expected_);
};

// GF(2) Gaussian elimination with column pivoting. Throws RankDeficientError
// (carrying the effective rank) when H has dependent rows.
Generator derive_generator(const ParityCheckMatrix& pcm);

// Coset code: parity-check matrix, derived generator, coset vector b and the
// fixed syndrome d = H b^T every emitted word satisfies.
struct CosetLdpcCode {
    ParityCheckMatrix pcm;
    Generator gen;
    std::vector<std::uint8_t> b;  // length N
    std::vector<std::uint8_t> d;  // length M

    int n() const { return pcm.cols(); }
    int k() const { return gen.k(); }

    static CosetLdpcCode make(ParityCheckMatrix pcm, std::vector<std::uint8_t> b = {});

    // s = (u G) xor b. Throws std::invalid_argument on |u| != K.
    std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& u) const;
};

}  // namespace isi2d
