#pragma once

#include <cstdint>
#include <vector>

#include "isi2d/channel.hpp"

namespace isi2d {

enum class MappingKind { row_major, random_permutation };

// Bijection between 1D sequence positions {0..N-1} and grid cells.
class Mapping {
public:
    Mapping() = default;
    static Mapping row_major(int rows, int cols);
    static Mapping random_perm(int rows, int cols, std::uint64_t seed);

    int n() const { return static_cast<int>(pos_.size()); }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    MappingKind kind() const { return kind_; }

    // Flat grid index (i * cols + j) of sequence position n.
    int grid_index(int n) const { return pos_[n]; }
    int seq_index(int flat) const { return inv_[flat]; }

    BipolarGrid interleave(const std::vector<std::int8_t>& c) const;
    std::vector<std::int8_t> deinterleave(const BipolarGrid& grid) const;

    // Same permutation applied to real-valued fields (LLR exchange).
    RealGrid interleave_real(const std::vector<double>& v) const;
    std::vector<double> deinterleave_real(const RealGrid& grid) const;

private:
    MappingKind kind_ = MappingKind::row_major;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> pos_;
    std::vector<int> inv_;
};

}  // namespace isi2d
