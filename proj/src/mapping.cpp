#include "isi2d/mapping.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace isi2d {

Mapping Mapping::row_major(int rows, int cols) {
    Mapping m;
    m.kind_ = MappingKind::row_major;
    m.rows_ = rows;
    m.cols_ = cols;
    m.pos_.resize(static_cast<std::size_t>(rows) * cols);
    std::iota(m.pos_.begin(), m.pos_.end(), 0);
    m.inv_ = m.pos_;
    return m;
}

Mapping Mapping::random_perm(int rows, int cols, std::uint64_t seed) {
    Mapping m = row_major(rows, cols);
    m.kind_ = MappingKind::random_permutation;
    Rng rng = make_rng(seed, 0x1A7E);
    std::shuffle(m.pos_.begin(), m.pos_.end(), rng);
    for (int n = 0; n < static_cast<int>(m.pos_.size()); ++n) m.inv_[m.pos_[n]] = n;
    return m;
}

BipolarGrid Mapping::interleave(const std::vector<std::int8_t>& c) const {
    if (static_cast<int>(c.size()) != n())
        throw std::invalid_argument("interleave: sequence length != N_r*N_c");
    BipolarGrid g(rows_, cols_);
    for (int i = 0; i < n(); ++i)
        g.set(pos_[i] / cols_, pos_[i] % cols_, c[i]);
    return g;
}

std::vector<std::int8_t> Mapping::deinterleave(const BipolarGrid& grid) const {
    if (grid.rows() != rows_ || grid.cols() != cols_)
        throw std::invalid_argument("deinterleave: grid shape mismatch");
    std::vector<std::int8_t> c(n());
    for (int i = 0; i < n(); ++i)
        c[i] = grid.at(pos_[i] / cols_, pos_[i] % cols_);
    return c;
}

RealGrid Mapping::interleave_real(const std::vector<double>& v) const {
    if (static_cast<int>(v.size()) != n())
        throw std::invalid_argument("interleave: sequence length != N_r*N_c");
    RealGrid g(rows_, cols_);
    for (int i = 0; i < n(); ++i) g.cells[pos_[i]] = v[i];
    return g;
}

std::vector<double> Mapping::deinterleave_real(const RealGrid& grid) const {
    if (grid.rows != rows_ || grid.cols != cols_)
        throw std::invalid_argument("deinterleave: grid shape mismatch");
    std::vector<double> v(n());
    for (int i = 0; i < n(); ++i) v[i] = grid.cells[pos_[i]];
    return v;
}

}  // namespace isi2d
