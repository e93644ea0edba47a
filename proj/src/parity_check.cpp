#include "isi2d/parity_check.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace isi2d {

void ParityCheckMatrix::add_entry(int m, int n) {
    if (m < 0 || m >= m_ || n < 0 || n >= n_)
        throw std::invalid_argument("parity check entry out of range");
    row_adj_[m].push_back(n);
    col_adj_[n].push_back(m);
    ++n_edges_;
}

void ParityCheckMatrix::finalize() {
    for (auto& r : row_adj_) {
        std::sort(r.begin(), r.end());
        if (std::adjacent_find(r.begin(), r.end()) != r.end())
            throw std::invalid_argument("duplicate parity check entry");
    }
    for (auto& c : col_adj_) std::sort(c.begin(), c.end());
}

int ParityCheckMatrix::max_row_weight() const {
    int w = 0;
    for (const auto& r : row_adj_) w = std::max<int>(w, static_cast<int>(r.size()));
    return w;
}

int ParityCheckMatrix::max_col_weight() const {
    int w = 0;
    for (const auto& c : col_adj_) w = std::max<int>(w, static_cast<int>(c.size()));
    return w;
}

bool ParityCheckMatrix::is_regular(int d_v, int d_c) const {
    for (const auto& c : col_adj_)
        if (static_cast<int>(c.size()) != d_v) return false;
    for (const auto& r : row_adj_)
        if (static_cast<int>(r.size()) != d_c) return false;
    return true;
}

bool ParityCheckMatrix::has_no_4cycle() const {
    // A 4-cycle is a pair of columns sharing two rows; scan row pairs instead
    // of all column pairs.
    std::unordered_set<std::int64_t> seen;
    for (int n = 0; n < n_; ++n) {
        const auto& c = col_adj_[n];
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b) {
                const std::int64_t key = static_cast<std::int64_t>(c[a]) * m_ + c[b];
                if (!seen.insert(key).second) return false;
            }
    }
    return true;
}

std::vector<std::uint8_t> ParityCheckMatrix::syndrome(const std::vector<std::uint8_t>& s) const {
    if (static_cast<int>(s.size()) != n_)
        throw std::invalid_argument("syndrome: word length != N");
    std::vector<std::uint8_t> d(m_, 0);
    for (int m = 0; m < m_; ++m) {
        std::uint8_t acc = 0;
        for (int n : row_adj_[m]) acc ^= (s[n] & 1u);
        d[m] = acc;
    }
    return d;
}

bool ParityCheckMatrix::operator==(const ParityCheckMatrix& other) const {
    return m_ == other.m_ && n_ == other.n_ && row_adj_ == other.row_adj_;
}

}  // namespace isi2d
