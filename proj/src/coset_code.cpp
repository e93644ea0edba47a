#include "isi2d/coset_code.hpp"

#include <algorithm>
#include <string>

namespace isi2d {

namespace {
constexpr int kWordBits = 64;
inline int words_for(int bits) { return (bits + kWordBits - 1) / kWordBits; }
}  // namespace

Generator::Generator(int k, int n)
    : k_(k), n_(n), words_per_row_(words_for(n)),
      bits_(static_cast<std::size_t>(k) * words_for(n), 0) {}

bool Generator::get(int row, int col) const {
    const auto w = bits_[static_cast<std::size_t>(row) * words_per_row_ + col / kWordBits];
    return (w >> (col % kWordBits)) & 1u;
}

void Generator::set(int row, int col, bool v) {
    auto& w = bits_[static_cast<std::size_t>(row) * words_per_row_ + col / kWordBits];
    const std::uint64_t mask = 1ULL << (col % kWordBits);
    if (v)
        w |= mask;
    else
        w &= ~mask;
}

std::vector<std::uint8_t> Generator::encode(const std::vector<std::uint8_t>& u) const {
    if (static_cast<int>(u.size()) != k_)
        throw std::invalid_argument("encode: info word length != K");
    std::vector<std::uint64_t> acc(words_per_row_, 0);
    for (int i = 0; i < k_; ++i) {
        if (!(u[i] & 1u)) continue;
        const std::uint64_t* row = &bits_[static_cast<std::size_t>(i) * words_per_row_];
        for (int w = 0; w < words_per_row_; ++w) acc[w] ^= row[w];
    }
    std::vector<std::uint8_t> s(n_);
    for (int j = 0; j < n_; ++j) s[j] = (acc[j / kWordBits] >> (j % kWordBits)) & 1u;
    return s;
}

RankDeficientError::RankDeficientError(int rank_, int expected_)
    : std::runtime_error("parity-check matrix is rank deficient: rank " + std::to_string(rank_) +
                         " of " + std::to_string(expected_)),
      rank(rank_), expected(expected_) {}

Generator derive_generator(const ParityCheckMatrix& pcm) {
    const int m = pcm.rows();
    const int n = pcm.cols();
    const int k = n - m;
    const int wpr = words_for(n);

    // Dense bit-packed copy of H for elimination.
    std::vector<std::uint64_t> h(static_cast<std::size_t>(m) * wpr, 0);
    auto hget = [&](int r, int c) {
        return (h[static_cast<std::size_t>(r) * wpr + c / kWordBits] >> (c % kWordBits)) & 1u;
    };
    for (int r = 0; r < m; ++r)
        for (int c : pcm.row(r))
            h[static_cast<std::size_t>(r) * wpr + c / kWordBits] |= 1ULL << (c % kWordBits);

    // Gauss-Jordan with column pivoting: perm[r] = original column holding the
    // r-th pivot; remaining columns follow in original order.
    std::vector<int> pivot_col;
    std::vector<char> is_pivot(n, 0);
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int pr = -1;
        for (int r = rank; r < m; ++r)
            if (hget(r, col)) { pr = r; break; }
        if (pr < 0) continue;
        if (pr != rank)
            for (int w = 0; w < wpr; ++w)
                std::swap(h[static_cast<std::size_t>(pr) * wpr + w],
                          h[static_cast<std::size_t>(rank) * wpr + w]);
        for (int r = 0; r < m; ++r) {
            if (r == rank || !hget(r, col)) continue;
            for (int w = 0; w < wpr; ++w)
                h[static_cast<std::size_t>(r) * wpr + w] ^=
                    h[static_cast<std::size_t>(rank) * wpr + w];
        }
        pivot_col.push_back(col);
        is_pivot[col] = 1;
        ++rank;
    }
    if (rank < m) throw RankDeficientError(rank, m);

    std::vector<int> free_col;
    free_col.reserve(k);
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) free_col.push_back(c);

    // In the reduced system, pivot column p of row r carries the parity of
    // free columns: s[pivot_col[r]] = sum over free c with H'(r,c)=1 of s[c].
    // Generator row i: free column free_col[i] set, plus the pivots it drives.
    Generator g(k, n);
    for (int i = 0; i < k; ++i) {
        g.set(i, free_col[i], true);
        for (int r = 0; r < m; ++r)
            if (hget(r, free_col[i])) g.set(i, pivot_col[r], true);
    }
    g.perm.reserve(n);
    for (int c : pivot_col) g.perm.push_back(c);
    for (int c : free_col) g.perm.push_back(c);
    return g;
}

CosetLdpcCode CosetLdpcCode::make(ParityCheckMatrix pcm, std::vector<std::uint8_t> b) {
    CosetLdpcCode code;
    if (b.empty()) b.assign(pcm.cols(), 0);
    if (static_cast<int>(b.size()) != pcm.cols())
        throw std::invalid_argument("coset vector length != N");
    code.gen = derive_generator(pcm);
    code.d = pcm.syndrome(b);
    code.b = std::move(b);
    code.pcm = std::move(pcm);
    return code;
}

std::vector<std::uint8_t> CosetLdpcCode::encode(const std::vector<std::uint8_t>& u) const {
    auto s = gen.encode(u);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] ^= b[i];
    return s;
}

}  // namespace isi2d
