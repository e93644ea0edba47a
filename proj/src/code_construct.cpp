#include "isi2d/code_construct.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "isi2d/rng.hpp"

namespace isi2d {

namespace {

// One attempt: shuffle the check-node stub list and assign d_v stubs per
// column, repairing double edges (and 4-cycles for girth 6) by swapping with
// stubs further down the list.
bool try_construct(int n, int d_v, int d_c, bool forbid_4cycles, Rng& rng,
                   ParityCheckMatrix& out) {
    const int m = static_cast<int>(static_cast<std::int64_t>(n) * d_v / d_c);
    std::vector<int> stubs(static_cast<std::size_t>(m) * d_c);
    for (int i = 0; i < m; ++i)
        std::fill_n(stubs.begin() + static_cast<std::size_t>(i) * d_c, d_c, i);
    std::shuffle(stubs.begin(), stubs.end(), rng);

    // Row pairs already used by some column; a repeat would close a 4-cycle.
    std::unordered_set<std::int64_t> used_pairs;
    if (forbid_4cycles) used_pairs.reserve(static_cast<std::size_t>(n) * d_v * d_v);

    ParityCheckMatrix pcm(m, n);
    std::size_t next = 0;
    std::vector<int> col_rows(d_v);
    for (int j = 0; j < n; ++j) {
        for (int slot = 0; slot < d_v; ++slot) {
            bool placed = false;
            // Bounded scan over remaining stubs for one that keeps the column
            // simple (and 4-cycle-free if requested).
            for (std::size_t probe = next + static_cast<std::size_t>(slot);
                 probe < stubs.size(); ++probe) {
                const int row = stubs[probe];
                bool ok = true;
                for (int s = 0; s < slot; ++s)
                    if (col_rows[s] == row) { ok = false; break; }
                if (ok && forbid_4cycles) {
                    for (int s = 0; s < slot && ok; ++s) {
                        const int a = std::min(col_rows[s], row);
                        const int b = std::max(col_rows[s], row);
                        if (used_pairs.count(static_cast<std::int64_t>(a) * m + b)) ok = false;
                    }
                }
                if (ok) {
                    std::swap(stubs[next + static_cast<std::size_t>(slot)], stubs[probe]);
                    col_rows[slot] = row;
                    placed = true;
                    break;
                }
            }
            if (!placed) return false;
        }
        for (int s = 0; s < d_v; ++s) pcm.add_entry(col_rows[s], j);
        if (forbid_4cycles) {
            for (int a = 0; a < d_v; ++a)
                for (int b = a + 1; b < d_v; ++b) {
                    const int lo = std::min(col_rows[a], col_rows[b]);
                    const int hi = std::max(col_rows[a], col_rows[b]);
                    used_pairs.insert(static_cast<std::int64_t>(lo) * m + hi);
                }
        }
        next += static_cast<std::size_t>(d_v);
    }
    pcm.finalize();
    out = std::move(pcm);
    return true;
}

}  // namespace

ParityCheckMatrix construct_regular_code(int n, int d_v, int d_c, int girth_min,
                                         std::uint64_t seed) {
    if (n <= 0 || d_v < 1 || d_c < 2)
        throw std::invalid_argument("construct_regular_code: need N > 0, d_v >= 1, d_c >= 2");
    if (girth_min != 4 && girth_min != 6)
        throw std::invalid_argument("construct_regular_code: girth_min must be 4 or 6");
    if ((static_cast<std::int64_t>(n) * d_v) % d_c != 0)
        throw std::invalid_argument("construct_regular_code: N*d_v not divisible by d_c");

    const bool forbid_4cycles = girth_min == 6;
    constexpr int kMaxAttempts = 64;
    Rng rng = make_rng(seed, 0xC0DE);
    ParityCheckMatrix pcm;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        if (try_construct(n, d_v, d_c, forbid_4cycles, rng, pcm)) return pcm;
    }
    throw std::runtime_error(
        "construct_regular_code: no valid graph after bounded retries; "
        "parameters are likely infeasible");
}

}  // namespace isi2d
