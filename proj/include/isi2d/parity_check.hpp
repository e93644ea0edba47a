#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace isi2d {

// Sparse binary parity-check matrix stored as per-row and per-column
// adjacency lists (sorted, 0-based).
class ParityCheckMatrix {
public:
    ParityCheckMatrix() = default;
    ParityCheckMatrix(int rows, int cols) : m_(rows), n_(cols), row_adj_(rows), col_adj_(cols) {}

    int rows() const { return m_; }
    int cols() const { return n_; }
    std::int64_t edge_count() const { return n_edges_; }

    const std::vector<int>& row(int m) const { return row_adj_[m]; }
    const std::vector<int>& col(int n) const { return col_adj_[n]; }
    const std::vector<std::vector<int>>& rows_adj() const { return row_adj_; }
    const std::vector<std::vector<int>>& cols_adj() const { return col_adj_; }

    // Insert entry (m, n); duplicate entries are rejected.
    void add_entry(int m, int n);
    // Sorts adjacency lists; call once after all entries are added.
    void finalize();

    int row_weight(int m) const { return static_cast<int>(row_adj_[m].size()); }
    int col_weight(int n) const { return static_cast<int>(col_adj_[n].size()); }
    int max_row_weight() const;
    int max_col_weight() const;

    bool is_regular(int d_v, int d_c) const;
    // True when no two columns share more than one row (no length-4 cycle).
    bool has_no_4cycle() const;

    // H * s^T over GF(2). Throws std::invalid_argument on length mismatch.
    std::vector<std::uint8_t> syndrome(const std::vector<std::uint8_t>& s) const;

    bool operator==(const ParityCheckMatrix& other) const;

private:
    int m_ = 0;
    int n_ = 0;
    std::int64_t n_edges_ = 0;
    std::vector<std::vector<int>> row_adj_;
    std::vector<std::vector<int>> col_adj_;
};

// MacKay alist text format, 1-based indices.
ParityCheckMatrix load_alist(const std::string& path);
void save_alist(const ParityCheckMatrix& pcm, const std::string& path);
ParityCheckMatrix parse_alist(std::istream& in, const std::string& what);

}  // namespace isi2d
