#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <string>

#include "isi2d/parity_check.hpp"

namespace isi2d {

namespace {

struct TokenReader {
    std::istream& in;
    const std::string& what;

    long next(const char* field) {
        long v;
        if (!(in >> v))
            throw std::runtime_error(what + ": truncated or malformed alist (" + field + ")");
        return v;
    }
};

}  // namespace

ParityCheckMatrix parse_alist(std::istream& in, const std::string& what) {
    TokenReader tr{in, what};
    const long n = tr.next("N");
    const long m = tr.next("M");
    if (n <= 0 || m <= 0) throw std::runtime_error(what + ": malformed alist header");
    const long max_col = tr.next("max column weight");
    const long max_row = tr.next("max row weight");
    if (max_col < 0 || max_row < 0 || max_col > m || max_row > n)
        throw std::runtime_error(what + ": malformed alist header");

    std::vector<int> col_w(n), row_w(m);
    long edges_cols = 0, edges_rows = 0;
    for (long j = 0; j < n; ++j) {
        col_w[j] = static_cast<int>(tr.next("column weight"));
        if (col_w[j] < 0 || col_w[j] > max_col)
            throw std::runtime_error(what + ": column weight inconsistent with header");
        edges_cols += col_w[j];
    }
    for (long i = 0; i < m; ++i) {
        row_w[i] = static_cast<int>(tr.next("row weight"));
        if (row_w[i] < 0 || row_w[i] > max_row)
            throw std::runtime_error(what + ": row weight inconsistent with header");
        edges_rows += row_w[i];
    }
    if (edges_cols != edges_rows)
        throw std::runtime_error(what + ": column and row weights disagree on edge count");

    ParityCheckMatrix pcm(static_cast<int>(m), static_cast<int>(n));
    // Column adjacency: 1-based row indices, zero entries allowed as padding.
    for (long j = 0; j < n; ++j) {
        int taken = 0;
        while (taken < col_w[j]) {
            const long v = tr.next("column adjacency");
            if (v == 0) continue;  // pad
            if (v < 1 || v > m) throw std::runtime_error(what + ": row index out of range");
            pcm.add_entry(static_cast<int>(v - 1), static_cast<int>(j));
            ++taken;
        }
    }
    pcm.finalize();
    // Row adjacency section: validate against what the columns declared.
    for (long i = 0; i < m; ++i) {
        std::vector<int> listed;
        int taken = 0;
        while (taken < row_w[i]) {
            const long v = tr.next("row adjacency");
            if (v == 0) continue;
            if (v < 1 || v > n) throw std::runtime_error(what + ": column index out of range");
            listed.push_back(static_cast<int>(v - 1));
            ++taken;
        }
        std::sort(listed.begin(), listed.end());
        if (listed != pcm.row(static_cast<int>(i)))
            throw std::runtime_error(what + ": row adjacency inconsistent with columns");
    }
    return pcm;
}

ParityCheckMatrix load_alist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open alist file: " + path);
    return parse_alist(in, path);
}

void save_alist(const ParityCheckMatrix& pcm, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write alist file: " + path);
    out << pcm.cols() << ' ' << pcm.rows() << '\n';
    out << pcm.max_col_weight() << ' ' << pcm.max_row_weight() << '\n';
    for (int j = 0; j < pcm.cols(); ++j) out << pcm.col_weight(j) << (j + 1 < pcm.cols() ? ' ' : '\n');
    for (int i = 0; i < pcm.rows(); ++i) out << pcm.row_weight(i) << (i + 1 < pcm.rows() ? ' ' : '\n');
    for (int j = 0; j < pcm.cols(); ++j) {
        const auto& c = pcm.col(j);
        for (std::size_t a = 0; a < c.size(); ++a) out << (c[a] + 1) << (a + 1 < c.size() ? ' ' : '\n');
        if (c.empty()) out << '\n';
    }
    for (int i = 0; i < pcm.rows(); ++i) {
        const auto& r = pcm.row(i);
        for (std::size_t a = 0; a < r.size(); ++a) out << (r[a] + 1) << (a + 1 < r.size() ? ' ' : '\n');
        if (r.empty()) out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace isi2d
