#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isi2d/rng.hpp"

namespace isi2d {

// Real 2D channel response, M_h rows (cross-track) by N_h columns (down-track).
class ChannelMatrix {
public:
    ChannelMatrix() = default;
    ChannelMatrix(int m_h, int n_h, std::vector<double> taps);

    int m_h() const { return m_h_; }
    int n_h() const { return n_h_; }
    double tap(int m, int n) const { return taps_[static_cast<std::size_t>(m) * n_h_ + n]; }

    double energy() const { return energy_; }  // sum of squared taps
    double norm() const { return norm_; }      // sqrt(energy)
    double tap_sum() const;

    bool memoryless() const { return m_h_ == 1 && n_h_ == 1; }

    static ChannelMatrix preset_ha();
    static ChannelMatrix preset_hb();
    static ChannelMatrix awgn();  // 1x1 unit tap
    // Text file: first line "M_h N_h", then M_h rows of N_h floats.
    static ChannelMatrix load(const std::string& path);
    void save(const std::string& path) const;

private:
    int m_h_ = 0;
    int n_h_ = 0;
    std::vector<double> taps_;
    double energy_ = 0.0;
    double norm_ = 0.0;
};

// N_r x N_c array of +-1 values surrounded by an implicit -1 border:
// any out-of-range read returns -1.
class BipolarGrid {
public:
    BipolarGrid() = default;
    BipolarGrid(int rows, int cols, std::int8_t fill = -1)
        : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::int8_t at(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_) return -1;
        return cells_[static_cast<std::size_t>(i) * cols_ + j];
    }
    void set(int i, int j, std::int8_t v) { cells_[static_cast<std::size_t>(i) * cols_ + j] = v; }

    const std::vector<std::int8_t>& cells() const { return cells_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::int8_t> cells_;
};

// Plain real-valued page (pre- or post-noise channel output).
struct RealGrid {
    int rows = 0;
    int cols = 0;
    std::vector<double> cells;

    RealGrid() = default;
    RealGrid(int r, int c) : rows(r), cols(c), cells(static_cast<std::size_t>(r) * c, 0.0) {}
    double& at(int i, int j) { return cells[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return cells[static_cast<std::size_t>(i) * cols + j]; }
};

// c(i) = 2 s(i) - 1.
std::vector<std::int8_t> modulate(const std::vector<std::uint8_t>& s);

// y(i,j) = sum_{m,n} h(m,n) x(i-m, j-n), with the grid's -1 border active.
RealGrid convolve2d(const BipolarGrid& grid, const ChannelMatrix& h);

// Real-relaxed variant with a configurable constant border (0 = plain linear).
RealGrid convolve2d(const RealGrid& x, const ChannelMatrix& h, double border);

// r = y + v, v ~ N(0, sigma^2) iid. sigma = 0 returns y exactly.
RealGrid transmit(const RealGrid& y, double sigma, Rng& rng);

// SNR per Eb/N0 with bit energy sum(h^2)/(2R): 10*log10(energy/(2 R sigma^2)).
double snr_db_from_sigma(const ChannelMatrix& h, double rate, double sigma);
double sigma_from_snr_db(const ChannelMatrix& h, double rate, double snr_db);

}  // namespace isi2d
