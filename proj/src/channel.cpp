#include "isi2d/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace isi2d {

ChannelMatrix::ChannelMatrix(int m_h, int n_h, std::vector<double> taps)
    : m_h_(m_h), n_h_(n_h), taps_(std::move(taps)) {
    if (m_h_ < 1 || n_h_ < 1)
        throw std::invalid_argument("channel matrix dimensions must be positive");
    if (static_cast<int>(taps_.size()) != m_h_ * n_h_)
        throw std::invalid_argument("channel matrix tap count mismatch");
    for (double t : taps_) energy_ += t * t;
    if (!(energy_ > 0.0)) throw std::invalid_argument("channel matrix must carry energy");
    norm_ = std::sqrt(energy_);
}

double ChannelMatrix::tap_sum() const {
    double s = 0.0;
    for (double t : taps_) s += t;
    return s;
}

ChannelMatrix ChannelMatrix::preset_ha() {
    return ChannelMatrix(3, 3,
                         {0.050684, 0.21273, 0.050684,
                          0.23825,  1.0,     0.23825,
                          0.050684, 0.21273, 0.050684});
}

ChannelMatrix ChannelMatrix::preset_hb() {
    return ChannelMatrix(3, 3,
                         {0.0035638, 0.14843, 0.0035638,
                          0.013382,  0.55733, 0.013382,
                          0.0035638, 0.14843, 0.0035638});
}

ChannelMatrix ChannelMatrix::awgn() { return ChannelMatrix(1, 1, {1.0}); }

ChannelMatrix ChannelMatrix::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open channel file: " + path);
    int m, n;
    if (!(in >> m >> n) || m < 1 || n < 1)
        throw std::runtime_error("malformed channel file header: " + path);
    std::vector<double> taps(static_cast<std::size_t>(m) * n);
    for (auto& t : taps)
        if (!(in >> t)) throw std::runtime_error("truncated channel file: " + path);
    return ChannelMatrix(m, n, std::move(taps));
}

void ChannelMatrix::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write channel file: " + path);
    out << m_h_ << ' ' << n_h_ << '\n';
    out.precision(17);
    for (int m = 0; m < m_h_; ++m) {
        for (int n = 0; n < n_h_; ++n) out << tap(m, n) << (n + 1 < n_h_ ? ' ' : '\n');
    }
}

std::vector<std::int8_t> modulate(const std::vector<std::uint8_t>& s) {
    std::vector<std::int8_t> c(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) c[i] = s[i] ? 1 : -1;
    return c;
}

RealGrid convolve2d(const BipolarGrid& grid, const ChannelMatrix& h) {
    RealGrid y(grid.rows(), grid.cols());
    for (int i = 0; i < grid.rows(); ++i)
        for (int j = 0; j < grid.cols(); ++j) {
            double acc = 0.0;
            for (int m = 0; m < h.m_h(); ++m)
                for (int n = 0; n < h.n_h(); ++n)
                    acc += h.tap(m, n) * grid.at(i - m, j - n);
            y.at(i, j) = acc;
        }
    return y;
}

RealGrid convolve2d(const RealGrid& x, const ChannelMatrix& h, double border) {
    auto at = [&](int i, int j) {
        if (i < 0 || i >= x.rows || j < 0 || j >= x.cols) return border;
        return x.at(i, j);
    };
    RealGrid y(x.rows, x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) {
            double acc = 0.0;
            for (int m = 0; m < h.m_h(); ++m)
                for (int n = 0; n < h.n_h(); ++n) acc += h.tap(m, n) * at(i - m, j - n);
            y.at(i, j) = acc;
        }
    return y;
}

RealGrid transmit(const RealGrid& y, double sigma, Rng& rng) {
    if (sigma < 0.0) throw std::invalid_argument("transmit: sigma must be >= 0");
    if (sigma == 0.0) return y;
    RealGrid r = y;
    std::normal_distribution<double> noise(0.0, sigma);
    for (auto& v : r.cells) v += noise(rng);
    return r;
}

double snr_db_from_sigma(const ChannelMatrix& h, double rate, double sigma) {
    if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("rate must be in (0,1]");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    return 10.0 * std::log10(h.energy() / (2.0 * rate * sigma * sigma));
}

double sigma_from_snr_db(const ChannelMatrix& h, double rate, double snr_db) {
    if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("rate must be in (0,1]");
    return std::sqrt(h.energy() / (2.0 * rate * std::pow(10.0, snr_db / 10.0)));
}

}  // namespace isi2d
