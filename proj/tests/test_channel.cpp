#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "isi2d/channel.hpp"
#include "isi2d/mapping.hpp"
#include "isi2d/rng.hpp"

using namespace isi2d;

TEST_CASE("modulate: bipolar map and round trip") {
    const std::vector<std::uint8_t> s{0, 1, 1, 0, 1};
    const auto c = modulate(s);
    CHECK(c[0] == -1);
    CHECK(c[1] == 1);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK((c[i] + 1) / 2 == s[i]);
}

TEST_CASE("channel presets carry the published taps") {
    const auto ha = ChannelMatrix::preset_ha();
    CHECK(ha.m_h() == 3);
    CHECK(ha.n_h() == 3);
    CHECK(ha.tap(1, 1) == 1.0);
    CHECK(ha.tap(0, 1) == 0.21273);
    CHECK(ha.tap(1, 0) == 0.23825);
    CHECK(ha.tap(2, 2) == 0.050684);
    CHECK(ha.energy() == doctest::Approx(1.21431).epsilon(1e-4));
    CHECK(ha.norm() == doctest::Approx(1.10196).epsilon(1e-4));

    const auto hb = ChannelMatrix::preset_hb();
    CHECK(hb.tap(1, 1) == 0.55733);
    CHECK(hb.tap(0, 1) == 0.14843);
    CHECK(hb.tap(1, 0) == 0.013382);
    CHECK(hb.tap(2, 0) == 0.0035638);
}

TEST_CASE("channel file round trip") {
    const auto ha = ChannelMatrix::preset_ha();
    const std::string path = "chan_test.txt";
    ha.save(path);
    const auto loaded = ChannelMatrix::load(path);
    CHECK(loaded.m_h() == 3);
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) CHECK(loaded.tap(m, n) == ha.tap(m, n));
    std::remove(path.c_str());
}

TEST_CASE("interleave: row-major definition and permutation round trip") {
    std::vector<std::int8_t> c{1, -1, 1, 1, -1, -1};
    const auto rm = Mapping::row_major(2, 3);
    const auto grid = rm.interleave(c);
    // 1-based grid[1][3] = c(3): first row, third column.
    CHECK(grid.at(0, 2) == c[2]);
    CHECK(grid.at(1, 0) == c[3]);
    CHECK(rm.deinterleave(grid) == c);

    const auto rp = Mapping::random_perm(2, 3, 99);
    CHECK(rp.deinterleave(rp.interleave(c)) == c);

    const auto ra = Mapping::random_perm(8, 8, 1);
    const auto rb = Mapping::random_perm(8, 8, 2);
    std::vector<std::int8_t> long_c(64);
    Rng rng = make_rng(5, 0);
    for (auto& v : long_c) v = (rng() & 1u) ? 1 : -1;
    const auto ga = ra.interleave(long_c);
    const auto gb = rb.interleave(long_c);
    CHECK(ga.cells() != gb.cells());
    auto ma = ga.cells();
    auto mb = gb.cells();
    std::sort(ma.begin(), ma.end());
    std::sort(mb.begin(), mb.end());
    CHECK(ma == mb);  // same multiset, different placement
}

TEST_CASE("interleave size mismatch") {
    const auto rm = Mapping::row_major(2, 3);
    CHECK_THROWS_AS(rm.interleave(std::vector<std::int8_t>(5, 1)), std::invalid_argument);
}

TEST_CASE("convolve2d: all -1 grid against the tap-sum value") {
    const auto ha = ChannelMatrix::preset_ha();
    const BipolarGrid grid(8, 8, -1);
    const auto y = convolve2d(grid, ha);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            CHECK(y.at(i, j) == doctest::Approx(-2.104696).epsilon(1e-9));
}

TEST_CASE("convolve2d: single +1 flips by twice each tap") {
    const auto ha = ChannelMatrix::preset_ha();
    BipolarGrid grid(9, 9, -1);
    const auto base = convolve2d(grid, ha);
    grid.set(4, 4, 1);
    const auto y = convolve2d(grid, ha);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
            const int m = i - 4;
            const int n = j - 4;
            double expect = base.at(i, j);
            if (m >= 0 && m < 3 && n >= 0 && n < 3) expect += 2.0 * ha.tap(m, n);
            CHECK(y.at(i, j) == doctest::Approx(expect).epsilon(1e-12));
        }
}

TEST_CASE("convolve2d: 1xN reduces to 1D convolution") {
    const ChannelMatrix h(1, 3, {1.0, 0.5, 0.25});
    BipolarGrid grid(1, 12, -1);
    Rng rng = make_rng(17, 0);
    for (int j = 0; j < 12; ++j) grid.set(0, j, (rng() & 1u) ? 1 : -1);
    const auto y = convolve2d(grid, h);
    for (int j = 0; j < 12; ++j) {
        double expect = 0.0;  // independent 1D evaluation
        for (int n = 0; n < 3; ++n) expect += h.tap(0, n) * grid.at(0, j - n);
        CHECK(y.at(0, j) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("convolve2d linearity on real-relaxed grids") {
    const auto ha = ChannelMatrix::preset_ha();
    Rng rng = make_rng(23, 0);
    std::normal_distribution<double> g(0.0, 1.0);
    RealGrid x1(6, 7), x2(6, 7), mix(6, 7);
    const double a = 1.7, b = -0.4;
    for (std::size_t i = 0; i < x1.cells.size(); ++i) {
        x1.cells[i] = g(rng);
        x2.cells[i] = g(rng);
        mix.cells[i] = a * x1.cells[i] + b * x2.cells[i];
    }
    const auto y1 = convolve2d(x1, ha, 0.0);
    const auto y2 = convolve2d(x2, ha, 0.0);
    const auto ym = convolve2d(mix, ha, 0.0);
    for (std::size_t i = 0; i < ym.cells.size(); ++i)
        CHECK(ym.cells[i] == doctest::Approx(a * y1.cells[i] + b * y2.cells[i]).epsilon(1e-12));
}

TEST_CASE("guard border: explicit -1 ring never changes interior y") {
    const auto ha = ChannelMatrix::preset_ha();
    BipolarGrid grid(6, 6, -1);
    Rng rng = make_rng(29, 0);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) grid.set(i, j, (rng() & 1u) ? 1 : -1);
    BipolarGrid wide(8, 8, -1);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) wide.set(i + 1, j + 1, grid.at(i, j));
    const auto y = convolve2d(grid, ha);
    const auto yw = convolve2d(wide, ha);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            CHECK(y.at(i, j) == doctest::Approx(yw.at(i + 1, j + 1)).epsilon(1e-12));
}

TEST_CASE("transmit: sigma 0 is exact; moments at 1e6 draws") {
    RealGrid y(1000, 1000);
    Rng rng0 = make_rng(31, 0);
    std::normal_distribution<double> g(0.0, 2.0);
    for (auto& v : y.cells) v = g(rng0);

    Rng rng1 = make_rng(31, 1);
    const auto r0 = transmit(y, 0.0, rng1);
    CHECK(r0.cells == y.cells);

    const double sigma = 0.7;
    const auto r = transmit(y, sigma, rng1);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
        const double d = r.cells[i] - y.cells[i];
        sum += d;
        sum2 += d * d;
    }
    const double n = static_cast<double>(r.cells.size());
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::fabs(mean) < 4.0 * sigma / 1000.0);  // 4-sigma CLT bound
    CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.01));
}

TEST_CASE("snr: published-parameter value, unit case, inverse round trip") {
    const auto ha = ChannelMatrix::preset_ha();
    const double snr = snr_db_from_sigma(ha, 0.5, 0.81);
    const double expect = 10.0 * std::log10(ha.energy() / (2.0 * 0.5 * 0.81 * 0.81));
    CHECK(snr == doctest::Approx(expect).epsilon(1e-12));
    CHECK(snr == doctest::Approx(2.67).epsilon(0.002));

    const auto unit = ChannelMatrix::awgn();
    CHECK(snr_db_from_sigma(unit, 0.5, 1.0) == doctest::Approx(0.0).epsilon(1e-12));

    for (double s = 0.2; s < 1.5; s += 0.1) {
        const double back = sigma_from_snr_db(ha, 0.5, snr_db_from_sigma(ha, 0.5, s));
        CHECK(back == doctest::Approx(s).epsilon(1e-12));
    }
    CHECK_THROWS_AS(snr_db_from_sigma(ha, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(snr_db_from_sigma(ha, 0.5, 0.0), std::invalid_argument);
}
