#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace isi2d {

// Flat key=value run configuration. Serialization writes every field; parsing
// accepts any subset on top of defaults, so parse(serialize(c)) == c.
struct RunConfig {
    std::string command = "simulate";

    // code source: alist path, or generator parameters when code_alist is empty
    std::string code_alist;
    int code_n = 2000;
    int code_dv = 3;
    int code_dc = 6;
    int code_girth = 6;
    std::uint64_t code_seed = 7;
    std::string coset = "zero";  // zero | random
    std::uint64_t coset_seed = 1;

    std::string channel = "HA";  // HA | HB | AWGN | file path
    std::string mapping_kind = "random";  // row-major | random
    std::uint64_t mapping_seed = 1;
    int grid_rows = 0;  // 0 = near-square factorization of N

    int i_det = 3;
    int i_c = 50;
    int i_out = 10;

    std::string snr_grid;    // "a:b:step" or comma list, dB
    std::string sigma_grid;  // same syntax, raw sigma

    std::int64_t max_frames = 1000;
    std::int64_t min_errors = 100;
    bool early_exit = false;

    std::int64_t de_samples = 100000;
    double de_delta = 0.05;
    double de_llr_max = 50.0;
    double de_p_ers = 1e-6;
    double de_p_zero_tol = 1e-8;
    int de_max_outer = 40;
    int de_max_inner = 2000;
    int de_page_rows = 64;
    int de_page_cols = 64;
    int de_margin = 5;
    bool de_ext2_channel = true;
    bool de_analytic_awgn = true;
    bool de_stall_detect = true;

    std::string th_mode = "te";  // te | non-te
    double th_lo = 0.3;
    double th_hi = 1.5;
    double th_tol = 0.02;

    int f_c = 5;
    int f_d = 5;

    int nb_t = 3;
    std::int64_t nb_n = 1000000;

    std::uint64_t seed = 1;
    int threads = 1;
    bool timing = true;  // timing=off zeroes elapsed_s for byte-reproducible CSV
    std::string out;     // output path ("" = stdout)

    std::string serialize() const;
    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);

    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

// "a:b:step" inclusive arithmetic grid or comma-separated list.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace isi2d
