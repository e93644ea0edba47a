#pragma once

#include <cstdint>
#include <vector>

#include "isi2d/channel.hpp"
#include "isi2d/coset_code.hpp"
#include "isi2d/detector.hpp"
#include "isi2d/mapping.hpp"
#include "isi2d/spa.hpp"

namespace isi2d {

struct IterationSchedule {
    int i_det = 3;   // inner detector iterations
    int i_c = 50;    // decoder iterations per outer round
    int i_out = 10;  // outer detector/decoder rounds
};

struct JiddsOptions {
    bool syndrome_early_exit = false;  // stop outer rounds once the syndrome holds
    DetectorOptions detector;
};

struct RoundDiag {
    int round = 0;
    int bit_errors = 0;
    bool syndrome_ok = false;
};

struct FrameResult {
    int bit_errors = 0;          // over all N codeword bits
    bool frame_error = false;
    bool converged = false;      // final syndrome check
    int rounds_run = 0;
    std::vector<RoundDiag> diagnostics;
};

// One coded page end to end: encode, modulate, interleave, 2D convolve, AWGN,
// then i_out rounds of detect/decode with extrinsic exchange.
FrameResult run_frame(const std::vector<std::uint8_t>& u, const CosetLdpcCode& code,
                      const Mapping& mapping, const ChannelMatrix& h, double sigma,
                      const IterationSchedule& schedule, std::uint64_t noise_seed,
                      const JiddsOptions& opt = {});

struct SweepPoint {
    double snr_db = 0.0;
    double sigma = 0.0;
    std::int64_t frames = 0;
    std::int64_t bits = 0;
    std::int64_t bit_errors = 0;
    std::int64_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double elapsed_s = 0.0;
};

struct SweepConfig {
    std::vector<double> sigmas;       // simulation points
    double rate = 0.5;                // for SNR reporting
    IterationSchedule schedule;
    std::int64_t max_frames = 1000;
    std::int64_t min_errors = 100;    // stop a point once collected
    std::uint64_t seed = 1;
    int threads = 1;
    int batch = 16;                   // stop rule evaluated per batch; fixed so
                                      // results do not depend on thread count
    JiddsOptions options;
};

// Monte-Carlo BER/FER sweep; one row per sigma. Frames draw i.u.d. info words
// and per-frame noise seeds derived from the master seed.
std::vector<SweepPoint> ber_sweep(const CosetLdpcCode& code, const Mapping& mapping,
                                  const ChannelMatrix& h, const SweepConfig& cfg);

}  // namespace isi2d
