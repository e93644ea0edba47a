#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "isi2d/channel.hpp"
#include "isi2d/degree.hpp"
#include "isi2d/detector.hpp"
#include "isi2d/histogram.hpp"

namespace isi2d {

struct DeParams {
    double llr_max = 50.0;
    double delta = 0.05;
    int page_rows = 64;
    int page_cols = 64;
    int harvest_margin = 5;          // skip bits within this distance of the border
    std::int64_t min_samples = 100000;  // tau samples per channel stage
    int i_det = 3;
    double p_ers = 1e-6;             // inner stop: improvement below this
    double p_zero_tol = 1e-8;        // declared converged to zero below this
    int max_outer = 40;
    int max_inner = 2000;
    bool turbo = true;               // false: single outer round (non-te mode)
    bool ext2_include_channel = true;  // keep the f_tau factor in the ext2 density
    bool analytic_awgn = true;       // exact Gaussian stage for the 1x1 unit channel
    int threads = 1;
    std::uint64_t seed = 1;
    // Early exit for clearly stuck runs: p > stall_min_p and the improvement
    // over stall_rounds consecutive outer rounds stays below stall_tol.
    bool stall_detect = true;
    double stall_min_p = 0.02;
    double stall_tol = 0.002;
    int stall_rounds = 3;
};

enum class DeStatus { converged, stuck, max_rounds };

struct DeInnerPoint {
    int t = 0;
    int l = 0;
    double p = 0.0;
};

struct DeRound {
    int t = 0;
    int inner_iters = 0;
    double p_final = 0.0;
};

struct DeTrace {
    DeStatus status = DeStatus::max_rounds;
    double sigma = 0.0;
    double final_p = 0.0;
    std::vector<DeRound> rounds;
    std::vector<DeInnerPoint> inner_trace;
};

const char* to_string(DeStatus s);

// Density-evolution engine for one channel/ensemble pair. The quantization
// grid and check-op table are fixed at construction and shared across runs.
class DensityEvolution {
public:
    DensityEvolution(ChannelMatrix h, DegreeDistribution deg, DeParams params);

    const DeParams& params() const { return params_; }
    const ChannelMatrix& channel() const { return h_; }

    // One detector pass over Monte-Carlo pages: i.u.d. bits, AWGN at sigma,
    // per-bit priors drawn from f_ext2 (sign-corrected by the true bit), then
    // the correct extrinsic LLR tau is histogrammed over interior bits.
    // f_ext2 = nullptr means zero priors (first round). Pure Gaussian channels
    // (1x1 unit tap) use the exact closed form when analytic_awgn is set.
    LlrHistogram channel_stage(const LlrHistogram* f_ext2, double sigma,
                               std::uint64_t stage_seed) const;

    // Decoder stage: evolve f_z / f_q from f_tau until the error-probability
    // improvement drops below p_ers (or max_inner). Returns the final f_q and
    // appends the p trajectory.
    LlrHistogram decoder_stage(const LlrHistogram& f_tau, int t, double& p_out,
                               int& inners_out, std::vector<DeInnerPoint>* trace) const;

    DeTrace run(double sigma) const;

private:
    ChannelMatrix h_;
    DegreeDistribution deg_;
    DeParams params_;
    std::shared_ptr<const CheckOpTable> table_;
};

}  // namespace isi2d
