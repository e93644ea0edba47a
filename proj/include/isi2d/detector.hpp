#pragma once

#include <span>
#include <vector>

#include "isi2d/channel.hpp"
#include "isi2d/max_star.hpp"

namespace isi2d {

// Cross-track symbol of M_h stacked bits. Bit k of the index is the bit of
// row i-k, set means +1: index 0 is the all -1 symbol, the low bit is the
// current row.
struct SymbolAlphabet {
    int m_h = 1;
    explicit SymbolAlphabet(int mh) : m_h(mh) {}
    int size() const { return 1 << m_h; }
    static double bipolar(int sym, int k) { return ((sym >> k) & 1) ? 1.0 : -1.0; }
    static int index_of(std::span<const double> bits);  // bits[k] for row i-k
};

inline int down_track_state_count(int m_h, int n_h) { return 1 << (m_h * (n_h - 1)); }
inline int cross_track_state_count(int m_h) { return 1 << (m_h - 1); }

// Per-bit log-probability pair, [0] for -1 and [1] for +1.
struct BitLogP {
    double lp[2] = {0.0, 0.0};
};

inline BitLogP bit_logp_from_llr(double llr) {
    // exp/log1p saturate correctly for llr = +-inf.
    BitLogP p;
    p.lp[1] = -std::log1p(std::exp(-llr));
    p.lp[0] = -std::log1p(std::exp(llr));
    return p;
}

// log P(symbol) = sum_k log P(x(i-k,j)); bits[k] belongs to row i-k.
// Proper log-probabilities in, proper log-probabilities out.
void bit_to_symbol(int m_h, std::span<const BitLogP> bits, std::span<double> sym_logp);

// Symbol-based BCJR over one down-track strip (one row of the page).
//
// r_strip:  received samples, one per trellis step.
// l_id:     symbol log-priors per step, strip_len x A flattened.
// l_od:     posterior symbol logs (normalized); l_ic = l_od - l_id.
// left_border true means the state before the first step is known all -1;
// otherwise it is uniform. The final state is always marginalized uniformly.
//
// Throws std::runtime_error when every path has zero probability (sigma = 0
// with samples inconsistent with any input).
void down_track_bcjr(const ChannelMatrix& h, double sigma, bool left_border,
                     std::span<const double> r_strip, std::span<const double> l_id,
                     std::span<double> l_od, std::span<double> l_ic);

// Bit-based BCJR over one cross-track strip (one column of the page).
//
// l_ic:      symbol logs from the down-track pass, strip_len x A.
// bit_prior: per-bit log-probability pairs along the strip.
// l_oc_sym:  forward + current-bit prior + backward per symbol (normalized),
//            i.e. the transition posterior with the strip's own l_ic term of
//            that position excluded.
// l_oc_bit:  posterior bit LLR log P(+1)/P(-1).
void cross_track_bcjr(int m_h, bool top_border, std::span<const double> l_ic,
                      std::span<const BitLogP> bit_prior, std::span<double> l_oc_sym,
                      std::span<double> l_oc_bit);

struct DetectorOptions {
    bool down_track_first = true;  // inner schedule order
};

// Iterative two-direction page detector.
class Detector {
public:
    Detector(ChannelMatrix h, int rows, int cols, DetectorOptions opt = {});

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const ChannelMatrix& channel() const { return h_; }

    // Full-page detection: i_det inner down-track/cross-track rounds, then
    // per-bit extrinsic LLRs (decoder-supplied prior subtracted).
    RealGrid detect(const RealGrid& r, double sigma, const RealGrid& prior_llr,
                    int i_det) const;

    // Windowed variant: each bit is detected from received samples within
    // (f_c + M_h - 1, f_d + N_h - 1) of it, with uniform trellis boundaries
    // where the window does not touch the page border.
    RealGrid detect_windowed(const RealGrid& r, double sigma, const RealGrid& prior_llr,
                             int i_det, int f_c, int f_d, int threads = 1) const;

private:
    struct Rect {
        int r0, r1, c0, c1;  // inclusive trellis range
        int rows() const { return r1 - r0 + 1; }
        int cols() const { return c1 - c0 + 1; }
    };

    // Shared core: runs the inner schedule on a sub-rectangle and returns the
    // cross-track posterior bit LLRs for every position in it.
    std::vector<double> detect_rect(const Rect& rect, const RealGrid& r, double sigma,
                                    const RealGrid& prior_llr, int i_det) const;

    ChannelMatrix h_;
    int rows_ = 0;
    int cols_ = 0;
    DetectorOptions opt_;
};

}  // namespace isi2d
