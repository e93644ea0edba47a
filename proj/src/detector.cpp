#include "isi2d/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isi2d/parallel.hpp"

namespace isi2d {

namespace {

// Predicted noiseless sample per trellis transition. The down-track state
// keeps the previous N_h-1 symbols with the most recent one in the low M_h
// bits; u is the newly consumed symbol.
std::vector<double> build_yhat(const ChannelMatrix& h) {
    const int a = 1 << h.m_h();
    const int states = down_track_state_count(h.m_h(), h.n_h());
    std::vector<double> yhat(static_cast<std::size_t>(states) * a);
    for (int s = 0; s < states; ++s)
        for (int u = 0; u < a; ++u) {
            double acc = 0.0;
            for (int n = 0; n < h.n_h(); ++n) {
                const int sym = (n == 0) ? u : (s >> ((n - 1) * h.m_h())) & (a - 1);
                for (int m = 0; m < h.m_h(); ++m)
                    acc += h.tap(m, n) * SymbolAlphabet::bipolar(sym, m);
            }
            yhat[static_cast<std::size_t>(s) * a + u] = acc;
        }
    return yhat;
}

// Subtract log(sum exp) so the vector exponentiates to a unit sum.
void normalize_log_vec(double* v, int n) {
    double z = kNegInf;
    for (int i = 0; i < n; ++i) z = max_star(z, v[i]);
    if (z == kNegInf)
        throw std::runtime_error("detector: zero-probability symbol vector (inconsistent input)");
    for (int i = 0; i < n; ++i) v[i] -= z;
}

}  // namespace

int SymbolAlphabet::index_of(std::span<const double> bits) {
    int idx = 0;
    for (std::size_t k = 0; k < bits.size(); ++k)
        if (bits[k] > 0.0) idx |= 1 << k;
    return idx;
}

void bit_to_symbol(int m_h, std::span<const BitLogP> bits, std::span<double> sym_logp) {
    const int a = 1 << m_h;
    for (int sym = 0; sym < a; ++sym) {
        double acc = 0.0;
        for (int k = 0; k < m_h; ++k) acc += bits[k].lp[(sym >> k) & 1];
        sym_logp[sym] = acc;
    }
}

void down_track_bcjr(const ChannelMatrix& h, double sigma, bool left_border,
                     std::span<const double> r_strip, std::span<const double> l_id,
                     std::span<double> l_od, std::span<double> l_ic) {
    const int m_h = h.m_h();
    const int a = 1 << m_h;
    const int states = down_track_state_count(m_h, h.n_h());
    const int mask = states - 1;
    const int len = static_cast<int>(r_strip.size());
    if (static_cast<int>(l_id.size()) != len * a || static_cast<int>(l_od.size()) != len * a ||
        static_cast<int>(l_ic.size()) != len * a)
        throw std::invalid_argument("down_track_bcjr: field sizes inconsistent with strip");
    if (sigma < 0.0) throw std::invalid_argument("down_track_bcjr: sigma must be >= 0");

    const auto yhat = build_yhat(h);
    const double inv2s2 = sigma > 0.0 ? 1.0 / (2.0 * sigma * sigma) : 0.0;
    auto obs = [&](double r, double y) {
        if (sigma > 0.0) {
            const double d = r - y;
            return -d * d * inv2s2;
        }
        return std::fabs(r - y) <= 1e-9 * (1.0 + std::fabs(r)) ? 0.0 : kNegInf;
    };

    std::vector<double> alpha(static_cast<std::size_t>(len + 1) * states, kNegInf);
    if (left_border) {
        alpha[0] = 0.0;  // all -1 state
    } else {
        const double u0 = -(m_h * (h.n_h() - 1)) * std::log(2.0);
        for (int s = 0; s < states; ++s) alpha[s] = u0;
    }
    for (int k = 0; k < len; ++k) {
        const double* ak = &alpha[static_cast<std::size_t>(k) * states];
        double* an = &alpha[static_cast<std::size_t>(k + 1) * states];
        const double* lid = &l_id[static_cast<std::size_t>(k) * a];
        bool any = false;
        for (int s = 0; s < states; ++s) {
            if (ak[s] == kNegInf) continue;
            const double* yh = &yhat[static_cast<std::size_t>(s) * a];
            for (int u = 0; u < a; ++u) {
                const double g = lid[u] + obs(r_strip[k], yh[u]);
                if (g == kNegInf) continue;
                const int s2 = ((s << m_h) | u) & mask;
                an[s2] = max_star(an[s2], ak[s] + g);
                any = true;
            }
        }
        if (!any)
            throw std::runtime_error(
                "down_track_bcjr: no consistent path (sigma = 0 with contradictory samples?)");
    }

    // Final state marginalized uniformly: bits past the strip are either page
    // border guards with no remaining observations, or out-of-window unknowns.
    std::vector<double> beta(static_cast<std::size_t>(len + 1) * states, kNegInf);
    for (int s = 0; s < states; ++s) beta[static_cast<std::size_t>(len) * states + s] = 0.0;
    for (int k = len - 1; k >= 0; --k) {
        double* bk = &beta[static_cast<std::size_t>(k) * states];
        const double* bn = &beta[static_cast<std::size_t>(k + 1) * states];
        const double* lid = &l_id[static_cast<std::size_t>(k) * a];
        for (int s = 0; s < states; ++s) {
            const double* yh = &yhat[static_cast<std::size_t>(s) * a];
            double acc = kNegInf;
            for (int u = 0; u < a; ++u) {
                const double g = lid[u] + obs(r_strip[k], yh[u]);
                if (g == kNegInf) continue;
                const int s2 = ((s << m_h) | u) & mask;
                if (bn[s2] == kNegInf) continue;
                acc = max_star(acc, g + bn[s2]);
            }
            bk[s] = acc;
        }
    }

    for (int k = 0; k < len; ++k) {
        const double* ak = &alpha[static_cast<std::size_t>(k) * states];
        const double* bn = &beta[static_cast<std::size_t>(k + 1) * states];
        const double* lid = &l_id[static_cast<std::size_t>(k) * a];
        double* od = &l_od[static_cast<std::size_t>(k) * a];
        for (int u = 0; u < a; ++u) {
            double acc = kNegInf;
            if (lid[u] != kNegInf) {
                for (int s = 0; s < states; ++s) {
                    if (ak[s] == kNegInf) continue;
                    const double g = obs(r_strip[k], yhat[static_cast<std::size_t>(s) * a + u]);
                    if (g == kNegInf) continue;
                    const int s2 = ((s << m_h) | u) & mask;
                    if (bn[s2] == kNegInf) continue;
                    acc = max_star(acc, ak[s] + lid[u] + g + bn[s2]);
                }
            }
            od[u] = acc;
        }
        normalize_log_vec(od, a);
        double* ic = &l_ic[static_cast<std::size_t>(k) * a];
        for (int u = 0; u < a; ++u)
            ic[u] = (lid[u] == kNegInf) ? kNegInf : od[u] - lid[u];
        normalize_log_vec(ic, a);
    }
}

void cross_track_bcjr(int m_h, bool top_border, std::span<const double> l_ic,
                      std::span<const BitLogP> bit_prior, std::span<double> l_oc_sym,
                      std::span<double> l_oc_bit) {
    const int a = 1 << m_h;
    const int states = cross_track_state_count(m_h);
    const int mask = states - 1;
    const int len = static_cast<int>(bit_prior.size());
    if (static_cast<int>(l_ic.size()) != len * a || static_cast<int>(l_oc_sym.size()) != len * a ||
        static_cast<int>(l_oc_bit.size()) != len)
        throw std::invalid_argument("cross_track_bcjr: field sizes inconsistent with strip");

    // Branch for consuming bit b in state s: the M_h-tuple symbol is the
    // state's bits shifted up with b in the low position.
    auto branch = [&](int k, int s, int b) {
        const int sym = (s << 1) | b;
        return l_ic[static_cast<std::size_t>(k) * a + sym] + bit_prior[k].lp[b];
    };

    std::vector<double> fwd(static_cast<std::size_t>(len + 1) * states, kNegInf);
    if (top_border) {
        fwd[0] = 0.0;
    } else {
        const double u0 = -(m_h - 1) * std::log(2.0);
        for (int s = 0; s < states; ++s) fwd[s] = u0;
    }
    for (int k = 0; k < len; ++k) {
        const double* fk = &fwd[static_cast<std::size_t>(k) * states];
        double* fn = &fwd[static_cast<std::size_t>(k + 1) * states];
        bool any = false;
        for (int s = 0; s < states; ++s) {
            if (fk[s] == kNegInf) continue;
            for (int b = 0; b < 2; ++b) {
                const double g = branch(k, s, b);
                if (g == kNegInf) continue;
                const int s2 = ((s << 1) | b) & mask;
                fn[s2] = max_star(fn[s2], fk[s] + g);
                any = true;
            }
        }
        if (!any) throw std::runtime_error("cross_track_bcjr: no consistent path");
    }

    std::vector<double> bwd(static_cast<std::size_t>(len + 1) * states, kNegInf);
    for (int s = 0; s < states; ++s) bwd[static_cast<std::size_t>(len) * states + s] = 0.0;
    for (int k = len - 1; k >= 0; --k) {
        double* bk = &bwd[static_cast<std::size_t>(k) * states];
        const double* bn = &bwd[static_cast<std::size_t>(k + 1) * states];
        for (int s = 0; s < states; ++s) {
            double acc = kNegInf;
            for (int b = 0; b < 2; ++b) {
                const double g = branch(k, s, b);
                if (g == kNegInf) continue;
                const int s2 = ((s << 1) | b) & mask;
                if (bn[s2] == kNegInf) continue;
                acc = max_star(acc, g + bn[s2]);
            }
            bk[s] = acc;
        }
    }

    for (int k = 0; k < len; ++k) {
        const double* fk = &fwd[static_cast<std::size_t>(k) * states];
        const double* bn = &bwd[static_cast<std::size_t>(k + 1) * states];
        double* oc = &l_oc_sym[static_cast<std::size_t>(k) * a];
        double pos = kNegInf, neg = kNegInf;
        for (int sym = 0; sym < a; ++sym) {
            const int s = sym >> 1;
            const int b = sym & 1;
            const int s2 = sym & mask;
            // Transition posterior with this position's own l_ic term removed,
            // the current bit prior kept.
            if (fk[s] == kNegInf || bn[s2] == kNegInf) {
                oc[sym] = kNegInf;
            } else {
                oc[sym] = fk[s] + bit_prior[k].lp[b] + bn[s2];
            }
            // Full transition score for the bit decision.
            const double g = branch(k, s, b);
            if (fk[s] == kNegInf || g == kNegInf || bn[s2] == kNegInf) continue;
            const double t = fk[s] + g + bn[s2];
            if (b)
                pos = max_star(pos, t);
            else
                neg = max_star(neg, t);
        }
        normalize_log_vec(oc, a);
        if (pos == kNegInf && neg == kNegInf)
            throw std::runtime_error("cross_track_bcjr: zero-probability bit");
        l_oc_bit[k] = pos - neg;
    }
}

Detector::Detector(ChannelMatrix h, int rows, int cols, DetectorOptions opt)
    : h_(std::move(h)), rows_(rows), cols_(cols), opt_(opt) {
    if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("detector: empty page");
}

std::vector<double> Detector::detect_rect(const Rect& rect, const RealGrid& r, double sigma,
                                          const RealGrid& prior_llr, int i_det) const {
    const int m_h = h_.m_h();
    const int a = 1 << m_h;
    const int nrows = rect.rows();
    const int ncols = rect.cols();
    const std::size_t cells = static_cast<std::size_t>(nrows) * ncols;

    // Per-bit priors local to the rectangle.
    std::vector<BitLogP> bitp(cells);
    for (int ri = 0; ri < nrows; ++ri)
        for (int ci = 0; ci < ncols; ++ci)
            bitp[static_cast<std::size_t>(ri) * ncols + ci] =
                bit_logp_from_llr(prior_llr.at(rect.r0 + ri, rect.c0 + ci));

    // Initial symbol priors: decoder-fed bit priors expanded per symbol. Rows
    // above the page are guard -1 (certain); rows above the rectangle inside
    // the page are unknown and stay uniform.
    std::vector<double> l_id(cells * a);
    std::vector<BitLogP> stack(m_h);
    const BitLogP guard{{0.0, kNegInf}};
    const BitLogP unknown{{-std::log(2.0), -std::log(2.0)}};
    for (int ri = 0; ri < nrows; ++ri)
        for (int ci = 0; ci < ncols; ++ci) {
            for (int m = 0; m < m_h; ++m) {
                const int gr = rect.r0 + ri - m;
                if (gr < 0)
                    stack[m] = guard;
                else if (gr < rect.r0)
                    stack[m] = unknown;
                else
                    stack[m] = bitp[static_cast<std::size_t>(ri - m) * ncols + ci];
            }
            double* v = &l_id[(static_cast<std::size_t>(ri) * ncols + ci) * a];
            bit_to_symbol(m_h, stack, {v, static_cast<std::size_t>(a)});
            normalize_log_vec(v, a);
        }

    std::vector<double> l_od(cells * a), l_ic(cells * a), l_oc_sym(cells * a);
    std::vector<double> l_oc_bit(cells);
    std::vector<double> col_ic(static_cast<std::size_t>(nrows) * a);
    std::vector<BitLogP> col_prior(nrows);
    std::vector<double> col_oc(static_cast<std::size_t>(nrows) * a);
    std::vector<double> col_bit(nrows);

    const bool left_border = rect.c0 == 0;
    const bool top_border = rect.r0 == 0;

    auto run_cross = [&]() {
        for (int ci = 0; ci < ncols; ++ci) {
            for (int ri = 0; ri < nrows; ++ri) {
                const std::size_t at = (static_cast<std::size_t>(ri) * ncols + ci) * a;
                for (int u = 0; u < a; ++u) col_ic[static_cast<std::size_t>(ri) * a + u] = l_ic[at + u];
                col_prior[ri] = bitp[static_cast<std::size_t>(ri) * ncols + ci];
            }
            cross_track_bcjr(m_h, top_border, col_ic, col_prior, col_oc, col_bit);
            for (int ri = 0; ri < nrows; ++ri) {
                const std::size_t at = (static_cast<std::size_t>(ri) * ncols + ci) * a;
                for (int u = 0; u < a; ++u) l_oc_sym[at + u] = col_oc[static_cast<std::size_t>(ri) * a + u];
                l_oc_bit[static_cast<std::size_t>(ri) * ncols + ci] = col_bit[ri];
            }
        }
    };

    if (!opt_.down_track_first) {
        // Cross-track warm-up half pass on neutral channel symbol logs.
        std::fill(l_ic.begin(), l_ic.end(), 0.0);
        run_cross();
        l_id = l_oc_sym;
    }

    for (int it = 1; it <= i_det; ++it) {
        for (int ri = 0; ri < nrows; ++ri) {
            const std::size_t off = static_cast<std::size_t>(ri) * ncols;
            std::span<const double> r_strip(&r.cells[static_cast<std::size_t>(rect.r0 + ri) * cols_ + rect.c0],
                                            static_cast<std::size_t>(ncols));
            down_track_bcjr(h_, sigma, left_border, r_strip,
                            {&l_id[off * a], static_cast<std::size_t>(ncols) * a},
                            {&l_od[off * a], static_cast<std::size_t>(ncols) * a},
                            {&l_ic[off * a], static_cast<std::size_t>(ncols) * a});
        }
        run_cross();
        if (it < i_det) l_id = l_oc_sym;
    }
    return l_oc_bit;
}

RealGrid Detector::detect(const RealGrid& r, double sigma, const RealGrid& prior_llr,
                          int i_det) const {
    if (i_det < 1) throw std::invalid_argument("detect: i_det must be >= 1");
    if (r.rows != rows_ || r.cols != cols_ || prior_llr.rows != rows_ || prior_llr.cols != cols_)
        throw std::invalid_argument("detect: grid size mismatch");
    const Rect rect{0, rows_ - 1, 0, cols_ - 1};
    auto post = detect_rect(rect, r, sigma, prior_llr, i_det);
    RealGrid out(rows_, cols_);
    for (std::size_t i = 0; i < post.size(); ++i) out.cells[i] = post[i] - prior_llr.cells[i];
    return out;
}

RealGrid Detector::detect_windowed(const RealGrid& r, double sigma, const RealGrid& prior_llr,
                                   int i_det, int f_c, int f_d, int threads) const {
    if (i_det < 1) throw std::invalid_argument("detect_windowed: i_det must be >= 1");
    if (f_c < 1 || f_d < 1) throw std::invalid_argument("detect_windowed: window radii must be >= 1");
    if (r.rows != rows_ || r.cols != cols_ || prior_llr.rows != rows_ || prior_llr.cols != cols_)
        throw std::invalid_argument("detect_windowed: grid size mismatch");
    const int rr = f_c + h_.m_h() - 1;  // received-sample reach around the bit window
    const int cr = f_d + h_.n_h() - 1;
    RealGrid out(rows_, cols_);
    parallel_for(static_cast<std::int64_t>(rows_) * cols_, threads,
                 [&](std::int64_t b, std::int64_t e) {
                     for (std::int64_t idx = b; idx < e; ++idx) {
                         const int i = static_cast<int>(idx) / cols_;
                         const int j = static_cast<int>(idx) % cols_;
                         Rect rect{std::max(0, i - rr), std::min(rows_ - 1, i + rr),
                                   std::max(0, j - cr), std::min(cols_ - 1, j + cr)};
                         auto post = detect_rect(rect, r, sigma, prior_llr, i_det);
                         const std::size_t local =
                             static_cast<std::size_t>(i - rect.r0) * rect.cols() + (j - rect.c0);
                         out.cells[idx] = post[local] - prior_llr.cells[idx];
                     }
                 });
    return out;
}

}  // namespace isi2d
