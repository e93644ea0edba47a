#include "isi2d/density_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isi2d/parallel.hpp"

namespace isi2d {

const char* to_string(DeStatus s) {
    switch (s) {
        case DeStatus::converged: return "converged";
        case DeStatus::stuck: return "stuck";
        case DeStatus::max_rounds: return "max_rounds";
    }
    return "?";
}

DensityEvolution::DensityEvolution(ChannelMatrix h, DegreeDistribution deg, DeParams params)
    : h_(std::move(h)), deg_(std::move(deg)), params_(params),
      table_(std::make_shared<const CheckOpTable>(params.llr_max, params.delta)) {
    deg_.validate();
    if (params_.page_rows - 2 * params_.harvest_margin <= 0 ||
        params_.page_cols - 2 * params_.harvest_margin <= 0)
        throw std::invalid_argument("density evolution: harvest margin eats the whole page");
    if (params_.min_samples < 1) throw std::invalid_argument("density evolution: need samples");
}

namespace {

double normal_cdf(double x, double mu, double sd) {
    return 0.5 * (1.0 + std::erf((x - mu) / (sd * std::sqrt(2.0))));
}

}  // namespace

LlrHistogram DensityEvolution::channel_stage(const LlrHistogram* f_ext2, double sigma,
                                             std::uint64_t stage_seed) const {
    if (!(sigma > 0.0)) throw std::invalid_argument("channel_stage: sigma must be positive");

    if (params_.analytic_awgn && h_.memoryless()) {
        // Memoryless channel: the extrinsic is 2 h0 r / sigma^2 independently of
        // the priors, so tau is exactly Gaussian.
        const double h0 = h_.tap(0, 0);
        const double mu = 2.0 * h0 * h0 / (sigma * sigma);
        const double sd = 2.0 * std::fabs(h0) / sigma;
        LlrHistogram f(params_.llr_max, params_.delta);
        const double half = 0.5 * f.delta();
        for (int i = 0; i < f.size(); ++i) {
            const double c = f.center(i);
            f.bin(i) = normal_cdf(c + half, mu, sd) - normal_cdf(c - half, mu, sd);
        }
        f.neg_inf_mass = normal_cdf(f.center(0) - half, mu, sd);
        f.pos_inf_mass = 1.0 - normal_cdf(f.center(f.size() - 1) + half, mu, sd);
        return f;
    }

    const int rows = params_.page_rows;
    const int cols = params_.page_cols;
    const int margin = params_.harvest_margin;
    const int hrows = rows - 2 * margin;
    const int hcols = cols - 2 * margin;
    const std::int64_t per_page = static_cast<std::int64_t>(hrows) * hcols;
    const std::int64_t pages = (params_.min_samples + per_page - 1) / per_page;

    const Detector detector(h_, rows, cols);
    const HistogramSampler* sampler = nullptr;
    HistogramSampler sampler_store = f_ext2 ? HistogramSampler(*f_ext2)
                                            : HistogramSampler(LlrHistogram::delta_at(
                                                  params_.llr_max, params_.delta, 0.0));
    if (f_ext2) sampler = &sampler_store;

    const int nbins = 2 * static_cast<int>(std::lround(params_.llr_max / params_.delta)) + 1;
    std::vector<std::vector<std::int32_t>> counts(
        pages, std::vector<std::int32_t>(static_cast<std::size_t>(nbins) + 2, 0));

    parallel_for(pages, params_.threads, [&](std::int64_t b, std::int64_t e) {
        LlrHistogram grid_ref(params_.llr_max, params_.delta);  // for quantize() only
        for (std::int64_t page = b; page < e; ++page) {
            Rng rng = make_rng(stage_seed, 0x9A6E, static_cast<std::uint64_t>(page));
            BipolarGrid grid(rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j)
                    grid.set(i, j, (rng() & 1u) ? 1 : -1);
            const RealGrid y = convolve2d(grid, h_);
            const RealGrid r = transmit(y, sigma, rng);
            RealGrid prior(rows, cols);
            if (sampler) {
                for (int i = 0; i < rows; ++i)
                    for (int j = 0; j < cols; ++j)
                        prior.at(i, j) = grid.at(i, j) * sampler->sample(rng);
            }
            const RealGrid ext = detector.detect(r, sigma, prior, params_.i_det);
            auto& cnt = counts[page];
            for (int i = margin; i < rows - margin; ++i)
                for (int j = margin; j < cols - margin; ++j) {
                    const double tau = ext.at(i, j) * grid.at(i, j);
                    const int idx = grid_ref.quantize(tau);
                    if (idx < 0)
                        ++cnt[0];
                    else if (idx >= nbins)
                        ++cnt[static_cast<std::size_t>(nbins) + 1];
                    else
                        ++cnt[idx + 1];
                }
        }
    });

    LlrHistogram f(params_.llr_max, params_.delta);
    for (const auto& cnt : counts) {
        f.neg_inf_mass += cnt[0];
        f.pos_inf_mass += cnt[static_cast<std::size_t>(nbins) + 1];
        for (int i = 0; i < nbins; ++i) f.bin(i) += cnt[i + 1];
    }
    f.normalize();
    return f;
}

LlrHistogram DensityEvolution::decoder_stage(const LlrHistogram& f_tau, int t, double& p_out,
                                             int& inners_out, std::vector<DeInnerPoint>* trace) const {
    LlrHistogram f_q = LlrHistogram::delta_at(params_.llr_max, params_.delta, 0.0);
    double p_prev = 1.0;
    double p = 1.0;
    int l = 0;
    while (l < params_.max_inner) {
        ++l;
        const LlrHistogram f_z = variable_node_density(f_tau, f_q, deg_);
        p = p_iud(f_z);
        if (trace) trace->push_back({t, l, p});
        f_q = check_node_density(f_z, deg_, *table_);
        if (p < params_.p_zero_tol) break;
        if (l > 1 && p_prev - p < params_.p_ers) break;
        p_prev = p;
    }
    p_out = p;
    inners_out = l;
    return f_q;
}

DeTrace DensityEvolution::run(double sigma) const {
    DeTrace tr;
    tr.sigma = sigma;
    LlrHistogram f_ext2;
    bool have_prior = false;
    const int outer_max = params_.turbo ? params_.max_outer : 1;
    std::vector<double> p_hist;

    for (int t = 1; t <= outer_max; ++t) {
        const LlrHistogram f_tau = channel_stage(have_prior ? &f_ext2 : nullptr, sigma,
                                                 derive_seed(params_.seed, 0xDE00, t));
        double p = 1.0;
        int inners = 0;
        const LlrHistogram f_q = decoder_stage(f_tau, t, p, inners, &tr.inner_trace);
        tr.rounds.push_back({t, inners, p});
        tr.final_p = p;
        p_hist.push_back(p);

        if (p < params_.p_zero_tol) {
            tr.status = DeStatus::converged;
            return tr;
        }
        if (!params_.turbo) break;
        if (params_.stall_detect && t > params_.stall_rounds && p > params_.stall_min_p &&
            p_hist[t - 1 - params_.stall_rounds] - p < params_.stall_tol) {
            tr.status = DeStatus::stuck;
            return tr;
        }
        if (t < outer_max) {
            f_ext2 = ext2_density(f_tau, f_q, deg_, params_.ext2_include_channel);
            have_prior = true;
        }
    }
    tr.status = params_.turbo ? DeStatus::max_rounds : DeStatus::stuck;
    return tr;
}

}  // namespace isi2d
