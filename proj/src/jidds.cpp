#include "isi2d/jidds.hpp"

#include <chrono>
#include <stdexcept>

#include "isi2d/parallel.hpp"

namespace isi2d {

FrameResult run_frame(const std::vector<std::uint8_t>& u, const CosetLdpcCode& code,
                      const Mapping& mapping, const ChannelMatrix& h, double sigma,
                      const IterationSchedule& schedule, std::uint64_t noise_seed,
                      const JiddsOptions& opt) {
    if (schedule.i_det < 1 || schedule.i_c < 1 || schedule.i_out < 1)
        throw std::invalid_argument("run_frame: iteration counts must be >= 1");
    if (mapping.n() != code.n())
        throw std::invalid_argument("run_frame: mapping size != code length");

    const auto s = code.encode(u);
    const auto c = modulate(s);
    const auto grid = mapping.interleave(c);
    const auto y = convolve2d(grid, h);
    Rng rng(noise_seed);
    const auto r = transmit(y, sigma, rng);

    Detector detector(h, grid.rows(), grid.cols(), opt.detector);
    RealGrid prior(grid.rows(), grid.cols());
    SpaResult dec;

    FrameResult out;
    for (int t = 1; t <= schedule.i_out; ++t) {
        const RealGrid ext = detector.detect(r, sigma, prior, schedule.i_det);
        const auto l_ext1 = mapping.deinterleave_real(ext);
        dec = spa_decode(code.pcm, code.d, l_ext1, schedule.i_c);
        out.rounds_run = t;

        RoundDiag diag;
        diag.round = t;
        diag.syndrome_ok = dec.converged;
        for (int n = 0; n < code.n(); ++n)
            if (dec.hard[n] != s[n]) ++diag.bit_errors;
        out.diagnostics.push_back(diag);

        if (opt.syndrome_early_exit && dec.converged) break;
        if (t < schedule.i_out) prior = mapping.interleave_real(dec.l_ext2);
    }

    out.bit_errors = out.diagnostics.back().bit_errors;
    out.frame_error = out.bit_errors > 0;
    out.converged = dec.converged;
    return out;
}

std::vector<SweepPoint> ber_sweep(const CosetLdpcCode& code, const Mapping& mapping,
                                  const ChannelMatrix& h, const SweepConfig& cfg) {
    std::vector<SweepPoint> table;
    table.reserve(cfg.sigmas.size());
    const int k = code.k();

    for (std::size_t pi = 0; pi < cfg.sigmas.size(); ++pi) {
        const double sigma = cfg.sigmas[pi];
        SweepPoint pt;
        pt.sigma = sigma;
        pt.snr_db = snr_db_from_sigma(h, cfg.rate, sigma);
        const auto t0 = std::chrono::steady_clock::now();

        std::int64_t frame_index = 0;
        while (frame_index < cfg.max_frames) {
            const std::int64_t batch =
                std::min<std::int64_t>(cfg.batch, cfg.max_frames - frame_index);
            std::vector<FrameResult> results(batch);
            parallel_for(batch, cfg.threads, [&](std::int64_t b, std::int64_t e) {
                for (std::int64_t f = b; f < e; ++f) {
                    const std::uint64_t fseed = derive_seed(cfg.seed, pi, frame_index + f);
                    Rng urng = make_rng(fseed, 0x1D10);
                    std::vector<std::uint8_t> u(k);
                    for (auto& bit : u) bit = static_cast<std::uint8_t>(urng() & 1u);
                    results[f] = run_frame(u, code, mapping, h, sigma, cfg.schedule,
                                           derive_seed(fseed, 0x4015E), cfg.options);
                }
            });
            for (const auto& fr : results) {
                ++pt.frames;
                pt.bits += code.n();
                pt.bit_errors += fr.bit_errors;
                if (fr.frame_error) ++pt.frame_errors;
            }
            frame_index += batch;
            if (pt.bit_errors >= cfg.min_errors) break;
        }

        pt.ber = pt.bits > 0 ? static_cast<double>(pt.bit_errors) / pt.bits : 0.0;
        pt.fer = pt.frames > 0 ? static_cast<double>(pt.frame_errors) / pt.frames : 0.0;
        pt.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        table.push_back(pt);
    }
    return table;
}

}  // namespace isi2d
