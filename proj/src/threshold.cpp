#include "isi2d/threshold.hpp"

#include <cmath>
#include <sstream>

namespace isi2d {

const char* to_string(ThresholdMode m) { return m == ThresholdMode::te ? "te" : "non-te"; }

ThresholdResult threshold_search(const ChannelMatrix& h, const DegreeDistribution& deg,
                                 ThresholdMode mode, const DeParams& de_params,
                                 const ThresholdParams& tp) {
    if (!(tp.bracket_lo > 0.0) || !(tp.bracket_hi > tp.bracket_lo))
        throw BracketError("threshold: need 0 < bracket_lo < bracket_hi");
    if (!(tp.tol > 0.0)) throw BracketError("threshold: tolerance must be positive");

    DeParams p = de_params;
    p.turbo = mode == ThresholdMode::te;
    DensityEvolution engine(h, deg, p);

    ThresholdResult res;
    res.mode = mode;
    res.tol = tp.tol;
    res.channel_norm = h.norm();

    auto probe = [&](double sigma) {
        const DeTrace tr = engine.run(sigma);
        res.legs.push_back({sigma, tr.status, tr.final_p,
                            static_cast<int>(tr.rounds.size())});
        return tr.status == DeStatus::converged;
    };

    double lo = tp.bracket_lo;
    double hi = tp.bracket_hi;
    if (tp.validate_bracket) {
        if (!probe(lo))
            throw BracketError("threshold: lower bracket end does not converge");
        if (probe(hi))
            throw BracketError("threshold: upper bracket end converges; raise it");
    }
    while (hi - lo > tp.tol) {
        const double mid = 0.5 * (lo + hi);
        if (probe(mid))
            lo = mid;
        else
            hi = mid;
    }

    res.sigma_lo = lo;
    res.sigma_hi = hi;
    res.sigma = 0.5 * (lo + hi);
    res.sigma_normalized = res.sigma / res.channel_norm;
    return res;
}

std::string threshold_report(const ThresholdResult& r) {
    std::ostringstream os;
    os.precision(9);
    os << "mode=" << to_string(r.mode) << '\n'
       << "sigma=" << r.sigma << '\n'
       << "sigma_lo=" << r.sigma_lo << '\n'
       << "sigma_hi=" << r.sigma_hi << '\n'
       << "tol=" << r.tol << '\n'
       << "channel_norm=" << r.channel_norm << '\n'
       << "sigma_normalized=" << r.sigma_normalized << '\n';
    for (const auto& leg : r.legs)
        os << "leg sigma=" << leg.sigma << " status=" << to_string(leg.status)
           << " p=" << leg.p_final << " rounds=" << leg.rounds << '\n';
    return os.str();
}

}  // namespace isi2d
