#include "isi2d/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isi2d {

namespace {
inline double phi(double x) { return std::log1p(2.0 / std::expm1(x)); }
}  // namespace

LlrHistogram::LlrHistogram(double llr_max, double delta) : llr_max_(llr_max), delta_(delta) {
    if (!(llr_max > 0.0) || !(delta > 0.0) || delta > llr_max)
        throw std::invalid_argument("histogram: need 0 < delta <= llr_max");
    k_ = static_cast<int>(std::lround(llr_max / delta));
    bins_.assign(static_cast<std::size_t>(2 * k_ + 1), 0.0);
}

LlrHistogram LlrHistogram::delta_at(double llr_max, double delta, double x) {
    LlrHistogram f(llr_max, delta);
    f.add_sample(x);
    return f;
}

int LlrHistogram::quantize(double x) const {
    if (std::isnan(x)) throw std::invalid_argument("histogram: NaN sample");
    const double b = x / delta_;
    if (b < -(k_ + 0.5)) return -1;
    if (b >= k_ + 0.5) return size();
    return static_cast<int>(std::lround(b)) + k_;
}

void LlrHistogram::add_sample(double x, double weight) {
    const int idx = quantize(x);
    if (idx < 0)
        neg_inf_mass += weight;
    else if (idx >= size())
        pos_inf_mass += weight;
    else
        bins_[idx] += weight;
}

double LlrHistogram::total_mass() const {
    double s = neg_inf_mass + pos_inf_mass;
    for (double b : bins_) s += b;
    return s;
}

void LlrHistogram::normalize() {
    const double s = total_mass();
    if (!(s > 0.0)) throw std::runtime_error("histogram: cannot normalize zero mass");
    for (double& b : bins_) b /= s;
    neg_inf_mass /= s;
    pos_inf_mass /= s;
}

double LlrHistogram::mean() const {
    double m = llr_max_ * (pos_inf_mass - neg_inf_mass);
    for (int i = 0; i < size(); ++i) m += bins_[i] * center(i);
    return m;
}

double LlrHistogram::mass_below_zero() const {
    double s = neg_inf_mass;
    for (int i = 0; i < k_; ++i) s += bins_[i];
    s += 0.5 * bins_[k_];
    return s;
}

bool LlrHistogram::same_grid(const LlrHistogram& other) const {
    return k_ == other.k_ && delta_ == other.delta_;
}

LlrHistogram hist_convolve(const LlrHistogram& a, const LlrHistogram& b) {
    if (!a.same_grid(b)) throw std::invalid_argument("hist_convolve: grid mismatch");
    const int n = a.size();
    const int k = a.half_bins();
    LlrHistogram out(a.llr_max(), a.delta());
    for (int i = 0; i < n; ++i) {
        const double ai = a.bin(i);
        if (ai == 0.0) continue;
        for (int j = 0; j < n; ++j) {
            const double w = ai * b.bin(j);
            if (w == 0.0) continue;
            const int o = i + j - k;  // centers add exactly on the grid
            if (o < 0)
                out.neg_inf_mass += w;
            else if (o >= n)
                out.pos_inf_mass += w;
            else
                out.bin(o) += w;
        }
    }
    // Infinite LLRs absorb any finite addend; opposite infinities cancel to 0.
    const double fin_a = 1.0 - a.neg_inf_mass - a.pos_inf_mass;
    const double fin_b = 1.0 - b.neg_inf_mass - b.pos_inf_mass;
    out.pos_inf_mass += a.pos_inf_mass * (fin_b + b.pos_inf_mass) + b.pos_inf_mass * fin_a;
    out.neg_inf_mass += a.neg_inf_mass * (fin_b + b.neg_inf_mass) + b.neg_inf_mass * fin_a;
    out.bin(k) += a.pos_inf_mass * b.neg_inf_mass + a.neg_inf_mass * b.pos_inf_mass;
    return out;
}

LlrHistogram self_convolve_power(const LlrHistogram& f, int p) {
    if (p < 0) throw std::invalid_argument("self_convolve_power: negative power");
    LlrHistogram acc = LlrHistogram::delta_at(f.llr_max(), f.delta(), 0.0);
    for (int i = 0; i < p; ++i) acc = hist_convolve(acc, f);
    return acc;
}

double CheckOpTable::check_combine(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    const double mag = phi(phi(std::fabs(a)) + phi(std::fabs(b)));
    return sign * mag;
}

CheckOpTable::CheckOpTable(double llr_max, double delta)
    : llr_max_(llr_max), delta_(delta), k_(static_cast<int>(std::lround(llr_max / delta))) {
    const int n = 2 * k_ + 1;
    idx_.resize(static_cast<std::size_t>(n) * n);
    // |result| <= min(|a|, |b|), so every entry stays on the finite grid.
    for (int i = 0; i < n; ++i) {
        const double a = (i - k_) * delta_;
        for (int j = 0; j <= i; ++j) {
            const double b = (j - k_) * delta_;
            const double v = check_combine(a, b);
            const auto q = static_cast<std::int16_t>(std::lround(v / delta_) + k_);
            idx_[static_cast<std::size_t>(i) * n + j] = q;
            idx_[static_cast<std::size_t>(j) * n + i] = q;
        }
    }
}

bool CheckOpTable::matches(const LlrHistogram& f) const {
    return f.half_bins() == k_ && f.delta() == delta_;
}

LlrHistogram CheckOpTable::fold(const LlrHistogram& a, const LlrHistogram& b) const {
    if (!matches(a) || !matches(b)) throw std::invalid_argument("check fold: grid mismatch");
    const int n = 2 * k_ + 1;
    LlrHistogram out(llr_max_, delta_);
    for (int i = 0; i < n; ++i) {
        const double ai = a.bin(i);
        if (ai == 0.0) continue;
        const std::int16_t* row = &idx_[static_cast<std::size_t>(i) * n];
        for (int j = 0; j < n; ++j) {
            const double w = ai * b.bin(j);
            if (w != 0.0) out.bin(row[j]) += w;
        }
    }
    // +inf is the check identity; -inf flips the partner's sign.
    if (a.pos_inf_mass != 0.0)
        for (int j = 0; j < n; ++j) out.bin(j) += a.pos_inf_mass * b.bin(j);
    if (a.neg_inf_mass != 0.0)
        for (int j = 0; j < n; ++j) out.bin(n - 1 - j) += a.neg_inf_mass * b.bin(j);
    if (b.pos_inf_mass != 0.0)
        for (int i = 0; i < n; ++i) out.bin(i) += b.pos_inf_mass * a.bin(i);
    if (b.neg_inf_mass != 0.0)
        for (int i = 0; i < n; ++i) out.bin(n - 1 - i) += b.neg_inf_mass * a.bin(i);
    out.pos_inf_mass += a.pos_inf_mass * b.pos_inf_mass + a.neg_inf_mass * b.neg_inf_mass;
    out.neg_inf_mass += a.pos_inf_mass * b.neg_inf_mass + a.neg_inf_mass * b.pos_inf_mass;
    return out;
}

LlrHistogram check_node_density(const LlrHistogram& f_z, const DegreeDistribution& deg,
                                const CheckOpTable& table) {
    if (!table.matches(f_z)) throw std::invalid_argument("check_node_density: grid mismatch");
    LlrHistogram out(f_z.llr_max(), f_z.delta());
    // Combine of (i-1) inputs, reusing the running fold across ascending degrees.
    auto rho = deg.rho;
    std::sort(rho.begin(), rho.end());
    LlrHistogram acc = f_z;
    int acc_inputs = 1;
    for (const auto& [i, ri] : rho) {
        while (acc_inputs < i - 1) {
            acc = table.fold(acc, f_z);
            ++acc_inputs;
        }
        const LlrHistogram& term = acc;
        for (int bidx = 0; bidx < out.size(); ++bidx) out.bin(bidx) += ri * term.bin(bidx);
        out.pos_inf_mass += ri * term.pos_inf_mass;
        out.neg_inf_mass += ri * term.neg_inf_mass;
    }
    return out;
}

LlrHistogram variable_node_density(const LlrHistogram& f_tau, const LlrHistogram& f_q,
                                   const DegreeDistribution& deg) {
    if (!f_tau.same_grid(f_q)) throw std::invalid_argument("variable_node_density: grid mismatch");
    LlrHistogram mix(f_q.llr_max(), f_q.delta());
    auto lambda = deg.lambda;
    std::sort(lambda.begin(), lambda.end());
    LlrHistogram acc = LlrHistogram::delta_at(f_q.llr_max(), f_q.delta(), 0.0);
    int acc_power = 0;
    for (const auto& [i, li] : lambda) {
        while (acc_power < i - 1) {
            acc = hist_convolve(acc, f_q);
            ++acc_power;
        }
        for (int bidx = 0; bidx < mix.size(); ++bidx) mix.bin(bidx) += li * acc.bin(bidx);
        mix.pos_inf_mass += li * acc.pos_inf_mass;
        mix.neg_inf_mass += li * acc.neg_inf_mass;
    }
    return hist_convolve(f_tau, mix);
}

LlrHistogram ext2_density(const LlrHistogram& f_tau, const LlrHistogram& f_q,
                          const DegreeDistribution& deg, bool include_channel_term) {
    if (!f_tau.same_grid(f_q)) throw std::invalid_argument("ext2_density: grid mismatch");
    LlrHistogram mix(f_q.llr_max(), f_q.delta());
    auto weights = deg.node_perspective_lambda();
    std::sort(weights.begin(), weights.end());
    LlrHistogram acc = LlrHistogram::delta_at(f_q.llr_max(), f_q.delta(), 0.0);
    int acc_power = 0;
    for (const auto& [i, wi] : weights) {
        while (acc_power < i) {  // full degree: all i check inputs
            acc = hist_convolve(acc, f_q);
            ++acc_power;
        }
        for (int bidx = 0; bidx < mix.size(); ++bidx) mix.bin(bidx) += wi * acc.bin(bidx);
        mix.pos_inf_mass += wi * acc.pos_inf_mass;
        mix.neg_inf_mass += wi * acc.neg_inf_mass;
    }
    if (!include_channel_term) return mix;
    return hist_convolve(f_tau, mix);
}

double p_iud(const LlrHistogram& f_z) { return f_z.mass_below_zero(); }

HistogramSampler::HistogramSampler(const LlrHistogram& f) : f_(&f) {
    cdf_.resize(f.size() + 2);
    double acc = f.neg_inf_mass;
    cdf_[0] = acc;
    for (int i = 0; i < f.size(); ++i) {
        acc += f.bin(i);
        cdf_[i + 1] = acc;
    }
    acc += f.pos_inf_mass;
    cdf_[f.size() + 1] = acc;
    if (!(acc > 0.0)) throw std::invalid_argument("sampler: zero-mass histogram");
}

double HistogramSampler::sample(Rng& rng) const {
    std::uniform_real_distribution<double> uni(0.0, cdf_.back());
    const double u = uni(rng);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    int idx = static_cast<int>(it - cdf_.begin());
    if (idx > f_->size() + 1) idx = f_->size() + 1;
    if (idx == 0) return -f_->llr_max();
    if (idx == f_->size() + 1) return f_->llr_max();
    return f_->center(idx - 1);
}

}  // namespace isi2d
