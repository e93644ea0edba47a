#pragma once

#include <cstdint>
#include <vector>

#include "isi2d/degree.hpp"
#include "isi2d/rng.hpp"

namespace isi2d {

// Quantized LLR density: uniform bins centered at k*delta for k in [-K, K]
// (K = llr_max/delta) plus explicit point masses at -inf and +inf. Values
// beyond the finite range are absorbed by the infinity masses.
class LlrHistogram {
public:
    LlrHistogram() = default;
    LlrHistogram(double llr_max, double delta);

    static LlrHistogram delta_at(double llr_max, double delta, double x);

    double llr_max() const { return llr_max_; }
    double delta() const { return delta_; }
    int half_bins() const { return k_; }
    int size() const { return 2 * k_ + 1; }
    double center(int idx) const { return (idx - k_) * delta_; }

    double& bin(int idx) { return bins_[idx]; }
    double bin(int idx) const { return bins_[idx]; }
    const std::vector<double>& bins() const { return bins_; }

    double neg_inf_mass = 0.0;
    double pos_inf_mass = 0.0;

    // Nearest-center bin of x; returns -1 / size() for values beyond the range.
    int quantize(double x) const;
    void add_sample(double x, double weight = 1.0);

    double total_mass() const;
    void normalize();
    // First moment; the infinity masses contribute +-llr_max.
    double mean() const;
    // Mass strictly below zero plus half the center bin plus the -inf mass.
    double mass_below_zero() const;

    bool same_grid(const LlrHistogram& other) const;

private:
    double llr_max_ = 0.0;
    double delta_ = 0.0;
    int k_ = 0;
    std::vector<double> bins_;
};

// Density of the sum of two independent LLRs. Mass pushed beyond the finite
// range lands on the infinity bins; opposite infinities cancel to the center.
LlrHistogram hist_convolve(const LlrHistogram& a, const LlrHistogram& b);

// p-fold self convolution; p = 0 gives a unit delta at zero.
LlrHistogram self_convolve_power(const LlrHistogram& f, int p);

// Precomputed quantization of the two-input check-node combine
// q = 2 atanh(tanh(a/2) tanh(b/2)) on the histogram grid.
class CheckOpTable {
public:
    CheckOpTable(double llr_max, double delta);

    bool matches(const LlrHistogram& f) const;
    LlrHistogram fold(const LlrHistogram& a, const LlrHistogram& b) const;

    // Scalar operation the table quantizes (sign/log-magnitude form).
    static double check_combine(double a, double b);

private:
    double llr_max_;
    double delta_;
    int k_;
    std::vector<std::int16_t> idx_;  // (2K+1)^2 result bins
};

// f_q: rho-mixture over check degrees i of the (i-1)-input check combine.
LlrHistogram check_node_density(const LlrHistogram& f_z, const DegreeDistribution& deg,
                                const CheckOpTable& table);

// f_z = f_tau * lambda(f_q), lambda acting as (i-1)-fold self convolutions.
LlrHistogram variable_node_density(const LlrHistogram& f_tau, const LlrHistogram& f_q,
                                   const DegreeDistribution& deg);

// Full-degree mixture weighted by node-perspective fractions. The channel
// factor f_tau is included by default; include_channel_term=false drops it.
LlrHistogram ext2_density(const LlrHistogram& f_tau, const LlrHistogram& f_q,
                          const DegreeDistribution& deg, bool include_channel_term = true);

// Error probability of a correct-LLR density (mass at 0 split evenly).
double p_iud(const LlrHistogram& f_z);

// Inverse-CDF sampler over the histogram; infinities clamp to +-llr_max.
class HistogramSampler {
public:
    explicit HistogramSampler(const LlrHistogram& f);
    double sample(Rng& rng) const;

private:
    const LlrHistogram* f_;
    std::vector<double> cdf_;
};

}  // namespace isi2d
