#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "isi2d/density_evolution.hpp"

namespace isi2d {

enum class ThresholdMode { te, non_te };

const char* to_string(ThresholdMode m);

struct ThresholdParams {
    double bracket_lo = 0.3;
    double bracket_hi = 1.5;
    double tol = 0.02;            // final bracket width in sigma
    bool validate_bracket = true; // run both ends before bisecting
};

struct ThresholdLeg {
    double sigma = 0.0;
    DeStatus status = DeStatus::max_rounds;
    double p_final = 0.0;
    int rounds = 0;
};

struct ThresholdResult {
    double sigma_lo = 0.0;   // largest sigma observed to converge
    double sigma_hi = 0.0;   // smallest sigma observed to stick
    double sigma = 0.0;      // bracket midpoint
    double channel_norm = 1.0;
    double sigma_normalized = 0.0;  // sigma / |H|
    ThresholdMode mode = ThresholdMode::te;
    double tol = 0.0;
    std::vector<ThresholdLeg> legs;
};

struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bisection on the DE convergence boundary. The engine's turbo flag is forced
// from `mode`. Throws BracketError when the bracket ends do not disagree.
ThresholdResult threshold_search(const ChannelMatrix& h, const DegreeDistribution& deg,
                                 ThresholdMode mode, const DeParams& de_params,
                                 const ThresholdParams& tp);

std::string threshold_report(const ThresholdResult& r);

}  // namespace isi2d
