#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace isi2d {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Jacobian logarithm: log(e^x + e^y) = max(x,y) + log(1 + e^-|x-y|).
// Exact form, no max-log shortcut. -inf acts as an absent term.
inline double max_star(double x, double y) {
    if (x == kNegInf) return y;
    if (y == kNegInf) return x;
    const double hi = x > y ? x : y;
    return hi + std::log1p(std::exp(-std::fabs(x - y)));
}

inline double max_star_fold(std::span<const double> xs) {
    double acc = kNegInf;
    for (double x : xs) acc = max_star(acc, x);
    return acc;
}

}  // namespace isi2d
