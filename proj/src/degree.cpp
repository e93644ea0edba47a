#include "isi2d/degree.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace isi2d {

DegreeDistribution DegreeDistribution::regular(int d_v, int d_c) {
    DegreeDistribution d;
    d.lambda = {{d_v, 1.0}};
    d.rho = {{d_c, 1.0}};
    d.d_v_max = d_v;
    d.d_c_max = d_c;
    d.validate();
    return d;
}

void DegreeDistribution::validate() const {
    auto check_side = [](const std::vector<std::pair<int, double>>& side, int min_degree,
                         int max_degree, const char* name) {
        double sum = 0.0;
        for (const auto& [deg, frac] : side) {
            if (deg < min_degree)
                throw std::invalid_argument(std::string(name) + ": degree below minimum");
            if (deg > max_degree)
                throw std::invalid_argument(std::string(name) + ": degree above declared maximum");
            if (frac < 0.0 || frac > 1.0)
                throw std::invalid_argument(std::string(name) + ": fraction outside [0,1]");
            sum += frac;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw std::invalid_argument(std::string(name) + ": fractions do not sum to 1");
    };
    check_side(lambda, 1, d_v_max, "lambda");
    check_side(rho, 2, d_c_max, "rho");
}

std::vector<std::pair<int, double>> DegreeDistribution::node_perspective_lambda() const {
    double denom = 0.0;
    for (const auto& [i, li] : lambda) denom += li / i;
    std::vector<std::pair<int, double>> out;
    out.reserve(lambda.size());
    for (const auto& [i, li] : lambda) out.emplace_back(i, (li / i) / denom);
    return out;
}

double DegreeDistribution::rate() const {
    double lv = 0.0, lc = 0.0;
    for (const auto& [i, li] : lambda) lv += li / i;
    for (const auto& [i, ri] : rho) lc += ri / i;
    return 1.0 - lc / lv;
}

}  // namespace isi2d
