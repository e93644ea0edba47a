#pragma once

#include <utility>
#include <vector>

namespace isi2d {

// Edge-perspective degree distribution pair: lambda for the variable side,
// rho for the check side. Fractions are fractions of edges.
struct DegreeDistribution {
    std::vector<std::pair<int, double>> lambda;  // (degree, fraction of edges)
    std::vector<std::pair<int, double>> rho;
    int d_v_max = 0;
    int d_c_max = 0;

    static DegreeDistribution regular(int d_v, int d_c);

    // Throws std::invalid_argument if fractions do not sum to 1 (1e-12),
    // lie outside [0,1], or degrees are below the allowed minimum
    // (1 for the variable side, 2 for the check side).
    void validate() const;

    // Node-perspective variable fractions: lambda_i/i normalized.
    std::vector<std::pair<int, double>> node_perspective_lambda() const;

    double rate() const;  // design rate 1 - sum(rho_i/i)/sum(lambda_i/i)
};

}  // namespace isi2d
