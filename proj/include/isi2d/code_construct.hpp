#pragma once

#include <cstdint>

#include "isi2d/parity_check.hpp"

namespace isi2d {

// Random regular (d_v, d_c) construction: no double edges, and no 4-cycles
// when girth_min = 6. Deterministic for a fixed seed.
//
// Preconditions: N*d_v divisible by d_c, girth_min in {4, 6}.
// Throws std::invalid_argument on bad parameters and std::runtime_error when
// construction keeps failing after bounded retries (infeasible parameters).
ParityCheckMatrix construct_regular_code(int n, int d_v, int d_c, int girth_min,
                                         std::uint64_t seed);

}  // namespace isi2d
