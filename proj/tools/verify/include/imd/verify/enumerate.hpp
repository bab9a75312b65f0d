#pragma once

// Brute-force oracle: walks every matching of K_N explicitly. Exponential in
// N, meant for N <= 10.

#include <cstdint>
#include <vector>

#include "imd/model.hpp"

namespace imd::verify {

/// Number of matchings of K_N with k dimers, indexed by k.
std::vector<std::uint64_t> enumerate_matchings(int N);

/// log Z_N summed one matching at a time.
double brute_force_log_partition(int N, const ModelParams& params);

}  // namespace imd::verify
