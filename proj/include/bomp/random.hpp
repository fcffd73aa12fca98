#pragma once

#include <cstdint>
#include <random>

#include "bomp/core.hpp"

namespace bomp {

/// Engine keyed by (seed, stream). Streams are independent of each other
/// and of the order in which they are created, so trial i draws the same
/// numbers no matter how trials are split across workers.
std::mt19937_64 keyed_engine(std::uint64_t seed, std::uint64_t stream);

/// i.i.d. N(0, stddev^2) entries.
Matrix gaussian_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                       double stddev = 1.0);
Vector gaussian_vector(std::mt19937_64& rng, Eigen::Index size, double stddev = 1.0);

/// Uniform integer in [lo, hi].
std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi);

/// Uniform size-k subset of {1..n}, ascending.
BlockSet uniform_subset(std::mt19937_64& rng, std::size_t n, std::size_t k);

}  // namespace bomp
