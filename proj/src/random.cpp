#include "bomp/random.hpp"

#include <algorithm>
#include <numeric>

namespace bomp {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 keyed_engine(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

Matrix gaussian_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                       double stddev) {
  std::normal_distribution<double> normal(0.0, stddev);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

Vector gaussian_vector(std::mt19937_64& rng, Eigen::Index size, double stddev) {
  std::normal_distribution<double> normal(0.0, stddev);
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = normal(rng);
  return v;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

BlockSet uniform_subset(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  BlockSet pool(n);
  std::iota(pool.begin(), pool.end(), BlockIndex{1});
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[uniform_index(rng, i, n - 1)]);
  }
  BlockSet subset(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(subset.begin(), subset.end());
  return subset;
}

}  // namespace bomp
