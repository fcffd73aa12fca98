#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace bomp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Block index, 1-based: block l covers coordinates [(l-1)d, l*d).
using BlockIndex = std::size_t;

/// Ascending, duplicate-free list of 1-based block indices.
using BlockSet = std::vector<BlockIndex>;

inline constexpr double kDefaultZeroTol = 1e-10;

/// Uniform partition of n = M*d coordinates into M blocks of width d.
class BlockLayout {
 public:
  BlockLayout(std::size_t num_blocks, std::size_t block_width);

  std::size_t num_blocks() const { return num_blocks_; }
  std::size_t block_width() const { return block_width_; }
  std::size_t ambient_dim() const { return num_blocks_ * block_width_; }

  /// First coordinate (0-based) of block `index`.
  std::size_t offset(BlockIndex index) const;

  bool contains(BlockIndex index) const {
    return index >= 1 && index <= num_blocks_;
  }

  bool operator==(const BlockLayout&) const = default;

 private:
  std::size_t num_blocks_;
  std::size_t block_width_;
};

/// A length-n vector viewed block by block.
class BlockSignal {
 public:
  BlockSignal(BlockLayout layout, Vector values);

  /// All-zero signal on `layout`.
  static BlockSignal zeros(BlockLayout layout);

  const BlockLayout& layout() const { return layout_; }
  const Vector& values() const { return values_; }

  Eigen::VectorBlock<const Vector> block(BlockIndex index) const;

 private:
  BlockLayout layout_;
  Vector values_;
};

/// An m x n matrix whose columns are grouped by a BlockLayout.
class BlockedMatrix {
 public:
  BlockedMatrix(BlockLayout layout, Matrix entries);

  const BlockLayout& layout() const { return layout_; }
  const Matrix& entries() const { return entries_; }
  std::size_t rows() const { return static_cast<std::size_t>(entries_.rows()); }

  /// The m x d column block A[index].
  Eigen::Block<const Matrix, Eigen::Dynamic, Eigen::Dynamic, true> block(BlockIndex index) const;

 private:
  BlockLayout layout_;
  Matrix entries_;
};

/// y = A x + e with ||e||_2 <= noise_bound.
class SensingProblem {
 public:
  SensingProblem(BlockedMatrix matrix, Vector observation, double noise_bound);

  const BlockedMatrix& matrix() const { return matrix_; }
  const Vector& observation() const { return observation_; }
  double noise_bound() const { return noise_bound_; }

 private:
  BlockedMatrix matrix_;
  Vector observation_;
  double noise_bound_;
};

/// y = A x + e together with the planted x, e and T = supp(x).
struct PlantedInstance {
  SensingProblem problem;
  BlockSignal truth;
  Vector noise;
  BlockSet support;
};

enum class MixedNorm { kL1, kL2, kLinf };

/// Euclidean norm of each block, length M.
Vector block_norms(const BlockSignal& x);

/// l_p norm of block_norms(x) for p in {1, 2, inf}.
double mixed_norm(const BlockSignal& x, MixedNorm p);

/// Parses "1", "2", "inf" into a MixedNorm; throws InvalidArgument otherwise.
MixedNorm parse_mixed_norm(std::string_view p);

/// Blocks whose Euclidean norm exceeds zero_tol, ascending.
BlockSet block_support(const BlockSignal& x, double zero_tol = kDefaultZeroTol);

/// Columns of the listed blocks, concatenated in ascending block order.
/// Throws InvalidArgument on an out-of-range or repeated index.
Matrix extract_blocks(const BlockedMatrix& a, std::span<const BlockIndex> blocks);

/// Sorted copy of `blocks`; throws InvalidArgument on out-of-range or
/// duplicate entries.
BlockSet normalize_block_set(const BlockLayout& layout,
                             std::span<const BlockIndex> blocks);

/// Coordinates of the listed blocks of `v`, concatenated in order.
Vector gather_blocks(const BlockLayout& layout, const Vector& v,
                     std::span<const BlockIndex> blocks);

/// Signal that is zero outside `blocks` and equal to `coefficients` (block
/// by block, in the order of `blocks`) on them.
BlockSignal scatter_blocks(const BlockLayout& layout, const Vector& coefficients,
                           std::span<const BlockIndex> blocks);

}  // namespace bomp
