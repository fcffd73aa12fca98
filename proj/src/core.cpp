#include "bomp/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bomp/errors.hpp"

namespace bomp {

BlockLayout::BlockLayout(std::size_t num_blocks, std::size_t block_width)
    : num_blocks_(num_blocks), block_width_(block_width) {
  if (num_blocks == 0 || block_width == 0) {
    throw InvalidArgument("block layout needs M >= 1 and d >= 1");
  }
}

std::size_t BlockLayout::offset(BlockIndex index) const {
  if (!contains(index)) {
    throw InvalidArgument("block index " + std::to_string(index) +
                          " outside 1.." + std::to_string(num_blocks_));
  }
  return (index - 1) * block_width_;
}

BlockSignal::BlockSignal(BlockLayout layout, Vector values)
    : layout_(layout), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != layout_.ambient_dim()) {
    throw InvalidArgument("signal length " + std::to_string(values_.size()) +
                          " does not match layout n = " +
                          std::to_string(layout_.ambient_dim()));
  }
}

BlockSignal BlockSignal::zeros(BlockLayout layout) {
  return BlockSignal(layout, Vector::Zero(static_cast<Eigen::Index>(layout.ambient_dim())));
}

Eigen::VectorBlock<const Vector> BlockSignal::block(BlockIndex index) const {
  return values_.segment(static_cast<Eigen::Index>(layout_.offset(index)),
                         static_cast<Eigen::Index>(layout_.block_width()));
}

BlockedMatrix::BlockedMatrix(BlockLayout layout, Matrix entries)
    : layout_(layout), entries_(std::move(entries)) {
  if (entries_.rows() == 0) {
    throw InvalidArgument("matrix must have at least one row");
  }
  if (static_cast<std::size_t>(entries_.cols()) != layout_.ambient_dim()) {
    throw InvalidArgument("matrix has " + std::to_string(entries_.cols()) +
                          " columns, layout needs " +
                          std::to_string(layout_.ambient_dim()));
  }
}

Eigen::Block<const Matrix, Eigen::Dynamic, Eigen::Dynamic, true> BlockedMatrix::block(BlockIndex index) const {
  return entries_.middleCols(static_cast<Eigen::Index>(layout_.offset(index)),
                             static_cast<Eigen::Index>(layout_.block_width()));
}

SensingProblem::SensingProblem(BlockedMatrix matrix, Vector observation,
                               double noise_bound)
    : matrix_(std::move(matrix)),
      observation_(std::move(observation)),
      noise_bound_(noise_bound) {
  if (static_cast<std::size_t>(observation_.size()) != matrix_.rows()) {
    throw InvalidArgument("observation length " +
                          std::to_string(observation_.size()) +
                          " does not match matrix rows " +
                          std::to_string(matrix_.rows()));
  }
  if (!(noise_bound_ >= 0.0)) {
    throw InvalidArgument("noise bound must be nonnegative");
  }
}

Vector block_norms(const BlockSignal& x) {
  const auto& layout = x.layout();
  Vector norms(static_cast<Eigen::Index>(layout.num_blocks()));
  for (BlockIndex l = 1; l <= layout.num_blocks(); ++l) {
    norms(static_cast<Eigen::Index>(l - 1)) = x.block(l).norm();
  }
  return norms;
}

double mixed_norm(const BlockSignal& x, MixedNorm p) {
  switch (p) {
    case MixedNorm::kL1:
      return block_norms(x).sum();
    case MixedNorm::kL2:
      return block_norms(x).norm();
    case MixedNorm::kLinf:
      return block_norms(x).maxCoeff();
  }
  throw InvalidArgument("unsupported mixed norm");
}

MixedNorm parse_mixed_norm(std::string_view p) {
  if (p == "1") return MixedNorm::kL1;
  if (p == "2") return MixedNorm::kL2;
  if (p == "inf" || p == "infinity") return MixedNorm::kLinf;
  throw InvalidArgument("unsupported mixed norm p = " + std::string(p) +
                        " (expected 1, 2 or inf)");
}

BlockSet block_support(const BlockSignal& x, double zero_tol) {
  if (!(zero_tol >= 0.0)) {
    throw InvalidArgument("zero_tol must be nonnegative");
  }
  BlockSet support;
  for (BlockIndex l = 1; l <= x.layout().num_blocks(); ++l) {
    if (x.block(l).norm() > zero_tol) support.push_back(l);
  }
  return support;
}

BlockSet normalize_block_set(const BlockLayout& layout,
                             std::span<const BlockIndex> blocks) {
  BlockSet sorted(blocks.begin(), blocks.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!layout.contains(sorted[i])) {
      throw InvalidArgument("block index " + std::to_string(sorted[i]) +
                            " outside 1.." + std::to_string(layout.num_blocks()));
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw InvalidArgument("duplicate block index " + std::to_string(sorted[i]));
    }
  }
  return sorted;
}

Matrix extract_blocks(const BlockedMatrix& a, std::span<const BlockIndex> blocks) {
  const BlockSet sorted = normalize_block_set(a.layout(), blocks);
  const auto d = static_cast<Eigen::Index>(a.layout().block_width());
  Matrix out(a.entries().rows(), d * static_cast<Eigen::Index>(sorted.size()));
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.middleCols(static_cast<Eigen::Index>(i) * d, d) = a.block(sorted[i]);
  }
  return out;
}

Vector gather_blocks(const BlockLayout& layout, const Vector& v,
                     std::span<const BlockIndex> blocks) {
  const auto d = static_cast<Eigen::Index>(layout.block_width());
  Vector out(d * static_cast<Eigen::Index>(blocks.size()));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    out.segment(static_cast<Eigen::Index>(i) * d, d) =
        v.segment(static_cast<Eigen::Index>(layout.offset(blocks[i])), d);
  }
  return out;
}

BlockSignal scatter_blocks(const BlockLayout& layout, const Vector& coefficients,
                           std::span<const BlockIndex> blocks) {
  const auto d = static_cast<Eigen::Index>(layout.block_width());
  if (coefficients.size() != d * static_cast<Eigen::Index>(blocks.size())) {
    throw InvalidArgument("coefficient length does not match block count");
  }
  Vector values = Vector::Zero(static_cast<Eigen::Index>(layout.ambient_dim()));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    values.segment(static_cast<Eigen::Index>(layout.offset(blocks[i])), d) =
        coefficients.segment(static_cast<Eigen::Index>(i) * d, d);
  }
  return BlockSignal(layout, std::move(values));
}

}  // namespace bomp
