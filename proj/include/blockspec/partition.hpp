#pragma once

#include "blockspec/types.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace blockspec {

/// A partition of a separable Hilbert space into finite-dimensional blocks,
/// H = H_0 + H_1 + ..., represented by the sequence of block dimensions.
///
/// The dimension generator may describe an infinite partition (block_count
/// empty) or a finite one. Generators must be pure: repeated queries at the
/// same index return the same value, and calls from several threads at once
/// are safe. Copies share the underlying generator.
class Partition {
 public:
  using DimFn = std::function<Index(Index)>;
  using LabelFn = std::function<std::string(Index)>;

  Partition(DimFn dims, std::optional<Index> block_count = std::nullopt,
            LabelFn label = nullptr);

  /// Finite partition with the given block dimensions.
  static Partition from_dims(std::vector<Index> dims);

  /// Partition with every block of the same dimension.
  static Partition constant(Index dim,
                            std::optional<Index> block_count = std::nullopt);

  /// Dimension d_l of block l. Throws DomainError if l is out of range or
  /// the generator returns a dimension < 1.
  Index dim(Index l) const;

  /// Number of blocks for finite partitions; empty for infinite ones.
  std::optional<Index> block_count() const { return impl_->count; }
  bool finite() const { return impl_->count.has_value(); }

  /// Display label of block l (defaults to the decimal index).
  std::string label(Index l) const;

  /// A copy of this partition restricted to the first `count` blocks.
  Partition truncated(Index count) const;

  /// True when both objects share the same underlying generator.
  bool same_object(const Partition& other) const {
    return impl_ == other.impl_;
  }

 private:
  struct Impl {
    DimFn dims;
    std::optional<Index> count;
    LabelFn label;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Checks that block l exists with equal dimension in both partitions and
/// returns that dimension; throws DimensionMismatchError otherwise.
Index common_block_dim(const Partition& a, const Partition& b, Index l);

}  // namespace blockspec
