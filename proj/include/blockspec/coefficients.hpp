#pragma once

#include "blockspec/partition.hpp"
#include "blockspec/types.hpp"

#include <map>

namespace blockspec {

/// Fourier coefficients of a vector with respect to a partition: a sparse
/// family of per-block coefficient columns. Blocks that were never stored
/// are zero. Stored columns always have the exact block dimension.
class FourierCoefficients {
 public:
  explicit FourierCoefficients(Partition partition)
      : partition_(std::move(partition)) {}
  FourierCoefficients(Partition partition, std::map<Index, Vector> blocks);

  const Partition& partition() const { return partition_; }

  /// Stores the column of block l; the length must equal dim(l).
  void set_block(Index l, Vector column);

  bool has_block(Index l) const { return blocks_.count(l) != 0; }

  /// Column of block l; zero column if the block was never stored.
  Vector block(Index l) const;

  /// Stored blocks in ascending block order.
  const std::map<Index, Vector>& blocks() const { return blocks_; }

  /// Coefficients of the basis element e_l^k (one in slot k of block l).
  static FourierCoefficients basis_element(const Partition& partition, Index l,
                                           Index k);

 private:
  Partition partition_;
  std::map<Index, Vector> blocks_;
};

/// l2 norm of the coefficient family: the square root of the sum of squared
/// moduli of every stored entry.
double plancherel_norm(const FourierCoefficients& f);

/// Orthogonal projection onto block l: keeps only that block. Idempotent.
FourierCoefficients project_block(const FourierCoefficients& f, Index l);

}  // namespace blockspec
