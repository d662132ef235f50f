#pragma once

#include "blockspec/coefficients.hpp"
#include "blockspec/partition.hpp"
#include "blockspec/types.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace blockspec {

/// Structural knowledge about the blocks of a symbol, used for fast paths.
enum class StructureHint { general, diagonal, scalar };

/// The matrix symbol of a block-diagonal (invariant) operator: a family
/// l -> sigma(l) of d_l x d_l matrices over a partition.
///
/// The optional multiplicity assigns each block a positive integer weight,
/// the number of identical copies of that block inside the full operator.
/// Multiplicities enter spectral functionals (Schatten sums, traces,
/// singular spectra) but not the coefficient-space action, which acts on a
/// single copy. Block generators must be pure and thread-safe; symbols are
/// immutable.
class MatrixSymbol {
 public:
  using BlockFn = std::function<Matrix(Index)>;
  using MultiplicityFn = std::function<std::int64_t(Index)>;

  MatrixSymbol(Partition partition, BlockFn block,
               StructureHint hint = StructureHint::general,
               MultiplicityFn multiplicity = nullptr);

  /// Explicit finite symbol; the partition has exactly blocks.size() blocks
  /// whose dimensions are taken from the stored matrices.
  static MatrixSymbol from_blocks(std::vector<Matrix> blocks,
                                  std::vector<std::int64_t> multiplicity = {});

  /// Explicit finite symbol over a given (finite or truncated) partition.
  static MatrixSymbol from_blocks(Partition partition,
                                  std::vector<Matrix> blocks,
                                  std::vector<std::int64_t> multiplicity = {});

  static MatrixSymbol identity(Partition partition);

  /// Scalar symbol: block l is value(l) times the identity on block l.
  static MatrixSymbol scalar(Partition partition,
                             std::function<Complex(Index)> value,
                             MultiplicityFn multiplicity = nullptr);

  const Partition& partition() const { return partition_; }
  StructureHint structure_hint() const { return hint_; }

  /// Block l; the shape is validated against the partition.
  Matrix block(Index l) const;

  /// Weight of block l (>= 1).
  std::int64_t multiplicity(Index l) const;

  /// For symbols built via from_blocks: the stored matrices, else empty.
  const std::vector<Matrix>* explicit_blocks() const {
    return stored_ ? &stored_->blocks : nullptr;
  }
  const std::vector<std::int64_t>* explicit_multiplicities() const {
    return stored_ ? &stored_->multiplicity : nullptr;
  }

 private:
  struct Stored {
    std::vector<Matrix> blocks;
    std::vector<std::int64_t> multiplicity;
  };

  Partition partition_;
  BlockFn block_;
  StructureHint hint_;
  MultiplicityFn multiplicity_;
  std::shared_ptr<const Stored> stored_;
};

/// A block-diagonal change of basis: a family of unitary blocks over a
/// partition. Unitarity is validated per block when used, with tolerance
/// 1e-12 on max |U U* - I|.
class BlockUnitary {
 public:
  using BlockFn = std::function<Matrix(Index)>;

  BlockUnitary(Partition partition, BlockFn block);
  static BlockUnitary identity(Partition partition);

  const Partition& partition() const { return partition_; }

  /// Unitary block l; throws NonUnitaryError when the check fails.
  Matrix block(Index l) const;

 private:
  Partition partition_;
  BlockFn block_;
};

/// Action of a symbol on coefficients: output block l is sigma(l) times the
/// input block l. Blocks absent from f stay absent. Per-block dimensions of
/// the two partitions must agree on every touched block.
FourierCoefficients apply_symbol(const MatrixSymbol& s,
                                 const FourierCoefficients& f);

using OperatorAction =
    std::function<FourierCoefficients(const FourierCoefficients&)>;

/// Recovers the matrix symbol of a black-box block-preserving operator by
/// probing basis coefficients: column k of sigma(l) is the l-block of the
/// action applied to e_l^k, for every l <= l_max. If the action leaks mass
/// outside the probed block beyond leak_tol, a NonInvarianceError naming
/// the block is raised. The result is an explicit symbol over the partition
/// truncated to l_max + 1 blocks.
MatrixSymbol symbol_of_operator(const OperatorAction& action,
                                const Partition& partition, Index l_max,
                                double leak_tol = 1e-10);

/// Symbol of the conjugated operator: l -> U(l) sigma(l) U(l)*. Per-block
/// singular values are preserved.
MatrixSymbol conjugate_by_unitary(const MatrixSymbol& s,
                                  const BlockUnitary& u);

/// Elementwise transform of a diagonal symbol: applies fn to every diagonal
/// entry of every block (e.g. to form negative powers of a diagonal
/// operator family). Multiplicities carry over. Rejects symbols without a
/// diagonal or scalar structure hint.
MatrixSymbol map_diagonal(const MatrixSymbol& s,
                          std::function<Complex(Complex)> fn);

}  // namespace blockspec
