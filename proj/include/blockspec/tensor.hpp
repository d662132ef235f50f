#pragma once

#include "blockspec/schatten.hpp"
#include "blockspec/symbol.hpp"
#include "blockspec/types.hpp"

#include <vector>

namespace blockspec {

/// A block index of a product partition: one index per factor.
using MultiIndex = std::vector<Index>;

/// Product of two or more partitions. The block at (j_1, ..., j_n) has
/// dimension d_{1,j_1} * ... * d_{n,j_n}. Multi-indices are never flattened
/// into a single sequence.
class ProductPartition {
 public:
  explicit ProductPartition(std::vector<Partition> factors);

  Index order() const { return static_cast<Index>(factors_.size()); }
  const Partition& factor(Index i) const {
    return factors_[static_cast<size_t>(i)];
  }

  Index dim(const MultiIndex& j) const;

 private:
  std::vector<Partition> factors_;
};

/// Kronecker product with the row-pair/column-pair index convention
/// out((r,s),(p,q)) = a(r,p) * b(s,q), i.e. out(r*rows(b)+s, p*cols(b)+q).
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  static_assert(std::is_same_v<typename DerivedA::Scalar,
                               typename DerivedB::Scalar>,
                "kron: factors must share a scalar type");
  using Out = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic,
                            Eigen::Dynamic>;
  Out out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index r = 0; r < a.rows(); ++r)
    for (Index p = 0; p < a.cols(); ++p)
      out.block(r * b.rows(), p * b.cols(), b.rows(), b.cols()) =
          a(r, p) * b.derived();
  return out;
}

/// Tensor product of symbols: the block at (j_1, ..., j_n) is the Kronecker
/// product of the factor blocks, evaluated lazily and left-associatively;
/// the multiplicity is the product of factor multiplicities.
class TensorSymbol {
 public:
  explicit TensorSymbol(std::vector<MatrixSymbol> factors);

  Index order() const { return static_cast<Index>(factors_.size()); }
  const MatrixSymbol& factor(Index i) const {
    return factors_[static_cast<size_t>(i)];
  }
  const ProductPartition& partition() const { return partition_; }

  Matrix block(const MultiIndex& j) const;
  std::int64_t multiplicity(const MultiIndex& j) const;

 private:
  std::vector<MatrixSymbol> factors_;
  ProductPartition partition_;
};

TensorSymbol tensor_symbols(std::vector<MatrixSymbol> factors);

/// Schatten estimate of a tensor together with its per-factor estimates.
/// The combined value is the product of factor values; converged is the
/// conjunction of factor flags, blocks_used the total scanned and
/// last_increment the worst factor increment.
struct TensorSchattenEstimate {
  SchattenEstimate combined;
  std::vector<SchattenEstimate> factors;
};

struct TensorTraceEstimate {
  TraceEstimate combined;
  std::vector<TraceEstimate> factors;
};

/// Schatten p-(quasi)norm of a tensor symbol, evaluated in product form:
/// the norm of the tensor is the product of the factor norms.
TensorSchattenEstimate tensor_schatten_norm(const TensorSymbol& ts, double p,
                                            const TruncationPolicy& t);

/// Trace of a tensor symbol: the product of the factor traces.
TensorTraceEstimate tensor_trace(const TensorSymbol& ts,
                                 const TruncationPolicy& t);

}  // namespace blockspec
