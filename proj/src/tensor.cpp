#include "blockspec/tensor.hpp"

#include <algorithm>
#include <utility>

namespace blockspec {

ProductPartition::ProductPartition(std::vector<Partition> factors)
    : factors_(std::move(factors)) {
  if (factors_.size() < 2)
    throw DomainError("ProductPartition: need at least 2 factors");
}

Index ProductPartition::dim(const MultiIndex& j) const {
  if (static_cast<Index>(j.size()) != order())
    throw DimensionMismatchError(
        "ProductPartition: multi-index length does not match the order");
  Index d = 1;
  for (Index i = 0; i < order(); ++i)
    d *= factor(i).dim(j[static_cast<size_t>(i)]);
  return d;
}

namespace {

std::vector<Partition> factor_partitions(
    const std::vector<MatrixSymbol>& factors) {
  std::vector<Partition> parts;
  parts.reserve(factors.size());
  for (const auto& f : factors) parts.push_back(f.partition());
  return parts;
}

}  // namespace

TensorSymbol::TensorSymbol(std::vector<MatrixSymbol> factors)
    : factors_(std::move(factors)), partition_(factor_partitions(factors_)) {}

Matrix TensorSymbol::block(const MultiIndex& j) const {
  if (static_cast<Index>(j.size()) != order())
    throw DimensionMismatchError(
        "TensorSymbol: multi-index length does not match the order");
  Matrix out = factors_[0].block(j[0]);
  for (Index i = 1; i < order(); ++i)
    out = kron(out, factors_[static_cast<size_t>(i)].block(
                        j[static_cast<size_t>(i)]));
  return out;
}

std::int64_t TensorSymbol::multiplicity(const MultiIndex& j) const {
  if (static_cast<Index>(j.size()) != order())
    throw DimensionMismatchError(
        "TensorSymbol: multi-index length does not match the order");
  std::int64_t m = 1;
  for (Index i = 0; i < order(); ++i)
    m *= factors_[static_cast<size_t>(i)].multiplicity(
        j[static_cast<size_t>(i)]);
  return m;
}

TensorSymbol tensor_symbols(std::vector<MatrixSymbol> factors) {
  if (factors.size() < 2)
    throw DomainError("tensor_symbols: need at least 2 factors");
  return TensorSymbol(std::move(factors));
}

TensorSchattenEstimate tensor_schatten_norm(const TensorSymbol& ts, double p,
                                            const TruncationPolicy& t) {
  TensorSchattenEstimate est;
  est.combined.p = p;
  est.combined.value = 1.0;
  est.combined.converged = true;
  for (Index i = 0; i < ts.order(); ++i) {
    SchattenEstimate fe = schatten_norm(ts.factor(i), p, t);
    est.combined.value *= fe.value;
    est.combined.blocks_used += fe.blocks_used;
    est.combined.last_increment =
        std::max(est.combined.last_increment, fe.last_increment);
    est.combined.converged = est.combined.converged && fe.converged;
    est.factors.push_back(std::move(fe));
  }
  return est;
}

TensorTraceEstimate tensor_trace(const TensorSymbol& ts,
                                 const TruncationPolicy& t) {
  TensorTraceEstimate est;
  est.combined.value = Complex(1.0, 0.0);
  est.combined.converged = true;
  for (Index i = 0; i < ts.order(); ++i) {
    TraceEstimate fe = trace(ts.factor(i), t);
    est.combined.value *= fe.value;
    est.combined.blocks_used += fe.blocks_used;
    est.combined.last_increment =
        std::max(est.combined.last_increment, fe.last_increment);
    est.combined.converged = est.combined.converged && fe.converged;
    est.factors.push_back(std::move(fe));
  }
  return est;
}

}  // namespace blockspec
