#include "blockspec/coefficients.hpp"

#include "blockspec/reduction.hpp"

#include <cmath>
#include <utility>

namespace blockspec {

FourierCoefficients::FourierCoefficients(Partition partition,
                                         std::map<Index, Vector> blocks)
    : partition_(std::move(partition)) {
  for (auto& [l, column] : blocks) set_block(l, std::move(column));
}

void FourierCoefficients::set_block(Index l, Vector column) {
  const Index d = partition_.dim(l);
  if (column.size() != d)
    throw DimensionMismatchError(
        "coefficient block " + std::to_string(l) + ": length " +
        std::to_string(column.size()) + " does not match dimension " +
        std::to_string(d));
  blocks_[l] = std::move(column);
}

Vector FourierCoefficients::block(Index l) const {
  auto it = blocks_.find(l);
  if (it != blocks_.end()) return it->second;
  return Vector::Zero(partition_.dim(l));
}

FourierCoefficients FourierCoefficients::basis_element(
    const Partition& partition, Index l, Index k) {
  const Index d = partition.dim(l);
  if (k < 0 || k >= d)
    throw DomainError("basis_element: slot " + std::to_string(k) +
                      " out of range for block of dimension " +
                      std::to_string(d));
  Vector e = Vector::Zero(d);
  e[k] = Complex(1.0, 0.0);
  FourierCoefficients f(partition);
  f.set_block(l, std::move(e));
  return f;
}

double plancherel_norm(const FourierCoefficients& f) {
  NeumaierSum sum;
  for (const auto& [l, column] : f.blocks()) sum.add(column.squaredNorm());
  return std::sqrt(sum.value());
}

FourierCoefficients project_block(const FourierCoefficients& f, Index l) {
  FourierCoefficients out(f.partition());
  auto it = f.blocks().find(l);
  if (it != f.blocks().end()) out.set_block(l, it->second);
  return out;
}

}  // namespace blockspec
