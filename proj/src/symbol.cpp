#include "blockspec/symbol.hpp"

#include "blockspec/reduction.hpp"

#include <cmath>
#include <utility>

namespace blockspec {

namespace {

constexpr double kUnitarityTol = 1e-12;

}  // namespace

MatrixSymbol::MatrixSymbol(Partition partition, BlockFn block,
                           StructureHint hint, MultiplicityFn multiplicity)
    : partition_(std::move(partition)),
      block_(std::move(block)),
      hint_(hint),
      multiplicity_(std::move(multiplicity)) {
  if (!block_) throw DomainError("MatrixSymbol: block generator is empty");
}

MatrixSymbol MatrixSymbol::from_blocks(std::vector<Matrix> blocks,
                                       std::vector<std::int64_t> multiplicity) {
  std::vector<Index> dims;
  dims.reserve(blocks.size());
  for (const auto& b : blocks) {
    if (b.rows() != b.cols())
      throw DimensionMismatchError("from_blocks: block is not square");
    dims.push_back(b.rows());
  }
  return from_blocks(Partition::from_dims(std::move(dims)), std::move(blocks),
                     std::move(multiplicity));
}

MatrixSymbol MatrixSymbol::from_blocks(Partition partition,
                                       std::vector<Matrix> blocks,
                                       std::vector<std::int64_t> multiplicity) {
  if (!multiplicity.empty() && multiplicity.size() != blocks.size())
    throw DimensionMismatchError(
        "from_blocks: multiplicity list length does not match block count");
  for (std::int64_t m : multiplicity)
    if (m < 1) throw DomainError("from_blocks: multiplicity must be >= 1");

  auto stored = std::make_shared<Stored>();
  stored->blocks = std::move(blocks);
  stored->multiplicity = std::move(multiplicity);

  MatrixSymbol s(
      std::move(partition),
      [stored](Index l) { return stored->blocks.at(static_cast<size_t>(l)); },
      StructureHint::general,
      stored->multiplicity.empty()
          ? MultiplicityFn()
          : MultiplicityFn([stored](Index l) {
              return stored->multiplicity.at(static_cast<size_t>(l));
            }));
  s.stored_ = std::move(stored);
  return s;
}

MatrixSymbol MatrixSymbol::identity(Partition partition) {
  Partition p = partition;
  return MatrixSymbol(
      partition, [p](Index l) { return Matrix::Identity(p.dim(l), p.dim(l)); },
      StructureHint::scalar);
}

MatrixSymbol MatrixSymbol::scalar(Partition partition,
                                  std::function<Complex(Index)> value,
                                  MultiplicityFn multiplicity) {
  if (!value) throw DomainError("scalar: value generator is empty");
  Partition p = partition;
  return MatrixSymbol(
      partition,
      [p, value](Index l) {
        const Index d = p.dim(l);
        return Matrix(value(l) * Matrix::Identity(d, d));
      },
      StructureHint::scalar, std::move(multiplicity));
}

Matrix MatrixSymbol::block(Index l) const {
  const Index d = partition_.dim(l);
  Matrix b = block_(l);
  if (b.rows() != d || b.cols() != d)
    throw DimensionMismatchError(
        "symbol block " + std::to_string(l) + ": shape " +
        std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
        " does not match block dimension " + std::to_string(d));
  return b;
}

std::int64_t MatrixSymbol::multiplicity(Index l) const {
  if (!multiplicity_) return 1;
  const std::int64_t m = multiplicity_(l);
  if (m < 1)
    throw DomainError("multiplicity of block " + std::to_string(l) +
                      " must be >= 1");
  return m;
}

BlockUnitary::BlockUnitary(Partition partition, BlockFn block)
    : partition_(std::move(partition)), block_(std::move(block)) {
  if (!block_) throw DomainError("BlockUnitary: block generator is empty");
}

BlockUnitary BlockUnitary::identity(Partition partition) {
  Partition p = partition;
  return BlockUnitary(partition, [p](Index l) {
    return Matrix::Identity(p.dim(l), p.dim(l));
  });
}

Matrix BlockUnitary::block(Index l) const {
  const Index d = partition_.dim(l);
  Matrix u = block_(l);
  if (u.rows() != d || u.cols() != d)
    throw DimensionMismatchError("unitary block " + std::to_string(l) +
                                 ": wrong shape");
  const double defect =
      (u * u.adjoint() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (defect > kUnitarityTol)
    throw NonUnitaryError("block " + std::to_string(l) +
                          " fails the unitarity check (defect " +
                          std::to_string(defect) + ")");
  return u;
}

FourierCoefficients apply_symbol(const MatrixSymbol& s,
                                 const FourierCoefficients& f) {
  FourierCoefficients out(f.partition());
  for (const auto& [l, column] : f.blocks()) {
    common_block_dim(s.partition(), f.partition(), l);
    out.set_block(l, s.block(l) * column);
  }
  return out;
}

MatrixSymbol symbol_of_operator(const OperatorAction& action,
                                const Partition& partition, Index l_max,
                                double leak_tol) {
  if (!action) throw DomainError("symbol_of_operator: empty action");
  if (l_max < 0) throw DomainError("symbol_of_operator: negative l_max");
  Index blocks = l_max + 1;
  if (partition.block_count())
    blocks = std::min(blocks, *partition.block_count());

  std::vector<Matrix> sigma(static_cast<size_t>(blocks));
  std::vector<std::string> failures(static_cast<size_t>(blocks));

  parallel_for(blocks, [&](Index l) {
    const Index d = partition.dim(l);
    Matrix block(d, d);
    for (Index k = 0; k < d; ++k) {
      const FourierCoefficients probe =
          FourierCoefficients::basis_element(partition, l, k);
      const FourierCoefficients image = action(probe);
      NeumaierSum leak;
      for (const auto& [j, column] : image.blocks())
        if (j != l) leak.add(column.squaredNorm());
      if (std::sqrt(leak.value()) > leak_tol) {
        failures[static_cast<size_t>(l)] =
            "operator leaks mass outside block " + std::to_string(l) +
            " (leak " + std::to_string(std::sqrt(leak.value())) + ")";
        return;
      }
      block.col(k) = image.block(l);
    }
    sigma[static_cast<size_t>(l)] = std::move(block);
  });

  for (Index l = 0; l < blocks; ++l)
    if (!failures[static_cast<size_t>(l)].empty())
      throw NonInvarianceError(failures[static_cast<size_t>(l)], l);

  return MatrixSymbol::from_blocks(partition.truncated(blocks),
                                   std::move(sigma));
}

MatrixSymbol map_diagonal(const MatrixSymbol& s,
                          std::function<Complex(Complex)> fn) {
  if (!fn) throw DomainError("map_diagonal: empty function");
  if (s.structure_hint() != StructureHint::diagonal &&
      s.structure_hint() != StructureHint::scalar)
    throw DomainError("map_diagonal: symbol is not known to be diagonal");
  MatrixSymbol sym = s;
  return MatrixSymbol(
      s.partition(),
      [sym, fn](Index l) {
        Matrix b = sym.block(l);
        for (Index i = 0; i < b.rows(); ++i) b(i, i) = fn(b(i, i));
        return b;
      },
      StructureHint::diagonal, [sym](Index l) { return sym.multiplicity(l); });
}

MatrixSymbol conjugate_by_unitary(const MatrixSymbol& s,
                                  const BlockUnitary& u) {
  MatrixSymbol sym = s;
  BlockUnitary uni = u;
  const StructureHint hint = s.structure_hint() == StructureHint::scalar
                                 ? StructureHint::scalar
                                 : StructureHint::general;
  return MatrixSymbol(
      s.partition(),
      [sym, uni](Index l) {
        common_block_dim(sym.partition(), uni.partition(), l);
        const Matrix U = uni.block(l);
        return Matrix(U * sym.block(l) * U.adjoint());
      },
      hint, [sym](Index l) { return sym.multiplicity(l); });
}

}  // namespace blockspec
