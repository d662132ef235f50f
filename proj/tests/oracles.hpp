// Test-side oracles: independent reference computations the suites check
// the library against. Everything here deliberately goes through a
// different computational route than the implementation (dense assembly,
// Gram matrices, direct multi-index sums, finite differences, discrete
// Fourier transforms).
#pragma once

#include "blockspec/coefficients.hpp"
#include "blockspec/dixmier.hpp"
#include "blockspec/symbol.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracles {

using blockspec::Complex;
using blockspec::Index;
using blockspec::Matrix;
using blockspec::RealVector;
using blockspec::Vector;

using Rng = std::mt19937_64;

inline Matrix random_matrix(Rng& rng, Index rows, Index cols) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = Complex(dist(rng), dist(rng));
  return m;
}

inline Vector random_vector(Rng& rng, Index n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = Complex(dist(rng), dist(rng));
  return v;
}

inline Matrix random_unitary(Rng& rng, Index n) {
  const Matrix m = random_matrix(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  return q;
}

/// Random explicit symbol with the given number of blocks and a dimension
/// bound; optionally with random multiplicities up to mult_max.
inline blockspec::MatrixSymbol random_symbol(Rng& rng, Index blocks,
                                             Index max_dim,
                                             std::int64_t mult_max = 1) {
  std::uniform_int_distribution<Index> dim_dist(1, max_dim);
  std::uniform_int_distribution<std::int64_t> mult_dist(1, mult_max);
  std::vector<Matrix> mats;
  std::vector<std::int64_t> mult;
  for (Index l = 0; l < blocks; ++l) {
    const Index d = dim_dist(rng);
    mats.push_back(random_matrix(rng, d, d));
    mult.push_back(mult_dist(rng));
  }
  if (mult_max <= 1) mult.clear();
  return blockspec::MatrixSymbol::from_blocks(std::move(mats),
                                              std::move(mult));
}

/// Dense block-diagonal assembly of an explicit symbol, each block repeated
/// multiplicity times.
inline Matrix assemble_dense(const blockspec::MatrixSymbol& s) {
  const auto* blocks = s.explicit_blocks();
  Index total = 0;
  for (size_t l = 0; l < blocks->size(); ++l)
    total += (*blocks)[l].rows() * s.multiplicity(static_cast<Index>(l));
  Matrix dense = Matrix::Zero(total, total);
  Index at = 0;
  for (size_t l = 0; l < blocks->size(); ++l) {
    const Matrix& b = (*blocks)[l];
    for (std::int64_t c = 0; c < s.multiplicity(static_cast<Index>(l)); ++c) {
      dense.block(at, at, b.rows(), b.rows()) = b;
      at += b.rows();
    }
  }
  return dense;
}

/// Flattens stored coefficient blocks into one column (ascending block
/// order).
inline Vector flatten(const blockspec::FourierCoefficients& f) {
  Index total = 0;
  for (const auto& [l, column] : f.blocks()) total += column.size();
  Vector flat(total);
  Index at = 0;
  for (const auto& [l, column] : f.blocks()) {
    flat.segment(at, column.size()) = column;
    at += column.size();
  }
  return flat;
}

/// Singular values via the Gram matrix: sqrt of the eigenvalues of m* m,
/// descending. Independent of the SVD the library uses.
inline RealVector gram_singular_values(const Matrix& m) {
  const Matrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  RealVector v = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return v.reverse();
}

/// Reference Kronecker product by an explicit quadruple loop.
inline Matrix kron_ref(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index r = 0; r < a.rows(); ++r)
    for (Index s = 0; s < b.rows(); ++s)
      for (Index p = 0; p < a.cols(); ++p)
        for (Index q = 0; q < b.cols(); ++q)
          out(r * b.rows() + s, p * b.cols() + q) = a(r, p) * b(s, q);
  return out;
}

/// Direct multi-index Schatten power sum for a pair of explicit symbols:
/// sum over all (j, k) of mult * sum s_i(kron(a_j, b_k))^p, returning the
/// 1/p-th root. The per-multi-index singular values are computed from the
/// materialized Kronecker block.
inline double direct_pair_schatten(const blockspec::MatrixSymbol& a,
                                   const blockspec::MatrixSymbol& b,
                                   double p) {
  const auto& ab = *a.explicit_blocks();
  const auto& bb = *b.explicit_blocks();
  long double sum = 0.0L;
  for (size_t j = 0; j < ab.size(); ++j) {
    for (size_t k = 0; k < bb.size(); ++k) {
      const Matrix block = kron_ref(ab[j], bb[k]);
      const RealVector sv = gram_singular_values(block);
      long double part = 0.0L;
      for (Index i = 0; i < sv.size(); ++i)
        part += std::pow(static_cast<long double>(sv[i]),
                         static_cast<long double>(p));
      sum += part * a.multiplicity(static_cast<Index>(j)) *
             b.multiplicity(static_cast<Index>(k));
    }
  }
  return static_cast<double>(
      std::pow(sum, 1.0L / static_cast<long double>(p)));
}

/// Direct multi-index trace for explicit factors: sum over multi-indices of
/// mult * tr(kron of blocks), by materializing each Kronecker block.
inline Complex direct_trace(const std::vector<blockspec::MatrixSymbol>& fs) {
  std::vector<size_t> counts;
  for (const auto& f : fs) counts.push_back(f.explicit_blocks()->size());
  std::vector<size_t> idx(fs.size(), 0);
  Complex sum(0, 0);
  while (true) {
    Matrix block = (*fs[0].explicit_blocks())[idx[0]];
    std::int64_t mult = fs[0].multiplicity(static_cast<Index>(idx[0]));
    for (size_t i = 1; i < fs.size(); ++i) {
      block = kron_ref(block, (*fs[i].explicit_blocks())[idx[i]]);
      mult *= fs[i].multiplicity(static_cast<Index>(idx[i]));
    }
    sum += static_cast<double>(mult) * block.trace();
    size_t i = fs.size();
    while (i > 0) {
      --i;
      if (++idx[i] < counts[i]) break;
      idx[i] = 0;
      if (i == 0) return sum;
    }
  }
}

/// Harmonic-oscillator levels by second-order finite differences with
/// Richardson extrapolation over two grids; independent of the sine-basis
/// Galerkin route.
inline std::vector<double> fd_harmonic_levels(Index count, double extent,
                                              Index grid) {
  auto solve = [&](Index g) {
    const double h = 2.0 * extent / static_cast<double>(g);
    const Index n = g - 1;
    blockspec::RealMatrix t = blockspec::RealMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      const double x = -extent + static_cast<double>(i + 1) * h;
      t(i, i) = 2.0 / (h * h) + x * x;
      if (i + 1 < n) {
        t(i, i + 1) = -1.0 / (h * h);
        t(i + 1, i) = -1.0 / (h * h);
      }
    }
    Eigen::SelfAdjointEigenSolver<blockspec::RealMatrix> solver(
        t, Eigen::EigenvaluesOnly);
    return std::vector<double>(solver.eigenvalues().data(),
                               solver.eigenvalues().data() + count);
  };
  const auto coarse = solve(grid);
  const auto fine = solve(2 * grid);
  std::vector<double> out(static_cast<size_t>(count));
  for (Index m = 0; m < count; ++m)
    out[static_cast<size_t>(m)] =
        (4.0 * fine[static_cast<size_t>(m)] - coarse[static_cast<size_t>(m)]) /
        3.0;
  return out;
}

/// Applies T_a beta(D) to Fourier coefficients v (indices -J..J) through
/// physical space: multiplier on the Fourier side, inverse DFT to samples,
/// multiplication by a(x), DFT back, restricted to |j| <= J.
inline Vector dft_apply(const blockspec::SeparableSymbol& s, const Vector& v,
                        long J) {
  const long band = J + s.a().degree();
  const long M = 2 * band + 1;  // enough samples for the product band
  Vector w(2 * J + 1);
  for (long k = -J; k <= J; ++k) w[k + J] = v[k + J] * s.beta()(k);

  Vector samples(M);
  for (long g = 0; g < M; ++g) {
    const double x = 2.0 * M_PI * static_cast<double>(g) / M;
    Complex acc(0, 0);
    for (long k = -J; k <= J; ++k)
      acc += w[k + J] * std::exp(Complex(0, static_cast<double>(k) * x));
    samples[g] = acc * s.a().eval(x);
  }

  Vector out(2 * J + 1);
  for (long j = -J; j <= J; ++j) {
    Complex acc(0, 0);
    for (long g = 0; g < M; ++g) {
      const double x = 2.0 * M_PI * static_cast<double>(g) / M;
      acc += samples[g] * std::exp(Complex(0, -static_cast<double>(j) * x));
    }
    out[j + J] = acc / static_cast<double>(M);
  }
  return out;
}

}  // namespace oracles
