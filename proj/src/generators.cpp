#include "blockspec/generators.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <utility>

namespace blockspec {

namespace {

std::string half_integer_label(Index t) {
  if (t % 2 == 0) return std::to_string(t / 2);
  return std::to_string(t) + "/2";
}

std::string lattice_label(const std::vector<long>& j) {
  std::string s = "(";
  for (size_t i = 0; i < j.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(j[i]);
  }
  return s + ")";
}

}  // namespace

MatrixSymbol su2_laplacian_power_symbol(double alpha) {
  if (!(alpha > 0.0))
    throw DomainError("su2_laplacian_power_symbol: alpha must be > 0");
  Partition p([](Index) { return Index(1); }, std::nullopt,
              [](Index t) { return half_integer_label(t); });
  return MatrixSymbol::scalar(
      p,
      [alpha](Index t) {
        const double l = 0.5 * static_cast<double>(t);
        return Complex(std::pow(1.0 + l * (l + 1.0), -0.5 * alpha), 0.0);
      },
      [](Index t) {
        const std::int64_t w = t + 1;  // 2l + 1 with l = t/2
        return w * w;
      });
}

TensorSchattenEstimate su2_tensor_norm(double alpha, double beta, double p,
                                       const TruncationPolicy& t) {
  if (!(p > 0.0)) throw DomainError("su2_tensor_norm: p must be > 0");
  const TensorSymbol ts = tensor_symbols(
      {su2_laplacian_power_symbol(alpha), su2_laplacian_power_symbol(beta)});
  return tensor_schatten_norm(ts, p, t);
}

MatrixSymbol so3_schrodinger_symbol(double gamma) {
  if (!(gamma > 0.0))
    throw DomainError("so3_schrodinger_symbol: gamma must be > 0");
  Partition p([](Index l) { return 2 * l + 1; });
  return MatrixSymbol(
      p,
      [gamma](Index l) {
        const Index d = 2 * l + 1;
        Matrix b = Matrix::Zero(d, d);
        const double ll = static_cast<double>(l) * (static_cast<double>(l) + 1);
        for (Index i = 0; i < d; ++i) {
          const double m = static_cast<double>(i - l);  // m = -l..l
          b(i, i) = Complex(1.0 + m - gamma * m * m + gamma * ll, 0.0);
        }
        return b;
      },
      StructureHint::diagonal);
}

std::vector<std::vector<long>> torus_lattice_enumeration(int n, long radius) {
  if (n < 1) throw DomainError("torus_lattice_enumeration: n must be >= 1");
  if (radius < 0)
    throw DomainError("torus_lattice_enumeration: radius must be >= 0");

  std::vector<std::vector<long>> points;
  if (n == 1) {
    points.reserve(static_cast<size_t>(2 * radius + 1));
    points.push_back({0});
    for (long s = 1; s <= radius; ++s) {
      points.push_back({-s});
      points.push_back({s});
    }
    return points;
  }

  // Shells by sup-norm, lexicographic within a shell.
  std::vector<long> j(static_cast<size_t>(n));
  for (long s = 0; s <= radius; ++s) {
    std::fill(j.begin(), j.end(), -s);
    while (true) {
      long sup = 0;
      for (long c : j) sup = std::max(sup, std::abs(c));
      if (sup == s) points.push_back(j);
      int i = n - 1;
      while (i >= 0 && j[static_cast<size_t>(i)] == s) {
        j[static_cast<size_t>(i)] = -s;
        --i;
      }
      if (i < 0) break;
      ++j[static_cast<size_t>(i)];
    }
  }
  return points;
}

MatrixSymbol torus_multiplier_symbol(
    std::function<Complex(const std::vector<long>&)> beta, int n, long radius) {
  if (!beta) throw DomainError("torus_multiplier_symbol: beta is empty");
  auto points = std::make_shared<const std::vector<std::vector<long>>>(
      torus_lattice_enumeration(n, radius));
  const Index count = static_cast<Index>(points->size());
  Partition p([](Index) { return Index(1); }, count, [points](Index l) {
    return lattice_label((*points)[static_cast<size_t>(l)]);
  });
  return MatrixSymbol::scalar(p, [points, beta](Index l) {
    return beta((*points)[static_cast<size_t>(l)]);
  });
}

double anharmonic_schatten_threshold(long k, long l, long n, double p) {
  if (k < 1 || l < 1 || n < 1)
    throw DomainError("anharmonic_schatten_threshold: k, l, n must be >= 1");
  if (!(p > 0.0))
    throw DomainError("anharmonic_schatten_threshold: p must be > 0");
  return static_cast<double>((k + l) * n) /
         (2.0 * static_cast<double>(k) * static_cast<double>(l) * p);
}

namespace {

void validate_spec(const AnharmonicSpec& spec) {
  if (spec.k < 1 || spec.l < 1)
    throw DomainError("anharmonic spec: k and l must be >= 1");
  if (spec.dimension != 1)
    throw DomainError("anharmonic spec: only dimension 1 is supported");
  if (spec.grid.points < 100)
    throw DomainError("anharmonic spec: need at least 100 grid points");
  if (!(spec.grid.extent > 0.0))
    throw DomainError("anharmonic spec: extent must be > 0");
  if (!(spec.mu >= 0.0))
    throw DomainError("anharmonic spec: mu must be >= 0");
}

}  // namespace

SpectrumResult anharmonic_galerkin_spectrum(const AnharmonicSpec& spec,
                                            Index count) {
  validate_spec(spec);
  if (count < 1) throw DomainError("anharmonic spectrum: count must be >= 1");
  if (count > spec.grid.points / 10)
    throw DomainError("anharmonic spectrum: count " + std::to_string(count) +
                      " exceeds points/10 = " +
                      std::to_string(spec.grid.points / 10));

  const Index grid = spec.grid.points;
  const double L = spec.grid.extent;
  const double h = 2.0 * L / static_cast<double>(grid);
  const Index interior = grid - 1;
  const Index basis =
      std::min<Index>(interior, std::max<Index>(8 * count, 400));

  // Sine basis sampled on the interior grid. The uniform grid is exactly
  // orthogonal for these modes, so the quadrature mass matrix is the
  // identity.
  RealMatrix phi(interior, basis);
  for (Index i = 0; i < interior; ++i)
    for (Index n = 0; n < basis; ++n)
      phi(i, n) = std::sin(M_PI * static_cast<double>((n + 1) * (i + 1)) /
                           static_cast<double>(grid)) /
                  std::sqrt(L);

  RealVector potential(interior);
  for (Index i = 0; i < interior; ++i) {
    const double x = -L + static_cast<double>(i + 1) * h;
    potential[i] = std::pow(std::abs(x), 2.0 * static_cast<double>(spec.k));
  }

  RealMatrix hmat = h * (phi.transpose() * potential.asDiagonal() * phi);
  for (Index n = 0; n < basis; ++n) {
    const double kappa = std::pow(
        M_PI * static_cast<double>(n + 1) / (2.0 * L), 2.0);
    hmat(n, n) += std::pow(kappa, static_cast<double>(spec.l));
  }

  const double scale = hmat.cwiseAbs().maxCoeff();
  const double skew = (hmat - hmat.transpose()).cwiseAbs().maxCoeff();
  if (skew > 1e-8 * std::max(1.0, scale))
    throw Error("anharmonic spectrum: assembled matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(hmat,
                                                   Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error("anharmonic spectrum: eigensolver failed");

  SpectrumResult result;
  result.basis_size = basis;
  result.grid_points = grid;
  result.extent = L;
  result.eigenvalues.assign(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + count);
  for (double e : result.eigenvalues)
    if (!(e > 0.0))
      throw Error("anharmonic spectrum: nonpositive eigenvalue computed");
  return result;
}

DecayCheck anharmonic_decay_check(const AnharmonicSpec& spec, double p,
                                  Index count) {
  if (!(p > 0.0)) throw DomainError("anharmonic_decay_check: p must be > 0");
  const SpectrumResult spectrum = anharmonic_galerkin_spectrum(spec, count);

  std::vector<double> lambda;
  lambda.reserve(spectrum.eigenvalues.size());
  for (double e : spectrum.eigenvalues)
    lambda.push_back(std::pow(1.0 + e, -spec.mu));

  const DecayFit fit = decay_exponent_fit(lambda);
  DecayCheck check;
  check.fitted_slope = fit.slope;
  check.half_width = fit.half_width;
  check.threshold_slope = -1.0 / p;
  check.mu_threshold =
      anharmonic_schatten_threshold(spec.k, spec.l, spec.dimension, p);
  check.pass = fit.slope + fit.half_width < check.threshold_slope;
  return check;
}

}  // namespace blockspec
