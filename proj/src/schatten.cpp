#include "blockspec/schatten.hpp"

#include "blockspec/reduction.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace blockspec {

namespace {

void check_block_finite(const Matrix& b, Index l) {
  if (!b.allFinite())
    throw DomainError("symbol block " + std::to_string(l) +
                      " contains NaN or infinity");
}

/// Singular values of one block, honouring the structure hint.
RealVector block_singular_values(const MatrixSymbol& s, const Matrix& b) {
  if (s.structure_hint() == StructureHint::diagonal ||
      s.structure_hint() == StructureHint::scalar) {
    RealVector v = b.diagonal().cwiseAbs();
    std::sort(v.data(), v.data() + v.size(), std::greater<double>());
    return v;
  }
  return singular_values_block(b);
}

double power_sum(const RealVector& svals, double p) {
  NeumaierSum sum;
  for (Index i = svals.size() - 1; i >= 0; --i)
    sum.add(std::pow(svals[i], p));
  return sum.value();
}

Index scan_limit(const MatrixSymbol& s, const TruncationPolicy& t) {
  Index blocks = t.l_max + 1;
  if (s.partition().block_count())
    blocks = std::min(blocks, *s.partition().block_count());
  return blocks;
}

}  // namespace

void TruncationPolicy::validate() const {
  if (min_blocks < 1)
    throw DomainError("TruncationPolicy: min_blocks must be >= 1");
  if (l_max < min_blocks)
    throw DomainError("TruncationPolicy: l_max must be >= min_blocks");
  if (!(tail_tol >= 0.0))
    throw DomainError("TruncationPolicy: tail_tol must be >= 0");
}

RealVector singular_values_block(const Matrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatchError("singular_values_block: matrix is not square");
  if (m.size() == 0) return RealVector();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

SchattenEstimate schatten_norm(const MatrixSymbol& s, double p,
                               const TruncationPolicy& t) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw DomainError("schatten_norm: p must be a positive finite real");
  t.validate();

  const Index blocks = scan_limit(s, t);
  SchattenEstimate est;
  est.p = p;

  NeumaierSum weighted;   // value accumulator, multiplicities applied
  NeumaierSum spectral;   // stopping measure, one copy per block
  Index consecutive = 0;

  for (Index l = 0; l < blocks; ++l) {
    const Matrix b = s.block(l);
    check_block_finite(b, l);
    const double u = power_sum(block_singular_values(s, b), p);
    const double mult = static_cast<double>(s.multiplicity(l));
    weighted.add(mult * u);
    spectral.add(u);
    est.blocks_used = l + 1;
    const double total = spectral.value();
    const double rel = total > 0.0 ? u / total : 0.0;
    est.last_increment = rel;
    consecutive = rel <= t.tail_tol ? consecutive + 1 : 0;
    if (consecutive >= t.min_blocks) {
      est.converged = true;
      break;
    }
  }

  if (!est.converged && s.partition().block_count() &&
      est.blocks_used == *s.partition().block_count()) {
    est.converged = true;  // exact: the finite series was exhausted
    est.last_increment = 0.0;
  }
  est.value = std::pow(weighted.value(), 1.0 / p);
  return est;
}

TraceEstimate trace(const MatrixSymbol& s, const TruncationPolicy& t) {
  t.validate();
  const Index blocks = scan_limit(s, t);

  TraceEstimate est;
  NeumaierSum re, im;
  NeumaierSum spectral;
  Index consecutive = 0;

  for (Index l = 0; l < blocks; ++l) {
    const Matrix b = s.block(l);
    check_block_finite(b, l);
    const double mult = static_cast<double>(s.multiplicity(l));
    const Complex tr = b.trace();
    re.add(mult * tr.real());
    im.add(mult * tr.imag());

    const double u = power_sum(block_singular_values(s, b), 1.0);
    spectral.add(u);
    est.blocks_used = l + 1;
    const double total = spectral.value();
    const double rel = total > 0.0 ? u / total : 0.0;
    est.last_increment = rel;
    consecutive = rel <= t.tail_tol ? consecutive + 1 : 0;
    if (consecutive >= t.min_blocks) {
      est.converged = true;
      break;
    }
  }

  if (!est.converged && s.partition().block_count() &&
      est.blocks_used == *s.partition().block_count()) {
    est.converged = true;
    est.last_increment = 0.0;
  }
  est.value = Complex(re.value(), im.value());
  return est;
}

SchattenEstimate operator_norm(const MatrixSymbol& s,
                               const TruncationPolicy& t) {
  t.validate();
  const Index blocks = scan_limit(s, t);

  SchattenEstimate est;
  est.p = std::numeric_limits<double>::infinity();
  Index consecutive = 0;

  for (Index l = 0; l < blocks; ++l) {
    const Matrix b = s.block(l);
    check_block_finite(b, l);
    const RealVector svals = block_singular_values(s, b);
    const double top = svals.size() > 0 ? svals[0] : 0.0;
    est.value = std::max(est.value, top);
    est.blocks_used = l + 1;
    const double rel = est.value > 0.0 ? top / est.value : 0.0;
    est.last_increment = rel;
    consecutive = rel <= t.tail_tol ? consecutive + 1 : 0;
    if (consecutive >= t.min_blocks) {
      est.converged = true;
      break;
    }
  }

  if (!est.converged && s.partition().block_count() &&
      est.blocks_used == *s.partition().block_count()) {
    est.converged = true;
    est.last_increment = 0.0;
  }
  return est;
}

std::vector<double> singular_spectrum(const MatrixSymbol& s, Index blocks) {
  if (blocks < 1) throw DomainError("singular_spectrum: need at least 1 block");
  if (s.partition().block_count())
    blocks = std::min(blocks, *s.partition().block_count());
  std::vector<double> values;
  for (Index l = 0; l < blocks; ++l) {
    const Matrix b = s.block(l);
    check_block_finite(b, l);
    const RealVector svals = block_singular_values(s, b);
    const std::int64_t mult = s.multiplicity(l);
    for (Index i = 0; i < svals.size(); ++i)
      for (std::int64_t c = 0; c < mult; ++c) values.push_back(svals[i]);
  }
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

DecayFit decay_exponent_fit(const std::vector<double>& values) {
  const Index n = static_cast<Index>(values.size());
  if (n < 10)
    throw DomainError("decay_exponent_fit: need at least 10 values, got " +
                      std::to_string(n));
  for (Index i = 0; i < n; ++i)
    if (!(values[static_cast<size_t>(i)] > 0.0))
      throw DomainError("decay_exponent_fit: value at rank " +
                        std::to_string(i + 1) + " is not positive");

  // Tail half only: the decay statements are asymptotic and the leading
  // ranks bias the slope.
  const Index begin = n / 2;
  const Index w = n - begin;

  double sx = 0, sy = 0;
  for (Index i = begin; i < n; ++i) {
    sx += std::log(static_cast<double>(i + 1));
    sy += std::log(values[static_cast<size_t>(i)]);
  }
  const double mx = sx / static_cast<double>(w);
  const double my = sy / static_cast<double>(w);

  double sxx = 0, sxy = 0;
  for (Index i = begin; i < n; ++i) {
    const double dx = std::log(static_cast<double>(i + 1)) - mx;
    const double dy = std::log(values[static_cast<size_t>(i)]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0))
    throw DomainError("decay_exponent_fit: degenerate abscissa");

  DecayFit fit;
  fit.window_begin = begin;
  fit.window_size = w;
  fit.slope = sxy / sxx;

  double rss = 0;
  for (Index i = begin; i < n; ++i) {
    const double dx = std::log(static_cast<double>(i + 1)) - mx;
    const double dy = std::log(values[static_cast<size_t>(i)]) - my;
    const double r = dy - fit.slope * dx;
    rss += r * r;
  }
  if (w > 2) {
    const double se =
        std::sqrt(rss / static_cast<double>(w - 2) / sxx);
    fit.half_width = 1.96 * se;
  }
  // A fit with near-zero residuals would report an interval of width zero,
  // overstating what a double-precision spectrum can resolve. Floor the
  // half-width at the resolution limit of the fit.
  fit.half_width = std::max(fit.half_width, 1e-6);
  return fit;
}

}  // namespace blockspec
