#pragma once

#include "blockspec/symbol.hpp"
#include "blockspec/types.hpp"

#include <vector>

namespace blockspec {

/// Truncation policy for the block series of spectral functionals.
///
/// Blocks l = 0 .. l_max are scanned in ascending order. The summation stops
/// early once the relative spectral increment of a block stays at or below
/// tail_tol for min_blocks consecutive blocks. The increment is measured on
/// the per-block spectral sums of the symbol itself (one copy per block);
/// multiplicity weights enter the reported value but not the stopping
/// measure, so a weight like (2l+1)^2 does not mask the decay of the
/// underlying spectral sequence.
struct TruncationPolicy {
  Index l_max = 200;
  double tail_tol = 1e-10;
  Index min_blocks = 3;

  void validate() const;
};

/// Truncated value of a Schatten functional with convergence metadata.
/// converged is true when the stopping rule fired before l_max (or the
/// partition was exhausted, in which case the value is the exact finite
/// sum and last_increment is zero).
struct SchattenEstimate {
  double value = 0.0;
  double p = 0.0;  // +infinity for the operator norm
  Index blocks_used = 0;
  double last_increment = 0.0;
  bool converged = false;
};

/// Trace value with the convergence metadata of the p = 1 absolute series.
struct TraceEstimate {
  Complex value{0.0, 0.0};
  Index blocks_used = 0;
  double last_increment = 0.0;
  bool converged = false;
};

/// Least-squares decay exponent of a positive, descending sequence.
struct DecayFit {
  double slope = 0.0;
  double half_width = 0.0;  // 1.96 x standard error of the slope
  Index window_begin = 0;   // first 0-based rank used by the fit
  Index window_size = 0;
};

/// Singular values of a square matrix, descending. Throws on non-square
/// input.
RealVector singular_values_block(const Matrix& m);

/// Truncated Schatten p-(quasi)norm of a symbol:
///   ( sum_l mult(l) * sum_k s_k(sigma(l))^p )^(1/p).
/// Valid for every p > 0; for 0 < p < 1 this is the quasi-norm.
SchattenEstimate schatten_norm(const MatrixSymbol& s, double p,
                               const TruncationPolicy& t);

/// Truncated trace sum_l mult(l) * tr sigma(l). Convergence of the
/// absolute (p = 1) series is monitored alongside; the value is reported
/// even when that series did not settle, flagged via converged = false.
TraceEstimate trace(const MatrixSymbol& s, const TruncationPolicy& t);

/// Supremum of per-block largest singular values over the scanned range.
/// The converged flag is heuristic: it fires when block norms have decayed
/// to tail_tol relative to the running maximum for min_blocks consecutive
/// blocks, or when a finite partition was exhausted.
SchattenEstimate operator_norm(const MatrixSymbol& s,
                               const TruncationPolicy& t);

/// Multiplicity-weighted singular values of the first `blocks` blocks,
/// sorted descending (each block's values repeated multiplicity times).
std::vector<double> singular_spectrum(const MatrixSymbol& s, Index blocks);

/// Fits log(values[m]) against log(m+1) over the tail half of the data and
/// returns the slope with a 1.96-sigma half-width, floored at 1e-6 so that
/// a degenerate (exact power law) fit does not claim infinite resolution.
/// Requires at least 10 strictly positive values.
DecayFit decay_exponent_fit(const std::vector<double>& values);

}  // namespace blockspec
