#pragma once

#include "blockspec/types.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace blockspec {

/// Real-valued trigonometric polynomial a(x) = sum_k a_hat(k) e^{ikx} given
/// by finitely many Fourier coefficients with a_hat(-k) = conj(a_hat(k)).
/// The sup norm is evaluated by dense sampling at >= 8x the degree.
class TrigPolynomial {
 public:
  /// Constant polynomial a(x) = c (c >= 0).
  static TrigPolynomial constant(double c);

  explicit TrigPolynomial(std::map<long, Complex> coefficients);

  double eval(double x) const;
  double sup_norm() const { return sup_; }
  long degree() const { return degree_; }
  bool is_constant() const { return degree_ == 0; }
  double constant_value() const;
  Complex coefficient(long k) const;
  const std::map<long, Complex>& coefficients() const { return coeff_; }

 private:
  std::map<long, Complex> coeff_;
  long degree_ = 0;
  double sup_ = 0.0;
};

/// Nonnegative Fourier multiplier beta on the integer lattice Z. Either the
/// inverse-power family beta(j) = (1 + j^2)^(-s/2) or an explicit finite
/// table. Power sums over the lattice are evaluated in a fixed order with
/// compensated summation; for the inverse-power family the remainder beyond
/// the truncation radius has an Euler-Maclaurin closed form, exposed
/// separately so that callers can choose between the truncated functional
/// and the full lattice sum.
class MultiplierBeta {
 public:
  static MultiplierBeta inverse_power(double s);
  static MultiplierBeta finite_table(std::map<long, double> values);

  double operator()(long j) const;

  /// sum_{|j| <= J} beta(j)^p, exact order: |j| descending, center last.
  double power_sum_truncated(double p, long J) const;

  /// sum_{|j| > J} beta(j)^p. Exact for finite tables; Euler-Maclaurin for
  /// the inverse-power family (requires s*p > 1).
  double power_sum_tail(double p, long J) const;

  /// (truncated + tail)^(1/p): the lp norm of beta over the whole lattice.
  double lp_norm(double p, long J) const;

  bool is_inverse_power() const { return !table_; }
  double exponent() const;
  long max_support() const;  // finite tables only

 private:
  MultiplierBeta() = default;
  double s_ = 0.0;
  std::shared_ptr<const std::map<long, double>> table_;

  struct Cache;
  std::shared_ptr<Cache> cache_;  // memoized power sums, shared by copies
};

/// Separable torus symbol sigma(x, j) = a(x) beta(j): the operator is the
/// multiplication by a composed with the multiplier beta(D).
class SeparableSymbol {
 public:
  SeparableSymbol(TrigPolynomial a, MultiplierBeta beta);

  const TrigPolynomial& a() const { return a_; }
  const MultiplierBeta& beta() const { return beta_; }
  double a_sup() const { return a_.sup_norm(); }

  /// True when a is constant, making the truncated matrix diagonal.
  bool diagonal() const { return a_.is_constant(); }

 private:
  TrigPolynomial a_;
  MultiplierBeta beta_;
};

/// Fourier-side truncation of T_a beta(D) to frequencies |j|, |k| <= J:
/// entries A_{jk} = a_hat(j - k) beta(k). Requires J >= degree(a).
Matrix assemble_truncated_matrix(const SeparableSymbol& s, long J);

/// Eigenvalues of the Hermitian part of the truncated matrix, ascending and
/// clipped at zero. Eigenvalues below -1e-8 * ||H|| raise PositivityError.
/// skew_fraction reports ||M - M*|| / (2 ||H||), a modeling warning when it
/// exceeds 1e-6.
struct TruncatedSpectrum {
  RealVector eigenvalues;
  double skew_fraction = 0.0;
};
TruncatedSpectrum truncated_spectrum(const SeparableSymbol& s, long J);

/// Trace of the p-th power of the truncated operator: sum of lambda^p over
/// the spectrum above. For constant a the matrix is diagonal and the sum is
/// taken directly over c^p beta(j)^p, |j| <= J. Requires p > 1.
double trace_power(const SeparableSymbol& s, double p, long J);

/// Product of per-factor trace_power values.
double tensor_trace_power(const std::vector<SeparableSymbol>& symbols,
                          double p, long J);

/// The geometric grid p_k = 1 + 2^(-k) (p0 - 1), k = 0..halvings.
std::vector<double> geometric_p_grid(double p0, int halvings);

/// Result of the Dixmier-trace estimation via g(p) = (p-1) Tr(tensor A^p).
struct DixmierEstimate {
  double limit_value = 0.0;          // linear extrapolation of g to p = 1
  std::vector<double> p_grid;
  std::vector<double> g_values;
  std::vector<double> h_values;      // envelope (p-1) prod ||a||^p ||beta||_p^p
  double extrapolation_residual = 0.0;  // relative RMS residual of the fit
  bool bound_check = false;          // g <= h at every grid point (1e-8 slack)
  bool converged = false;            // no blow-up and small residual
  double max_skew_fraction = 0.0;
  bool skew_warning = false;         // some factor had skew_fraction > 1e-6
};

/// Estimates the Dixmier trace of the tensor of the given separable-symbol
/// operators as the p -> 1+ limit of g(p) = (p-1) prod_m Tr(A_m^p), by
/// linear least squares of g against (p-1) over the last half of the grid.
///
/// Per-factor traces: for constant a the operator is an explicit diagonal
/// multiplier and Tr(A^p) is evaluated as the full lattice sum (truncated
/// part plus Euler-Maclaurin remainder), which the p -> 1 limit requires;
/// for banded a the trace uses the truncated spectrum at radius J, computed
/// once and re-summed per grid point.
DixmierEstimate dixmier_estimate(const std::vector<SeparableSymbol>& symbols,
                                 const std::vector<double>& p_grid, long J);

/// Finite-sample proxy for the existence of the envelope limit
/// lim (p-1) prod ||a_m||^p ||beta_m||_p^p: evaluates h on the grid and
/// reports whether it has stabilized. The check is a proxy, not a proof:
/// h stabilizes when the successive changes over the last three grid points
/// stay within 5% of the overall scale of h.
struct HypothesisReport {
  bool stabilizes = false;
  std::vector<double> p_grid;
  std::vector<double> h_values;
  double scale = 0.0;
};
HypothesisReport hypothesis_check(const std::vector<SeparableSymbol>& symbols,
                                  const std::vector<double>& p_grid,
                                  long J = 1000000);

}  // namespace blockspec
