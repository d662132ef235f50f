#pragma once

#include "blockspec/schatten.hpp"
#include "blockspec/symbol.hpp"
#include "blockspec/tensor.hpp"
#include "blockspec/types.hpp"

#include <functional>
#include <vector>

namespace blockspec {

/// Symbol of (I - L)^(-alpha/2) for the Laplacian L on SU(2): a scalar
/// symbol over half-integer representation indices l = t/2, t = 0, 1, 2...,
/// with block value (1 + l(l+1))^(-alpha/2) and weight (2l+1)^2 (each
/// (2l+1)-dimensional representation block recurs 2l+1 times and the symbol
/// is scalar on it). Block labels display the half-integer l.
MatrixSymbol su2_laplacian_power_symbol(double alpha);

/// Schatten p-norm of the tensor of two SU(2) Laplacian powers with
/// exponents alpha and beta, in product form. The series converge when
/// alpha*p > 3 and beta*p > 3; outside that range the estimate is expected
/// to report converged = false, which is the flag for a violated
/// hypothesis.
TensorSchattenEstimate su2_tensor_norm(double alpha, double beta, double p,
                                       const TruncationPolicy& t);

/// Symbol of I + H_gamma for the Schroedinger family on SO(3):
/// diagonal blocks of dimension 2l+1, entries 1 + m - gamma m^2
/// + gamma l(l+1) for m = -l..l. Requires gamma > 0.
MatrixSymbol so3_schrodinger_symbol(double gamma);

/// Lattice points of Z^n with sup-norm at most radius, enumerated by
/// increasing sup-norm shell and lexicographically within each shell.
std::vector<std::vector<long>> torus_lattice_enumeration(int n, long radius);

/// Fourier multiplier on the n-torus restricted to the sup-norm ball of the
/// given radius: a scalar symbol with one 1-dimensional block per lattice
/// point in enumeration order, value beta(j).
MatrixSymbol torus_multiplier_symbol(
    std::function<Complex(const std::vector<long>&)> beta, int n, long radius);

/// Membership threshold for (A_{k,l} + 1)^(-mu) in the Schatten class S_p,
/// where A_{k,l} = (-Laplacian)^l + |x|^(2k) on R^n: returns
/// (k + l) n / (2 k l p); membership requires mu strictly above it.
double anharmonic_schatten_threshold(long k, long l, long n, double p);

struct GridSpec {
  Index points = 2000;    // quadrature grid resolution on [-extent, extent]
  double extent = 12.0;   // half-width of the Dirichlet box
};

/// One-dimensional anharmonic oscillator (-d^2/dx^2)^l + |x|^(2k), with the
/// inverse power mu used by the decay diagnostics.
struct AnharmonicSpec {
  long k = 1;
  long l = 1;
  long dimension = 1;  // only 1 is supported by the Galerkin solver
  double mu = 1.0;
  GridSpec grid;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending, strictly positive
  Index basis_size = 0;
  Index grid_points = 0;
  double extent = 0.0;
};

/// Lowest `count` eigenvalues of the boxed operator on [-extent, extent]
/// with Dirichlet truncation. The kinetic part is realized spectrally in
/// the discrete sine basis, where it is diagonal with symbol
/// (n pi / (2 extent))^(2l); the potential is assembled by quadrature on
/// the uniform interior grid, which is exactly orthogonal for the sine
/// basis. Requires count <= points / 10.
SpectrumResult anharmonic_galerkin_spectrum(const AnharmonicSpec& spec,
                                            Index count);

struct DecayCheck {
  double fitted_slope = 0.0;
  double half_width = 0.0;
  double threshold_slope = 0.0;  // -1/p
  double mu_threshold = 0.0;     // Schatten threshold for mu at this p
  bool pass = false;
};

/// Fits the decay exponent of lambda_m = (1 + E_m)^(-mu) over the computed
/// spectrum and compares it against the required rate m^(-1/p):
/// pass when slope + half_width < -1/p.
DecayCheck anharmonic_decay_check(const AnharmonicSpec& spec, double p,
                                  Index count);

}  // namespace blockspec
