#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>

namespace blockspec {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid parameter (nonpositive exponent, bad truncation policy, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Block shapes of two objects disagree.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// A black-box operator moved mass between blocks of the partition.
class NonInvarianceError : public Error {
 public:
  NonInvarianceError(const std::string& what, Index block)
      : Error(what), block_(block) {}
  Index block() const { return block_; }

 private:
  Index block_;
};

/// A block of a BlockUnitary failed the unitarity check.
class NonUnitaryError : public Error {
 public:
  using Error::Error;
};

/// Spectrum of a truncated operator has significant negative mass where
/// positivity was required.
class PositivityError : public Error {
 public:
  using Error::Error;
};

}  // namespace blockspec
