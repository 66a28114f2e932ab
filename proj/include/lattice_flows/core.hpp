#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace lattice_flows {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

// Numerical differentiation. complex_step evaluates f(x + i h e) with h = 2^-66 (about
// 1e-20; a power of two, so scaling by it is exact) and reads the derivative from the
// imaginary part. It is exact to rounding but only valid for holomorphic functions that
// are real at real arguments. automatic picks it when the point and the value are real
// and falls back to central differences otherwise.
enum class Differencing { automatic, central, complex_step };
inline constexpr double kComplexStep = 0x1p-66;

// Error hierarchy. Every failure the library reports derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChartMismatch : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParityError : public Error {
 public:
  using Error::Error;
};

class NonIntegerMultiplicity : public Error {
 public:
  using Error::Error;
};

class InvalidSpectrum : public Error {
 public:
  using Error::Error;
};

class StepFailure : public Error {
 public:
  StepFailure(const std::string& what, double t) : Error(what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class DomainExit : public Error {
 public:
  DomainExit(const std::string& what, double t, Index coordinate)
      : Error(what), time_(t), coordinate_(coordinate) {}
  double time() const noexcept { return time_; }
  Index coordinate() const noexcept { return coordinate_; }

 private:
  double time_;
  Index coordinate_;
};

}  // namespace lattice_flows
