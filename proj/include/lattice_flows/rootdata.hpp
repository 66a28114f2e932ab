#pragma once

#include "lattice_flows/core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lattice_flows::rootdata {

/// Exponent vectors v_1..v_N in R^n of an exponential-interaction Hamiltonian
/// H = |p|^2/2 + sum_i exp((v_i, q)).
class Spectrum {
 public:
  /// Throws InvalidSpectrum for an empty list, a dimension mismatch, or a zero vector.
  Spectrum(Index dimension, std::vector<RealVec> vectors,
           std::vector<std::string> labels = {});

  Index dimension() const noexcept { return dimension_; }
  Index size() const noexcept { return static_cast<Index>(vectors_.size()); }
  const RealVec& operator[](Index i) const { return vectors_[static_cast<std::size_t>(i)]; }
  const std::vector<RealVec>& vectors() const noexcept { return vectors_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Columns are the spectrum vectors (n x N).
  RealMat as_columns() const;

  /// Parses {"dimension": n, "vectors": [[...], ...], "labels": [...]} (labels optional).
  static Spectrum from_json(std::string_view text);
  std::string to_json() const;

 private:
  Index dimension_;
  std::vector<RealVec> vectors_;
  std::vector<std::string> labels_;
};

/// M_ij = (v_i, v_j). Symmetric by construction.
RealMat gram_matrix(const Spectrum& spectrum);

struct DynkinTypeDiagram {
  RealVec weights;                        // (v_i, v_i) scaled so the smallest is 1
  Eigen::MatrixXi multiplicities;         // m_ij = round(4 (v_i,v_j)^2 / ((v_i,v_i)(v_j,v_j)))
};

inline constexpr double kIntegerTolerance = 1e-9;

/// Throws NonIntegerMultiplicity when an edge count is farther than tol from an integer.
DynkinTypeDiagram build_diagram(const Spectrum& spectrum, double tol = kIntegerTolerance);

struct RatioViolation {
  Index i;  // maximal vector
  Index j;  // independent vector
  double ratio;
};

struct IntegrabilityReport {
  bool pass = true;
  std::vector<RatioViolation> violations;
  // Every evaluated (i, j, ratio), violating or not, in (i, j) order.
  std::vector<RatioViolation> ratios;
};

/// Necessary condition for Birkhoff integrability: for every maximal v_i and every
/// v_j not parallel to it, 2 (v_i, v_j) / (v_i, v_i) lies in {0, -1, -2, ...}.
IntegrabilityReport kozlov_treshchev_check(const Spectrum& spectrum,
                                           double tol = kIntegerTolerance);

/// True when v_i is the longest vector among those pointing in its direction.
bool is_maximal(const Spectrum& spectrum, Index i);

/// Basis of {lambda : sum_i lambda_i v_i = 0}; each vector has its first nonzero entry
/// equal to 1. Empty when the vectors are independent.
std::vector<RealVec> null_combination(const Spectrum& spectrum);

/// {-2e_1, e_1 - e_2, ..., e_{n-1} - e_n, 2e_n}: the spectrum of the Sklyanin lattice
/// with both boundary couplings equal to one. Requires n >= 2.
Spectrum sklyanin_spectrum(Index n);

/// Simple roots e_i - e_{i+1} of A_{n-1} in R^n. Requires n >= 2.
Spectrum a_type_spectrum(Index n);

}  // namespace lattice_flows::rootdata
