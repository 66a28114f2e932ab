#include "lattice_flows/rootdata.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lattice_flows::rootdata {

namespace {

constexpr double kDirectionTolerance = 1e-12;

bool same_direction(const RealVec& u, const RealVec& v) {
  return (u.normalized() - v.normalized()).norm() < kDirectionTolerance;
}

bool parallel(const RealVec& u, const RealVec& v) {
  return same_direction(u, v) || same_direction(u, -v);
}

double distance_to_integer(double x) { return std::abs(x - std::round(x)); }

}  // namespace

Spectrum::Spectrum(Index dimension, std::vector<RealVec> vectors,
                   std::vector<std::string> labels)
    : dimension_(dimension), vectors_(std::move(vectors)), labels_(std::move(labels)) {
  if (dimension_ < 1) throw InvalidSpectrum("spectrum dimension must be positive");
  if (vectors_.empty()) throw InvalidSpectrum("spectrum must contain at least one vector");
  for (const auto& v : vectors_) {
    if (v.size() != dimension_) throw InvalidSpectrum("spectrum vector has wrong length");
    if (v.squaredNorm() == 0.0) throw InvalidSpectrum("spectrum vectors must be nonzero");
  }
  if (!labels_.empty() && labels_.size() != vectors_.size())
    throw InvalidSpectrum("label count does not match vector count");
}

RealMat Spectrum::as_columns() const {
  RealMat cols(dimension_, size());
  for (Index i = 0; i < size(); ++i) cols.col(i) = (*this)[i];
  return cols;
}

Spectrum Spectrum::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidSpectrum(std::string("spectrum JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dimension") || !doc.contains("vectors"))
    throw InvalidSpectrum("spectrum JSON needs \"dimension\" and \"vectors\"");
  try {
    const auto n = doc.at("dimension").get<Index>();
    std::vector<RealVec> vectors;
    for (const auto& row : doc.at("vectors")) {
      const auto entries = row.get<std::vector<double>>();
      vectors.emplace_back(Eigen::Map<const RealVec>(entries.data(),
                                                     static_cast<Index>(entries.size())));
    }
    std::vector<std::string> labels;
    if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();
    return Spectrum(n, std::move(vectors), std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpectrum(std::string("spectrum JSON: ") + e.what());
  }
}

std::string Spectrum::to_json() const {
  nlohmann::json doc;
  doc["dimension"] = dimension_;
  auto& rows = doc["vectors"] = nlohmann::json::array();
  for (const auto& v : vectors_) rows.push_back(std::vector<double>(v.begin(), v.end()));
  if (!labels_.empty()) doc["labels"] = labels_;
  return doc.dump();
}

RealMat gram_matrix(const Spectrum& spectrum) {
  const Index n = spectrum.size();
  RealMat gram(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      gram(i, j) = spectrum[i].dot(spectrum[j]);
      gram(j, i) = gram(i, j);
    }
  }
  return gram;
}

DynkinTypeDiagram build_diagram(const Spectrum& spectrum, double tol) {
  const RealMat gram = gram_matrix(spectrum);
  const Index n = spectrum.size();
  DynkinTypeDiagram diagram;
  diagram.weights = gram.diagonal() / gram.diagonal().minCoeff();
  diagram.multiplicities = Eigen::MatrixXi::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double edges = 4.0 * gram(i, j) * gram(i, j) / (gram(i, i) * gram(j, j));
      if (distance_to_integer(edges) > tol) {
        std::ostringstream msg;
        msg << "edge count between vectors " << i << " and " << j << " is " << edges
            << ", not an integer";
        throw NonIntegerMultiplicity(msg.str());
      }
      const int m = static_cast<int>(std::lround(edges));
      diagram.multiplicities(i, j) = m;
      diagram.multiplicities(j, i) = m;
    }
  }
  return diagram;
}

bool is_maximal(const Spectrum& spectrum, Index i) {
  const RealVec& v = spectrum[i];
  for (Index k = 0; k < spectrum.size(); ++k) {
    if (k == i) continue;
    if (same_direction(v, spectrum[k]) && spectrum[k].squaredNorm() > v.squaredNorm())
      return false;
  }
  return true;
}

IntegrabilityReport kozlov_treshchev_check(const Spectrum& spectrum, double tol) {
  IntegrabilityReport report;
  for (Index i = 0; i < spectrum.size(); ++i) {
    if (!is_maximal(spectrum, i)) continue;
    const RealVec& vi = spectrum[i];
    for (Index j = 0; j < spectrum.size(); ++j) {
      if (j == i || parallel(vi, spectrum[j])) continue;
      const double ratio = 2.0 * vi.dot(spectrum[j]) / vi.squaredNorm();
      report.ratios.push_back({i, j, ratio});
      const bool nonpositive_integer = distance_to_integer(ratio) <= tol && ratio < 0.5;
      if (!nonpositive_integer) report.violations.push_back({i, j, ratio});
    }
  }
  report.pass = report.violations.empty();
  return report;
}

std::vector<RealVec> null_combination(const Spectrum& spectrum) {
  // Reduced row echelon form of the n x N column matrix with partial pivoting.
  RealMat a = spectrum.as_columns();
  const Index rows = a.rows();
  const Index cols = a.cols();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double eps = 1e-12 * scale;

  std::vector<Index> pivot_cols;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index best = r;
    for (Index k = r + 1; k < rows; ++k)
      if (std::abs(a(k, c)) > std::abs(a(best, c))) best = k;
    if (std::abs(a(best, c)) <= eps) continue;
    a.row(r).swap(a.row(best));
    a.row(r) /= a(r, c);
    for (Index k = 0; k < rows; ++k)
      if (k != r && a(k, c) != 0.0) a.row(k) -= a(k, c) * a.row(r);
    pivot_cols.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<RealVec> basis;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    RealVec lambda = RealVec::Zero(cols);
    lambda(free) = 1.0;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k)
      lambda(pivot_cols[k]) = -a(static_cast<Index>(k), free);
    for (Index k = 0; k < cols; ++k) {
      if (std::abs(lambda(k)) > eps) {
        lambda /= lambda(k);
        break;
      }
    }
    basis.push_back(std::move(lambda));
  }
  return basis;
}

Spectrum sklyanin_spectrum(Index n) {
  if (n < 2) throw UnsupportedDimension("sklyanin_spectrum needs n >= 2");
  std::vector<RealVec> vectors;
  std::vector<std::string> labels;
  RealVec first = RealVec::Zero(n);
  first(0) = -2.0;
  vectors.push_back(first);
  labels.emplace_back("-2e1");
  for (Index i = 0; i + 1 < n; ++i) {
    RealVec v = RealVec::Zero(n);
    v(i) = 1.0;
    v(i + 1) = -1.0;
    vectors.push_back(v);
    labels.push_back("e" + std::to_string(i + 1) + "-e" + std::to_string(i + 2));
  }
  RealVec last = RealVec::Zero(n);
  last(n - 1) = 2.0;
  vectors.push_back(last);
  labels.push_back("2e" + std::to_string(n));
  return Spectrum(n, std::move(vectors), std::move(labels));
}

Spectrum a_type_spectrum(Index n) {
  if (n < 2) throw UnsupportedDimension("a_type_spectrum needs n >= 2");
  std::vector<RealVec> vectors;
  for (Index i = 0; i + 1 < n; ++i) {
    RealVec v = RealVec::Zero(n);
    v(i) = 1.0;
    v(i + 1) = -1.0;
    vectors.push_back(v);
  }
  return Spectrum(n, std::move(vectors));
}

}  // namespace lattice_flows::rootdata
