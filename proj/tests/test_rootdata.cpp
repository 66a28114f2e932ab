#include "lattice_flows/rootdata.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace lattice_flows;
using namespace lattice_flows::rootdata;
using Catch::Matchers::WithinAbs;

namespace {

RealVec rv(std::initializer_list<double> xs) {
  RealVec v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Spectrum spectrum_of(Index dim, std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<RealVec> vs;
  for (auto r : rows) vs.push_back(rv(r));
  return Spectrum(dim, vs);
}

// Theorem-1 condition by brute force over all ordered pairs, independent of the library's bookkeeping.
bool brute_force_pass(const Spectrum& s) {
  for (Index i = 0; i < s.size(); ++i) {
    bool maximal = true;
    for (Index k = 0; k < s.size(); ++k) {
      const double cosine = s[i].dot(s[k]) / (s[i].norm() * s[k].norm());
      if (k != i && cosine > 1.0 - 1e-12 && s[k].norm() > s[i].norm() + 1e-12) maximal = false;
    }
    if (!maximal) continue;
    for (Index j = 0; j < s.size(); ++j) {
      const double cosine = std::abs(s[i].dot(s[j])) / (s[i].norm() * s[j].norm());
      if (j == i || cosine > 1.0 - 1e-12) continue;
      const double ratio = 2.0 * s[i].dot(s[j]) / s[i].squaredNorm();
      const double r = std::round(ratio);
      if (std::abs(ratio - r) > 1e-9 || r > 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("gram matrix examples", "[rootdata]") {
  const RealMat a2 = gram_matrix(spectrum_of(3, {{1, -1, 0}, {0, 1, -1}}));
  RealMat want(2, 2);
  want << 2, -1, -1, 2;
  CHECK((a2 - want).norm() == 0.0);

  CHECK((gram_matrix(spectrum_of(2, {{1, 0}, {0, 1}})) - RealMat::Identity(2, 2)).norm() == 0.0);
  CHECK(gram_matrix(spectrum_of(2, {{2, 0}}))(0, 0) == 4.0);
}

TEST_CASE("gram matrix is symmetric", "[rootdata][property]") {
  const RealMat M = gram_matrix(sklyanin_spectrum(6));
  CHECK((M - M.transpose()).norm() == 0.0);
}

TEST_CASE("spectrum validation", "[rootdata]") {
  CHECK_THROWS_AS(Spectrum(2, {}), InvalidSpectrum);
  CHECK_THROWS_AS(spectrum_of(2, {{1, 0, 0}}), InvalidSpectrum);
  CHECK_THROWS_AS(spectrum_of(2, {{0, 0}}), InvalidSpectrum);
}

TEST_CASE("spectrum json round trip", "[rootdata]") {
  const Spectrum s = sklyanin_spectrum(3);
  const Spectrum back = Spectrum::from_json(s.to_json());
  REQUIRE(back.size() == s.size());
  for (Index i = 0; i < s.size(); ++i) CHECK((back[i] - s[i]).norm() == 0.0);
  CHECK_THROWS_AS(Spectrum::from_json("{\"dimension\": 2}"), Error);
}

TEST_CASE("diagram examples", "[rootdata]") {
  const auto a2 = build_diagram(spectrum_of(3, {{1, -1, 0}, {0, 1, -1}}));
  CHECK(a2.multiplicities(0, 1) == 1);
  CHECK(a2.weights(0) == 1.0);
  CHECK(a2.weights(1) == 1.0);

  const auto orth = build_diagram(spectrum_of(2, {{1, 0}, {0, 1}}));
  CHECK(orth.multiplicities(0, 1) == 0);

  CHECK_THROWS_AS(build_diagram(spectrum_of(2, {{1, 0}, {2, 1}})), NonIntegerMultiplicity);
}

TEST_CASE("sklyanin diagram has doubled end edges", "[rootdata]") {
  // Order: -2e1, e1-e2, e2-e3, e3-e4, 2e4.
  const auto d = build_diagram(sklyanin_spectrum(4));
  CHECK(d.multiplicities(0, 1) == 2);
  CHECK(d.multiplicities(1, 2) == 1);
  CHECK(d.multiplicities(2, 3) == 1);
  CHECK(d.multiplicities(3, 4) == 2);
  CHECK(d.weights(0) == 2.0);
  CHECK(d.weights(1) == 1.0);
  CHECK(d.weights(4) == 2.0);
}

TEST_CASE("kozlov-treshchev examples", "[rootdata]") {
  CHECK(kozlov_treshchev_check(sklyanin_spectrum(3)).pass);
  CHECK(kozlov_treshchev_check(spectrum_of(2, {{1, 2}})).pass);

  const auto bad = kozlov_treshchev_check(spectrum_of(2, {{1, 0}, {1, 1}}));
  REQUIRE_FALSE(bad.pass);
  const bool has_two = std::any_of(bad.violations.begin(), bad.violations.end(),
                                   [](const RatioViolation& v) { return std::abs(v.ratio - 2.0) < 1e-12; });
  CHECK(has_two);
}

TEST_CASE("kozlov-treshchev agrees with brute force", "[rootdata][property]") {
  const std::vector<Spectrum> cases{
      sklyanin_spectrum(2), sklyanin_spectrum(5), a_type_spectrum(4),
      spectrum_of(2, {{1, 0}, {1, 1}}), spectrum_of(2, {{1, 0}, {-1, 0}}),
      spectrum_of(2, {{1, 0}, {2, 0}, {0, 1}}), spectrum_of(2, {{1, -1}, {0, 2}}),
      spectrum_of(2, {{2, -1}, {-1, 2}}), spectrum_of(3, {{1, -1, 0}, {0, 1, -1}, {0, 0, 1}})};
  for (const auto& s : cases) CHECK(kozlov_treshchev_check(s).pass == brute_force_pass(s));
}

TEST_CASE("maximal vectors", "[rootdata]") {
  const auto s = spectrum_of(2, {{1, 0}, {2, 0}, {0, 1}});
  CHECK_FALSE(is_maximal(s, 0));
  CHECK(is_maximal(s, 1));
  CHECK(is_maximal(s, 2));
}

TEST_CASE("null combination examples", "[rootdata]") {
  const auto sk = null_combination(sklyanin_spectrum(4));
  REQUIRE(sk.size() == 1);
  CHECK((sk[0] - rv({1, 2, 2, 2, 1})).norm() < 1e-12);

  CHECK(null_combination(spectrum_of(3, {{1, -1, 0}, {0, 1, -1}})).empty());

  const auto opp = null_combination(spectrum_of(2, {{1, 0}, {-1, 0}}));
  REQUIRE(opp.size() == 1);
  CHECK((opp[0] - rv({1, 1})).norm() < 1e-12);
}

TEST_CASE("null combinations annihilate the spectrum", "[rootdata][property]") {
  for (Index n = 2; n <= 8; ++n) {
    const Spectrum s = sklyanin_spectrum(n);
    for (const RealVec& lambda : null_combination(s))
      CHECK((s.as_columns() * lambda).norm() < 1e-12);
  }
}

TEST_CASE("sklyanin spectrum vectors", "[rootdata]") {
  const Spectrum s2 = sklyanin_spectrum(2);
  REQUIRE(s2.size() == 3);
  std::vector<RealVec> want{rv({-2, 0}), rv({1, -1}), rv({0, 2})};
  for (const RealVec& w : want) {
    bool found = false;
    for (Index i = 0; i < s2.size(); ++i) found = found || (s2[i] - w).norm() == 0.0;
    CHECK(found);
  }
  CHECK(sklyanin_spectrum(3).size() == 4);
  CHECK(sklyanin_spectrum(3).dimension() == 3);
  CHECK_THROWS_AS(sklyanin_spectrum(1), Error);
}

TEST_CASE("sklyanin spectra satisfy the integrability condition", "[rootdata][property]") {
  for (Index n = 2; n <= 12; ++n) CHECK(kozlov_treshchev_check(sklyanin_spectrum(n)).pass);
}
