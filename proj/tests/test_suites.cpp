#include "lattice_flows/suites.hpp"

#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdlib>

using namespace lattice_flows;
using namespace lattice_flows::suites;

TEST_CASE("suite names", "[suites]") {
  const auto& names = suite_names();
  for (const char* s : {"lax", "jacobi", "compat", "casimir", "lenard", "transform", "involution", "spectrum"})
    CHECK(std::find(names.begin(), names.end(), s) != names.end());
  CHECK_THROWS_AS(run_suite("nope", Options{}), UnsupportedDimension);
}

TEST_CASE("reports are deterministic", "[suites]") {
  Options o;
  o.states = 5;
  o.seed = 7;
  o.chart = "ab";
  o.m = 3;
  const std::string first = report_json("lenard", o, run_suite("lenard", o));
  o.threads = 1;
  const std::string serial = report_json("lenard", o, run_suite("lenard", o));
  CHECK(first == serial);
  o.seed = 8;
  CHECK(report_json("lenard", o, run_suite("lenard", o)) != first);

  const auto doc = nlohmann::json::parse(first);
  CHECK(doc["schema"] == 1);
  CHECK(doc["rng"] == "mt19937_64");
  CHECK(doc["seed"] == 7);
  CHECK(doc["suite"] == "lenard");
  CHECK(doc["pass"] == true);
  for (const auto& r : doc["records"]) {
    CHECK(r.contains("structure"));
    CHECK(r.contains("check"));
    CHECK(r["n_states"] == 5);
    CHECK(r["max_residual"].get<double>() < r["tolerance"].get<double>());
  }
}

TEST_CASE("selected sweeps", "[suites]") {
  Options o;
  o.states = 3;
  o.system = "vd";
  o.n = 7;
  const auto lax = run_suite("lax", o);
  REQUIRE(lax.size() == 1);
  CHECK(lax.front().pass);

  Options s;
  s.spectrum = rootdata::sklyanin_spectrum(4);
  const auto spec = run_suite("spectrum", s);
  REQUIRE(spec.size() == 1);
  CHECK(spec.front().pass);
  CHECK_FALSE(spec.front().ratios.empty());
}

TEST_CASE("spectrum suite reports a failing ratio", "[suites]") {
  auto vectors = rootdata::sklyanin_spectrum(3).vectors();
  vectors.push_back((RealVec(3) << 1, 1, 0).finished());
  Options o;
  o.spectrum = rootdata::Spectrum(3, vectors);
  const auto rec = run_suite("spectrum", o);
  REQUIRE(rec.size() == 1);
  CHECK_FALSE(rec.front().pass);
}

TEST_CASE("parallel evaluation keeps index order", "[suites]") {
  const auto out = evaluate_parallel(100, [](Index i) { return static_cast<double>(i * i); }, 4);
  REQUIRE(out.size() == 100);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<double>(i * i));
  CHECK(evaluate_parallel(0, [](Index) { return 1.0; }, 4).empty());
}

TEST_CASE("thread limit honours the environment", "[suites]") {
  setenv("LATTICE_FLOWS_THREADS", "1", 1);
  CHECK(thread_limit() == 1u);
  setenv("LATTICE_FLOWS_THREADS", "junk", 1);
  CHECK(thread_limit() >= 1u);
  unsetenv("LATTICE_FLOWS_THREADS");
  CHECK(thread_limit() >= 1u);
}
