#pragma once

#include "lattice_flows/core.hpp"
#include "lattice_flows/rootdata.hpp"
#include "lattice_flows/state.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lattice_flows::suites {

struct Record {
  std::string structure;
  std::string check;
  Index n_states = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<rootdata::RatioViolation> ratios;  // spectrum suite only
};

/// Selection flags for a suite. Unset fields select the suite's full default sweep.
struct Options {
  std::optional<Index> states;
  std::uint64_t seed = 1;
  std::optional<Index> n;
  std::optional<Index> m;
  std::string system;     // lax: km | toda | vd | ab
  std::string structure;  // jacobi, casimir: a structure name
  std::string chart;      // lenard: v | ab
  std::string map;        // transform: henon | moser | d-map | flaschka-* | c-to-v
  std::vector<double> lambdas;
  std::optional<rootdata::Spectrum> spectrum;
  unsigned threads = 0;  // 0: thread_limit()
};

const std::vector<std::string>& suite_names();

/// Runs one named suite; throws UnsupportedDimension for an unknown name or selection.
std::vector<Record> run_suite(std::string_view suite, const Options& options);

/// {"schema":1,"rng":..,"seed":..,"suite":..,"records":[..],"pass":..}; deterministic.
std::string report_json(std::string_view suite, const Options& options,
                        const std::vector<Record>& records);

/// Hardware concurrency, capped by LATTICE_FLOWS_THREADS when it is a positive integer.
unsigned thread_limit();

/// residual(i) for i < count on up to `threads` workers; results in index order.
std::vector<double> evaluate_parallel(Index count, const std::function<double(Index)>& residual,
                                      unsigned threads);

}  // namespace lattice_flows::suites
