#pragma once

#include "lattice_flows/core.hpp"
#include "lattice_flows/state.hpp"

#include <string>
#include <string_view>

namespace lattice_flows::io {

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Reads {"q":[..],"p":[..]}, {"a":[..],"b":[..]}, {"u":[..]}, {"v":[..]} or {"c":[..]}.
/// Each entry is a number or an [re, im] pair.
State state_from_json(std::string_view text);
std::string state_to_json(const State& s);

/// Nested arrays of [re, im] pairs.
std::string matrix_to_json(const Mat& M);

}  // namespace lattice_flows::io
