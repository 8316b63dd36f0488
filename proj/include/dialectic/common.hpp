#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace dialectic {

using idx = std::uint32_t;
inline constexpr idx npos = std::numeric_limits<idx>::max();

// exhaustive validators assume carriers at most this large
inline constexpr std::size_t default_carrier_bound = 1024;

enum class exec { serial, parallel };

struct model_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a homset lacks a lattice operation the caller needs
struct capability_error : model_error {
  using model_error::model_error;
};

struct type_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct shape_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct parse_error : std::runtime_error {
  parse_error(std::string file, int line, int col, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + what),
        line(line), col(col) {}
  int line;
  int col;
};

}  // namespace dialectic
