#pragma once

#include <stdexcept>
#include <string>

namespace ds {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid domain objects or requests: bad frames, masses, tables, chains.
struct model_error : error {
  using error::error;
};

// Dempster combination annihilated (nearly) all mass.
struct conflict_error : error {
  using error::error;
};

// Power-set enumeration guard exceeded.
struct enumeration_error : error {
  using error::error;
};

// DSL syntax or name-resolution failure, with 1-based location.
struct parse_error : error {
  int line;
  int column;

  parse_error(int line_, int column_, const std::string& msg)
      : error(std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
        line(line_),
        column(column_) {}
};

}  // namespace ds
