#pragma once
#include <stdexcept>
#include <string>

namespace halfrib {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivideByZeroError : Error {
  explicit DivideByZeroError(const std::string& msg) : Error(msg) {}
};

struct PoleError : Error {
  explicit PoleError(const std::string& msg) : Error(msg) {}
};

// Lexical/grammar/boundary problems in the tangle DSL; carries a source location.
struct ParseError : Error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : Error("line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg),
        line(line_), col(col_) {}
};

struct BoundaryError : Error {
  explicit BoundaryError(const std::string& msg) : Error(msg) {}
};

}  // namespace halfrib
