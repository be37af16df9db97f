#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace apw {

// Load/parse failure with a machine-checkable reason.
class ParseError : public std::runtime_error {
public:
  enum class Kind {
    EmptyCorpus,
    RaggedRow,
    NonNumeric,
    ScoreOutOfRange,
    Malformed,
  };

  ParseError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

class DimensionMismatch : public std::invalid_argument {
public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : std::invalid_argument("feature dimension mismatch: expected " +
                              std::to_string(expected) + ", got " +
                              std::to_string(got)) {}
};

}  // namespace apw
