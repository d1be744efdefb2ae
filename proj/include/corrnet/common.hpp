#pragma once

#include <stdexcept>
#include <string>

namespace corrnet {

inline constexpr const char* kVersion = "0.1.0";

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (bad date, bad number); carries a 1-based line number.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line)
      : Error("parse error at line " + std::to_string(line) + ": " + msg),
        line_number(line) {}
  std::size_t line_number;
};

// Structurally wrong input file (missing section, wrong column count).
struct FormatError : Error {
  using Error::Error;
};

// Requested date range not covered by the data.
struct CoverageError : Error {
  using Error::Error;
};

// Data failed validation (missing cells in range, etc).
struct ValidationError : Error {
  using Error::Error;
};

// API misuse: arguments violate a documented precondition.
struct InputError : Error {
  using Error::Error;
};

// Numerical estimation failed; names the month and stage where it happened.
struct EstimationError : Error {
  EstimationError(const std::string& stage, const std::string& month,
                  const std::string& msg)
      : Error(stage + " failed at " + month + ": " + msg),
        stage(stage),
        month(month) {}
  std::string stage;
  std::string month;
};

}  // namespace corrnet
