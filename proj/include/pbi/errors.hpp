#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pbi {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two records in one dataset share a pub_id.
class DuplicatePublication : public Error {
 public:
  using Error::Error;
};

// A dataset or field with no publications.
class EmptyDataset : public Error {
 public:
  using Error::Error;
};

// segment(i) requested for a citation count with c_i = 0.
class UndefinedSegment : public Error {
 public:
  using Error::Error;
};

// Per-publication score requested for a citation count with c_i = 0.
class UndefinedScore : public Error {
 public:
  using Error::Error;
};

// A percentile scheme violating one of its invariants.
class InvalidScheme : public Error {
 public:
  using Error::Error;
};

// Group indicator requested for a group without publications.
class EmptyGroup : public Error {
 public:
  using Error::Error;
};

// A group member whose field or citation count is missing from the
// distributions it is being scored against.
class InconsistentDataset : public Error {
 public:
  using Error::Error;
};

// A top-x%-only approach applied to a general percentile scheme.
class ApproachSchemeMismatch : public Error {
 public:
  using Error::Error;
};

// Structurally malformed input (CSV row, JSON document, rational literal).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  // 1-based input line, 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input with an invalid value (negative citations, empty id).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message, std::size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pbi
