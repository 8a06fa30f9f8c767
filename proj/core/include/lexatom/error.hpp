#pragma once

#include <stdexcept>
#include <string>

namespace lexatom {

enum class ErrorKind {
  empty_corpus,
  insufficient_entries,
  length_exceeds_max,
  invalid_character,
  sample_too_small,
  single_class,
  dimension_mismatch,
  minority_too_small,
  class_smaller_than_folds,
  length_mismatch,
  degenerate,
  too_few_values,
  zero_variance,
  io,
  parse,
  invalid_argument,
};

const char* to_string(ErrorKind kind) noexcept;

// All library failures are reported through this type; `kind()` lets callers
// and tests distinguish the failure without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lexatom
