#include "lexatom/error.hpp"

namespace lexatom {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::empty_corpus: return "empty_corpus";
    case ErrorKind::insufficient_entries: return "insufficient_entries";
    case ErrorKind::length_exceeds_max: return "length_exceeds_max";
    case ErrorKind::invalid_character: return "invalid_character";
    case ErrorKind::sample_too_small: return "sample_too_small";
    case ErrorKind::single_class: return "single_class";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::minority_too_small: return "minority_too_small";
    case ErrorKind::class_smaller_than_folds: return "class_smaller_than_folds";
    case ErrorKind::length_mismatch: return "length_mismatch";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::too_few_values: return "too_few_values";
    case ErrorKind::zero_variance: return "zero_variance";
    case ErrorKind::io: return "io";
    case ErrorKind::parse: return "parse";
    case ErrorKind::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

}  // namespace lexatom
