#pragma once

#include <stdexcept>
#include <string>

namespace riskrank {

// Every failure the library can raise, grouped by who is at fault:
// input errors mean the caller handed us bad data (files, flags, schemas),
// computation errors mean the data was well formed but the math has no
// defined answer for it. The CLI maps the former to exit 2, the latter to 1.
enum class errc {
  // input / schema
  file_not_found,
  parse_error,
  schema_error,
  invalid_ifn,
  unit_mismatch,
  weight_mismatch,
  bad_weights,
  bad_level,
  bad_range,
  bad_argument,
  ordering_violation,
  uncovered_pair,
  extrapolation_outside_domain,
  metric_mismatch,
  missing_distribution,
  pairing_error,
  // computation
  empty_input,
  all_criteria_uninformative,
  degenerate_scores,
  too_few_samples,
  zero_actual,
  zero_dispersion,
  no_downside,
  zero_base,
  constant_column,
  not_enough_neighbors,
  all_missing_column,
  too_short_series,
  zero_variance_series,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::file_not_found: return "file_not_found";
    case errc::parse_error: return "parse_error";
    case errc::schema_error: return "schema_error";
    case errc::invalid_ifn: return "invalid_ifn";
    case errc::unit_mismatch: return "unit_mismatch";
    case errc::weight_mismatch: return "weight_mismatch";
    case errc::bad_weights: return "bad_weights";
    case errc::bad_level: return "bad_level";
    case errc::bad_range: return "bad_range";
    case errc::bad_argument: return "bad_argument";
    case errc::ordering_violation: return "ordering_violation";
    case errc::uncovered_pair: return "uncovered_pair";
    case errc::extrapolation_outside_domain: return "extrapolation_outside_domain";
    case errc::metric_mismatch: return "metric_mismatch";
    case errc::missing_distribution: return "missing_distribution";
    case errc::pairing_error: return "pairing_error";
    case errc::empty_input: return "empty_input";
    case errc::all_criteria_uninformative: return "all_criteria_uninformative";
    case errc::degenerate_scores: return "degenerate_scores";
    case errc::too_few_samples: return "too_few_samples";
    case errc::zero_actual: return "zero_actual";
    case errc::zero_dispersion: return "zero_dispersion";
    case errc::no_downside: return "no_downside";
    case errc::zero_base: return "zero_base";
    case errc::constant_column: return "constant_column";
    case errc::not_enough_neighbors: return "not_enough_neighbors";
    case errc::all_missing_column: return "all_missing_column";
    case errc::too_short_series: return "too_short_series";
    case errc::zero_variance_series: return "zero_variance_series";
  }
  return "unknown";
}

inline constexpr bool is_input_error(errc c) {
  switch (c) {
    case errc::file_not_found:
    case errc::parse_error:
    case errc::schema_error:
    case errc::invalid_ifn:
    case errc::unit_mismatch:
    case errc::weight_mismatch:
    case errc::bad_weights:
    case errc::bad_level:
    case errc::bad_range:
    case errc::bad_argument:
    case errc::ordering_violation:
    case errc::uncovered_pair:
    case errc::extrapolation_outside_domain:
    case errc::metric_mismatch:
    case errc::missing_distribution:
    case errc::pairing_error:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  errc code() const noexcept { return code_; }
  bool input() const noexcept { return is_input_error(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool cond, errc code, const std::string& msg) {
  if (!cond) raise(code, msg);
}

}  // namespace riskrank
