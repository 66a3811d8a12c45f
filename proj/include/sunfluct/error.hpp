#pragma once

#include <stdexcept>
#include <string>

namespace sunfluct {

// Failure categories. The CLI maps these onto exit codes:
// config errors -> 2, data errors -> 3, analysis degeneracies -> 4.
enum class errc {
  // configuration / arguments
  bad_config,
  invalid_argument,
  invalid_spec,
  // data
  io_failure,
  malformed_line,
  non_monotonic_date,
  negative_area,
  gap_found,
  date_before_epoch,
  uncovered_rotation,
  empty_rotation,
  // degeneracy
  series_too_short,
  constant_series,
  degenerate_sample,
  sample_too_small,
  sample_too_large,
  degenerate_abscissae,
};

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  errc kind() const { return kind_; }

 private:
  errc kind_;
};

inline const char* errc_name(errc k) {
  switch (k) {
    case errc::bad_config: return "bad_config";
    case errc::invalid_argument: return "invalid_argument";
    case errc::invalid_spec: return "invalid_spec";
    case errc::io_failure: return "io_failure";
    case errc::malformed_line: return "malformed_line";
    case errc::non_monotonic_date: return "non_monotonic_date";
    case errc::negative_area: return "negative_area";
    case errc::gap_found: return "gap_found";
    case errc::date_before_epoch: return "date_before_epoch";
    case errc::uncovered_rotation: return "uncovered_rotation";
    case errc::empty_rotation: return "empty_rotation";
    case errc::series_too_short: return "series_too_short";
    case errc::constant_series: return "constant_series";
    case errc::degenerate_sample: return "degenerate_sample";
    case errc::sample_too_small: return "sample_too_small";
    case errc::sample_too_large: return "sample_too_large";
    case errc::degenerate_abscissae: return "degenerate_abscissae";
  }
  return "unknown";
}

// Exit code classes used by the CLI.
inline int exit_code_for(errc k) {
  switch (k) {
    case errc::bad_config:
    case errc::invalid_argument:
    case errc::invalid_spec:
      return 2;
    case errc::io_failure:
    case errc::malformed_line:
    case errc::non_monotonic_date:
    case errc::negative_area:
    case errc::gap_found:
    case errc::date_before_epoch:
    case errc::uncovered_rotation:
    case errc::empty_rotation:
      return 3;
    default:
      return 4;
  }
}

}  // namespace sunfluct
