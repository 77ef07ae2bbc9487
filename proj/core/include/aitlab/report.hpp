#pragma once

#include <map>
#include <string>
#include <vector>

#include "aitlab/types.hpp"

namespace aitlab {

/// One named check inside a report. `worst_residual` is compared against `tolerance`.
struct Check {
  std::string name;
  bool pass = true;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  std::string note;
  std::vector<Complex> witness;  // coordinates of a failing input, if any
};

/// A sampled sequence, e.g. n -> beta(Phi^n v_delta, Phi^n v_delta), with the q^n-normalized value.
struct SeriesPoint {
  int n = 0;
  Complex value;
  double value_over_qn = 0.0;
};

struct Report {
  std::string title;
  std::vector<Check> checks;
  std::map<std::string, std::vector<SeriesPoint>> series;

  bool all_pass() const;
  /// Throws std::out_of_range when no check carries this name.
  const Check& at(const std::string& name) const;
  bool has(const std::string& name) const;
  Check& add(Check check);
  /// Appends all checks of `other`, prefixing names with `prefix`.
  void merge(const Report& other, const std::string& prefix = {});
};

/// Builds a check from a residual: pass iff residual <= tolerance (NaN fails).
Check make_check(std::string name, double residual, double tolerance, std::string note = {});

}  // namespace aitlab
