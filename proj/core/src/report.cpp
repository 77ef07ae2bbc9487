#include "aitlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aitlab {

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check& Report::at(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("report '" + title + "' has no check named " + name);
}

bool Report::has(const std::string& name) const {
  return std::any_of(checks.begin(), checks.end(),
                     [&](const Check& c) { return c.name == name; });
}

Check& Report::add(Check check) {
  checks.push_back(std::move(check));
  return checks.back();
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& c : other.checks) {
    Check copy = c;
    copy.name = prefix + c.name;
    checks.push_back(std::move(copy));
  }
  for (const auto& [name, points] : other.series) series[prefix + name] = points;
}

Check make_check(std::string name, double residual, double tolerance, std::string note) {
  Check c;
  c.name = std::move(name);
  c.worst_residual = residual;
  c.tolerance = tolerance;
  c.pass = !std::isnan(residual) && residual <= tolerance;
  c.note = std::move(note);
  return c;
}

}  // namespace aitlab
