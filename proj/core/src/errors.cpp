#include "aitlab/errors.hpp"

namespace aitlab {

SpecViolation::SpecViolation(std::string axiom, const std::string& detail)
    : Error(ErrorCategory::Spec, "spec violation (" + axiom + "): " + detail),
      axiom_(std::move(axiom)) {}

}  // namespace aitlab
