#pragma once

#include <stdexcept>
#include <string>

namespace rfso {

// Thrown when an evaluation cannot reach its accuracy target (divergent
// contour, non-convergent quadrature, out-of-range closed form). Construction
// and domain violations use std::invalid_argument / std::domain_error.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rfso
