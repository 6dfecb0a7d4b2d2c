#pragma once

#include <string>

#include "dualspace/types.hpp"

namespace dualspace {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double x);

/// Coefficient in expression syntax: a plain decimal when the imaginary part
/// is zero, otherwise "(re,im)".
std::string format_complex_coefficient(Complex z);

}  // namespace dualspace
