#include "dualspace/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace dualspace {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string format_complex_coefficient(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  return "(" + format_double(z.real()) + "," + format_double(z.imag()) + ")";
}

}  // namespace dualspace
