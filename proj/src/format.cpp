#include "fvpg/format.hpp"

#include <charconv>
#include <cmath>

namespace fvpg {

namespace {

std::string to_chars_string(double v, bool fixed_precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = fixed_precision
                       ? std::to_chars(buf, buf + sizeof buf, v,
                                       std::chars_format::general, 17)
                       : std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string format_double(double v) { return to_chars_string(v, false); }

std::string format_double17(double v) { return to_chars_string(v, true); }

}  // namespace fvpg
