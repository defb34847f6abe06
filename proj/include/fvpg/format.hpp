#ifndef FVPG_FORMAT_HPP
#define FVPG_FORMAT_HPP

#include <string>

namespace fvpg {

/// Shortest decimal string that parses back to exactly the same double.
/// Locale independent ('.' decimal point).
std::string format_double(double v);

/// Fixed 17-significant-digit form, used by the CSV outputs.
std::string format_double17(double v);

}  // namespace fvpg

#endif
