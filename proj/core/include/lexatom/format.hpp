#pragma once

#include <string>

namespace lexatom {

/// Shortest text that parses back to the same double ("%.17g").
std::string format_exact(double value);
/// Fixed-point with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

}  // namespace lexatom
