#pragma once

#include <string>

namespace tagdiff {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_shortest(double value);
/// Fixed-point with `digits` decimals.
std::string format_fixed(double value, int digits);

}  // namespace tagdiff
