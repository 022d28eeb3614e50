#pragma once

#include <optional>
#include <string>

namespace playbench::metrics {

// Rounds half away from zero on the shortest decimal form of `value`, so
// 86.925 becomes "86.93" even though its binary value is slightly below.
// Always prints `decimals` digits; NaN prints "nan".
std::string format_fixed(double value, int decimals = 2);
std::string format_fixed(const std::optional<double>& value, int decimals = 2);

// Same rounding, trailing zeros dropped but one decimal kept: "100.0", "99.44".
std::string format_short(double value, int decimals = 2);

// The rounded value as a double.
double round_half_away(double value, int decimals = 2);

std::string csv_escape(const std::string& field);

}  // namespace playbench::metrics
