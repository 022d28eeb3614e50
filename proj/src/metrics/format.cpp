#include "playbench/metrics/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string_view>

namespace playbench::metrics {

std::string format_fixed(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";

  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof buf, std::fabs(value), std::chars_format::fixed);
  std::string digits(buf, res.ptr);
  size_t dot = digits.find('.');
  if (dot == std::string::npos) {
    dot = digits.size();
    digits += '.';
  }
  std::string frac = digits.substr(dot + 1);
  std::string whole = digits.substr(0, dot);
  const bool round_up = frac.size() > static_cast<size_t>(decimals) && frac[decimals] >= '5';
  frac.resize(decimals, '0');

  std::string number = whole + frac;  // implied decimal point `decimals` from the right
  if (round_up) {
    int i = static_cast<int>(number.size()) - 1;
    while (i >= 0 && number[i] == '9') number[i--] = '0';
    if (i < 0)
      number.insert(number.begin(), '1');
    else
      ++number[i];
  }
  std::string out = number.substr(0, number.size() - decimals);
  if (decimals > 0) out += "." + number.substr(number.size() - decimals);
  const bool zero = out.find_first_not_of("0.") == std::string::npos;
  if (value < 0 && !zero) out.insert(out.begin(), '-');
  return out;
}

std::string format_fixed(const std::optional<double>& value, int decimals) {
  return value ? format_fixed(*value, decimals) : "nan";
}

std::string format_short(double value, int decimals) {
  std::string s = format_fixed(value, decimals);
  if (s.find('.') == std::string::npos) return s;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s += '0';
  return s;
}

double round_half_away(double value, int decimals) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_fixed(value, decimals).c_str(), nullptr);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace playbench::metrics
