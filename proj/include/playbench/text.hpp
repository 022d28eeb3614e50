#pragma once

// Small string helpers shared by the parsers. ASCII-only case folding: the
// locale packs carry their own keywords, so non-ASCII text is compared as-is.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace playbench::text {

std::string_view trim(std::string_view s);
std::string_view trim_right(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool istarts_with(std::string_view s, std::string_view prefix);

std::vector<std::string_view> split_lines(std::string_view s);
std::vector<std::string_view> split_whitespace(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Strips leading and trailing ASCII punctuation.
std::string_view strip_punct(std::string_view s);

// UTF-8 code points as separate strings. Invalid bytes come back one byte each.
std::vector<std::string> utf8_chars(std::string_view s);
std::u32string utf8_decode(std::string_view s);

// Terminal cell width of a single code point: 0, 1 or 2.
int display_width(char32_t cp);

}  // namespace playbench::text
