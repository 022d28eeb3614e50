#include "playbench/engine/template.hpp"

#include "playbench/errors.hpp"

namespace playbench {

namespace {

bool is_name_char(char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_'; }

// Length of the NAME in a slot starting at `pos` (which holds '$'), or 0.
size_t slot_name_length(std::string_view s, size_t pos) {
  size_t i = pos + 1;
  while (i < s.size() && is_name_char(s[i])) ++i;
  if (i == pos + 1 || i >= s.size() || s[i] != '$') return 0;
  return i - pos - 1;
}

}  // namespace

std::string instantiate_prompt(std::string_view tmpl, const TemplateParams& params) {
  std::string out;
  out.reserve(tmpl.size());
  size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '$') {
      if (size_t n = slot_name_length(tmpl, i)) {
        std::string name(tmpl.substr(i + 1, n));
        auto it = params.find(name);
        if (it == params.end()) throw MissingParam(name);
        out += it->second;
        i += n + 2;
        continue;
      }
    }
    out += tmpl[i++];
  }
  return out;
}

std::set<std::string> placeholders(std::string_view tmpl) {
  std::set<std::string> names;
  size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '$') {
      if (size_t n = slot_name_length(tmpl, i)) {
        names.emplace(tmpl.substr(i + 1, n));
        i += n + 2;
        continue;
      }
    }
    ++i;
  }
  return names;
}

}  // namespace playbench
