#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

namespace playbench {

using TemplateParams = std::map<std::string, std::string>;

// Replaces every `$NAME$` slot (NAME = [A-Z0-9_]+) with its binding. Throws
// MissingParam for the first unbound slot; unused bindings are ignored.
// Substituted values are not rescanned.
std::string instantiate_prompt(std::string_view tmpl, const TemplateParams& params);

// Names of all `$NAME$` slots in the template.
std::set<std::string> placeholders(std::string_view tmpl);

}  // namespace playbench
