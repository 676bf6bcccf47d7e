#pragma once

// Reports are ordered JSON trees. Text rendering prints one "key: value" line
// per leaf with nested sections indented; --machine prints the JSON itself.

#include <json.hpp>

#include <string>

namespace curv4::cli {

using Report = nlohmann::ordered_json;

/// Finite doubles as numbers, anything else as null.
Report number(double x);

std::string render_text(const Report& report);
std::string render_machine(const Report& report);
std::string render(const Report& report, bool machine);

}  // namespace curv4::cli
