#include "curv4/cli/report.hpp"

#include <cmath>
#include <cstdio>

namespace curv4::cli {

namespace {

std::string scalar(const Report& v) {
  if (v.is_null()) return "n/a";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number_float()) {
    char buf[32];
    const double x = v.get<double>();
    std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_flat(const Report& v) { return !v.is_object() && !v.is_array(); }

bool is_flat_array(const Report& v) {
  if (!v.is_array()) return false;
  for (const Report& e : v)
    if (!is_flat(e)) return false;
  return true;
}

std::string inline_array(const Report& v) {
  std::string out = "[";
  bool first = true;
  for (const Report& e : v) {
    if (!first) out += ", ";
    first = false;
    out += scalar(e);
  }
  return out + "]";
}

void render_into(std::string& out, const Report& v, int indent);

void render_value(std::string& out, const std::string& prefix, const Report& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_flat(v)) {
    out += pad + prefix + " " + scalar(v) + "\n";
  } else if (is_flat_array(v)) {
    out += pad + prefix + " " + inline_array(v) + "\n";
  } else if (v.is_array()) {
    out += pad + prefix + "\n";
    for (const Report& e : v) {
      if (e.is_object()) {
        out += pad + "  -\n";
        render_into(out, e, indent + 4);
      } else {
        render_value(out, "-", e, indent + 2);
      }
    }
  } else {
    out += pad + prefix + "\n";
    render_into(out, v, indent + 2);
  }
}

void render_into(std::string& out, const Report& v, int indent) {
  for (const auto& [key, value] : v.items()) render_value(out, key + ":", value, indent);
}

}  // namespace

Report number(double x) {
  if (!std::isfinite(x)) return Report(nullptr);
  return Report(x == 0.0 ? 0.0 : x);
}

std::string render_text(const Report& report) {
  std::string out;
  if (report.is_object())
    render_into(out, report, 0);
  else
    render_value(out, "-", report, 0);
  return out;
}

std::string render_machine(const Report& report) { return report.dump(2) + "\n"; }

std::string render(const Report& report, bool machine) {
  return machine ? render_machine(report) : render_text(report);
}

}  // namespace curv4::cli
