#include "curv4/cli/document.hpp"

#include "curv4/errors.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace curv4::cli {

namespace {

using json = nlohmann::json;

struct Slot {
  int index;
  double sign;
};

// The eight positions related to (i,j,k,l) by antisymmetry and pair symmetry.
std::array<Slot, 8> orbit(int i, int j, int k, int l) {
  auto f = RiemannTensor4::flat_index;
  return {{{f(i, j, k, l), 1.0},
           {f(j, i, k, l), -1.0},
           {f(i, j, l, k), -1.0},
           {f(j, i, l, k), 1.0},
           {f(k, l, i, j), 1.0},
           {f(l, k, i, j), -1.0},
           {f(k, l, j, i), -1.0},
           {f(l, k, j, i), 1.0}}};
}

Triple read_triple(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3)
    throw ParseError(std::string("berger.") + key + " must be an array of three numbers");
  Triple t{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[key][i].is_number()) throw ParseError(std::string("berger.") + key + " entries must be numbers");
    t[i] = j[key][i].get<double>();
  }
  return t;
}

BergerForm parse_berger(const json& j, double tol) {
  if (!j.is_object()) throw ParseError("berger must be an object");
  if (!j.contains("lambda") || !j["lambda"].is_number()) throw ParseError("berger.lambda must be a number");
  try {
    return BergerForm(read_triple(j, "a"), read_triple(j, "b"), j["lambda"].get<double>(), tol);
  } catch (const InvariantError& e) {
    throw ParseError("invalid Berger data, violates " + e.constraint());
  }
}

RiemannTensor4 parse_riemann(const json& j, double tol) {
  if (!j.is_object() || !j.contains("components") || !j["components"].is_array())
    throw ParseError("riemann.components must be an array");
  RiemannTensor4::Components c{};
  std::array<bool, 256> set{};
  std::size_t n = 0;
  for (const json& entry : j["components"]) {
    ++n;
    const std::string where = "riemann.components[" + std::to_string(n - 1) + "]";
    if (!entry.is_object() || !entry.contains("indices") || !entry["indices"].is_array() ||
        entry["indices"].size() != 4)
      throw ParseError(where + ": indices must be four integers");
    if (!entry.contains("value") || !entry["value"].is_number())
      throw ParseError(where + ": value must be a number");
    std::array<int, 4> idx{};
    for (std::size_t s = 0; s < 4; ++s) {
      const json& x = entry["indices"][s];
      if (!x.is_number_integer()) throw ParseError(where + ": indices must be integers");
      const int v = x.get<int>();
      if (v < 1 || v > kDim) throw ParseError(where + ": indices must lie in 1..4");
      idx[s] = v - 1;
    }
    const double value = entry["value"].get<double>();
    if (!std::isfinite(value)) throw ParseError(where + ": value must be finite");
    if ((idx[0] == idx[1] || idx[2] == idx[3]) && std::abs(value) > tol)
      throw ParseError(where + ": component vanishes by antisymmetry");
    for (const Slot& s : orbit(idx[0], idx[1], idx[2], idx[3])) {
      const auto p = static_cast<std::size_t>(s.index);
      const double v = s.sign * value;
      if (set[p] && std::abs(c[p] - v) > tol)
        throw ParseError(where + ": conflicts with an earlier component");
      if (!set[p]) {
        c[p] = v;
        set[p] = true;
      }
    }
  }
  // Entries such as R(1,1,k,l) were only checked against zero.
  for (int i = 0; i < kDim; ++i)
    for (int k = 0; k < kDim; ++k)
      for (int l = 0; l < kDim; ++l) {
        c[static_cast<std::size_t>(RiemannTensor4::flat_index(i, i, k, l))] = 0.0;
        c[static_cast<std::size_t>(RiemannTensor4::flat_index(k, l, i, i))] = 0.0;
      }
  try {
    return RiemannTensor4::checked(c, tol);
  } catch (const InvariantError& e) {
    throw ParseError("riemann components violate " + e.constraint());
  }
}

double roundoff_clean(double x) { return x == 0.0 ? 0.0 : x; }

}  // namespace

RiemannTensor4 InputDocument::tensor() const {
  if (riemann) return *riemann;
  return berger_to_tensor(*berger);
}

BergerForm InputDocument::berger_form(double tol) const {
  if (berger) return *berger;
  const DualityBlocks blocks = duality_blocks(to_operator(*riemann));
  try {
    return extract_berger(blocks, tol);
  } catch (const InvariantError& e) {
    throw ParseError("Einstein tensor outside the supported range, violates " + e.constraint());
  }
}

InputDocument parse_document(std::string_view text, double tol) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  InputDocument doc;
  if (!j.contains("format_version") || !j["format_version"].is_number_integer())
    throw ParseError("format_version must be an integer");
  doc.format_version = j["format_version"].get<int>();
  if (doc.format_version != kFormatVersion)
    throw ParseError("unsupported format_version " + std::to_string(doc.format_version));
  if (j.contains("tol")) {
    if (!j["tol"].is_number() || !(j["tol"].get<double>() > 0.0)) throw ParseError("tol must be a positive number");
    doc.tol = j["tol"].get<double>();
  }
  const double t = doc.tol.value_or(tol);
  const bool has_b = j.contains("berger");
  const bool has_r = j.contains("riemann");
  if (has_b == has_r) throw ParseError("document needs exactly one of \"berger\" or \"riemann\"");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "format_version" && key != "tol" && key != "berger" && key != "riemann")
      throw ParseError("unknown key \"" + key + "\"");
  }
  if (has_b)
    doc.berger = parse_berger(j["berger"], t);
  else
    doc.riemann = parse_riemann(j["riemann"], t);
  return doc;
}

InputDocument load_document(const std::filesystem::path& path, double tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), tol);
}

nlohmann::ordered_json emit_berger(const BergerForm& bf) {
  nlohmann::ordered_json b;
  b["lambda"] = bf.lambda();
  b["a"] = {roundoff_clean(bf.a()[0]), roundoff_clean(bf.a()[1]), roundoff_clean(bf.a()[2])};
  b["b"] = {roundoff_clean(bf.b()[0]), roundoff_clean(bf.b()[1]), roundoff_clean(bf.b()[2])};
  return b;
}

nlohmann::ordered_json emit_document(const InputDocument& doc) {
  nlohmann::ordered_json out;
  out["format_version"] = doc.format_version;
  if (doc.tol) out["tol"] = *doc.tol;
  if (doc.berger) {
    out["berger"] = emit_berger(*doc.berger);
    return out;
  }
  nlohmann::ordered_json comps = nlohmann::ordered_json::array();
  std::vector<std::array<int, 2>> pairs;
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) pairs.push_back({i, j});
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t q = p; q < pairs.size(); ++q) {
      const auto& x = pairs[p];
      const auto& y = pairs[q];
      const double v = (*doc.riemann)(x[0], x[1], y[0], y[1]);
      if (v == 0.0) continue;
      comps.push_back({{"indices", {x[0] + 1, x[1] + 1, y[0] + 1, y[1] + 1}}, {"value", v}});
    }
  out["riemann"] = {{"components", comps}};
  return out;
}

}  // namespace curv4::cli
