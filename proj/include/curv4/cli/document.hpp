#pragma once

// Input documents (JSON):
//
//   {"format_version": 1, "tol": 1e-9,
//    "berger": {"lambda": 1, "a": [a1, a2, a3], "b": [b1, b2, b3]}}
//
//   {"format_version": 1,
//    "riemann": {"components": [{"indices": [1, 2, 1, 2], "value": 1}, ...]}}
//
// Riemann indices are 1-based with R(i,j,i,j) = K(e_i, e_j). Components not
// listed are filled from the listed ones by the curvature symmetries; a
// component listed twice (directly or through a symmetry) with values that
// differ by more than tol is an error.

#include "curv4/berger.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string_view>

namespace curv4::cli {

inline constexpr int kFormatVersion = 1;

struct InputDocument {
  int format_version = kFormatVersion;
  std::optional<double> tol;
  std::optional<BergerForm> berger;
  std::optional<RiemannTensor4> riemann;

  /// The tensor described by the document (reconstructed for Berger input).
  RiemannTensor4 tensor() const;
  /// The Berger form; throws NonEinsteinError for non-Einstein Riemann input.
  BergerForm berger_form(double tol) const;
};

/// Throws ParseError on malformed input, invalid Berger data or a tensor
/// that violates the curvature symmetries.
InputDocument parse_document(std::string_view text, double tol = kDefaultTol);
InputDocument load_document(const std::filesystem::path& path, double tol = kDefaultTol);

/// Canonical document: Berger data as given, or one component per symmetry
/// orbit (i < j, k < l, (i,j) <= (k,l)) with nonzero value.
nlohmann::ordered_json emit_document(const InputDocument& doc);
nlohmann::ordered_json emit_berger(const BergerForm& bf);

}  // namespace curv4::cli
