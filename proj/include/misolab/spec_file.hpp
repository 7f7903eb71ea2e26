#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "misolab/polynomial.hpp"
#include "misolab/spectral.hpp"

namespace misolab {

/// Parsed operator specification file.
///
///   {"mode": "exact"|"float",
///    "matrix": [[entry, ...], ...]            -- or
///    "jordan_blocks": [{"z": entry, "size": k}, ...]   -- or
///    "shift": {"polynomial": [entry, ...], "prefix": n},
///    "eigen_hints": [entry, ...]}             -- optional
///
/// An entry is a number, a [re, im] pair of numbers or a rational literal
/// string. Exact-mode numbers are read exactly from their decimal text.
struct OperatorSpec {
  enum class Kind { Matrix, JordanBlocks, Shift };

  Mode mode = Mode::Exact;
  Kind kind = Kind::Matrix;
  std::vector<std::vector<Scalar>> matrix;
  std::vector<JordanSpec> jordan_blocks;
  std::vector<Scalar> polynomial;
  std::size_t prefix = 0;
  std::vector<Scalar> eigen_hints;

  bool is_shift() const { return kind == Kind::Shift; }
  /// Dense operator for "matrix" and "jordan_blocks"; throws PreconditionError
  /// for a shift.
  DenseOperator dense() const;
  /// Generator polynomial of a "shift" spec.
  Polynomial shift_polynomial() const;
  std::size_t dim() const;

  friend bool operator==(const OperatorSpec& a, const OperatorSpec& b);
};

/// Throws ParseError on malformed documents and invariant violations.
OperatorSpec parse_spec(const nlohmann::json& doc);
OperatorSpec parse_spec_text(const std::string& text);
OperatorSpec load_spec(const std::string& path);

/// Canonical JSON: Exact entries as rational strings, Float entries as
/// [re, im] pairs.
nlohmann::json serialize_spec(const OperatorSpec& spec);

/// Single entry (number, [re, im] or literal) in the given mode.
Scalar parse_entry(const nlohmann::json& entry, Mode mode);
nlohmann::json serialize_entry(const Scalar& s);

/// Comma-separated entries, e.g. "1,0" or "i,1/2-3i".
std::vector<Scalar> parse_entry_list(const std::string& text, Mode mode);

}  // namespace misolab
