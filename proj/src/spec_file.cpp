#include "misolab/spec_file.hpp"

#include <fstream>
#include <sstream>

namespace misolab {

namespace {

using nlohmann::json;

Mode parse_mode(const json& doc) {
  if (!doc.contains("mode")) throw ParseError("spec is missing \"mode\"");
  const auto& m = doc.at("mode");
  if (!m.is_string()) throw ParseError("\"mode\" must be a string");
  const auto s = m.get<std::string>();
  if (s == "exact") return Mode::Exact;
  if (s == "float") return Mode::Float;
  throw ParseError("unknown mode '" + s + "'");
}

Scalar parse_number(const json& n, Mode mode) {
  if (!n.is_number()) throw ParseError("expected a number, got " + n.dump());
  if (mode == Mode::Float) return Scalar::floating(n.get<double>());
  return Scalar::exact(parse_rational(n.dump()));
}

std::size_t parse_size(const json& n, const char* what) {
  if (!n.is_number_integer() || n.get<long long>() < 0) {
    throw ParseError(std::string(what) + " must be a nonnegative integer");
  }
  return n.get<std::size_t>();
}

std::vector<Scalar> parse_entries(const json& arr, Mode mode, const char* what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<Scalar> out;
  for (const auto& e : arr) out.push_back(parse_entry(e, mode));
  return out;
}

json serialize_entries(const std::vector<Scalar>& v) {
  json arr = json::array();
  for (const auto& s : v) arr.push_back(serialize_entry(s));
  return arr;
}

}  // namespace

Scalar parse_entry(const json& entry, Mode mode) {
  if (entry.is_string()) return parse_scalar(entry.get<std::string>(), mode);
  if (entry.is_number()) return parse_number(entry, mode);
  if (entry.is_array() && entry.size() == 2) {
    const Scalar re = parse_number(entry[0], mode);
    const Scalar im = parse_number(entry[1], mode);
    return re + im * Scalar::imag_unit(mode);
  }
  throw ParseError("bad entry " + entry.dump());
}

json serialize_entry(const Scalar& s) {
  if (s.is_exact()) return s.to_string();
  const auto z = s.to_complex();
  return json::array({z.real(), z.imag()});
}

std::vector<Scalar> parse_entry_list(const std::string& text, Mode mode) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_scalar(item, mode));
  if (out.empty()) throw ParseError("empty entry list");
  return out;
}

OperatorSpec parse_spec(const json& doc) {
  if (!doc.is_object()) throw ParseError("spec must be a JSON object");
  OperatorSpec spec;
  spec.mode = parse_mode(doc);
  const int kinds = static_cast<int>(doc.contains("matrix")) +
                    static_cast<int>(doc.contains("jordan_blocks")) +
                    static_cast<int>(doc.contains("shift"));
  if (kinds != 1) {
    throw ParseError("spec needs exactly one of \"matrix\", \"jordan_blocks\", \"shift\"");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "mode" && key != "matrix" && key != "jordan_blocks" && key != "shift" &&
        key != "eigen_hints") {
      throw ParseError("unknown key \"" + key + "\"");
    }
  }

  if (doc.contains("matrix")) {
    spec.kind = OperatorSpec::Kind::Matrix;
    const auto& rows = doc.at("matrix");
    if (!rows.is_array() || rows.empty()) throw ParseError("\"matrix\" must be a nonempty array");
    for (const auto& row : rows) {
      spec.matrix.push_back(parse_entries(row, spec.mode, "matrix row"));
      if (spec.matrix.back().size() != rows.size()) throw ParseError("matrix is not square");
    }
  } else if (doc.contains("jordan_blocks")) {
    spec.kind = OperatorSpec::Kind::JordanBlocks;
    const auto& blocks = doc.at("jordan_blocks");
    if (!blocks.is_array() || blocks.empty()) {
      throw ParseError("\"jordan_blocks\" must be a nonempty array");
    }
    for (const auto& b : blocks) {
      if (!b.is_object() || !b.contains("z") || !b.contains("size")) {
        throw ParseError("Jordan block needs \"z\" and \"size\"");
      }
      const std::size_t size = parse_size(b.at("size"), "Jordan block size");
      if (size == 0) throw ParseError("Jordan block size must be ≥ 1");
      spec.jordan_blocks.push_back({parse_entry(b.at("z"), spec.mode), size});
    }
  } else {
    spec.kind = OperatorSpec::Kind::Shift;
    const auto& s = doc.at("shift");
    if (!s.is_object() || !s.contains("polynomial")) {
      throw ParseError("\"shift\" needs \"polynomial\"");
    }
    spec.polynomial = parse_entries(s.at("polynomial"), spec.mode, "shift polynomial");
    while (!spec.polynomial.empty() && spec.polynomial.back().exactly_zero()) {
      spec.polynomial.pop_back();
    }
    if (spec.polynomial.empty()) throw ParseError("shift polynomial must be nonzero");
    spec.prefix = s.contains("prefix") ? parse_size(s.at("prefix"), "shift prefix") : 0;
  }
  if (doc.contains("eigen_hints")) {
    spec.eigen_hints = parse_entries(doc.at("eigen_hints"), spec.mode, "\"eigen_hints\"");
  }
  return spec;
}

OperatorSpec parse_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_spec(doc);
}

OperatorSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

json serialize_spec(const OperatorSpec& spec) {
  json doc;
  doc["mode"] = std::string(to_string(spec.mode));
  switch (spec.kind) {
    case OperatorSpec::Kind::Matrix: {
      json rows = json::array();
      for (const auto& r : spec.matrix) rows.push_back(serialize_entries(r));
      doc["matrix"] = rows;
      break;
    }
    case OperatorSpec::Kind::JordanBlocks: {
      json blocks = json::array();
      for (const auto& b : spec.jordan_blocks) {
        blocks.push_back({{"z", serialize_entry(b.z)}, {"size", b.size}});
      }
      doc["jordan_blocks"] = blocks;
      break;
    }
    case OperatorSpec::Kind::Shift:
      doc["shift"] = {{"polynomial", serialize_entries(spec.polynomial)},
                      {"prefix", spec.prefix}};
      break;
  }
  if (!spec.eigen_hints.empty()) doc["eigen_hints"] = serialize_entries(spec.eigen_hints);
  return doc;
}

DenseOperator OperatorSpec::dense() const {
  switch (kind) {
    case Kind::Matrix: return DenseOperator::from_rows(matrix);
    case Kind::JordanBlocks: return jordan_sum(jordan_blocks);
    case Kind::Shift: break;
  }
  throw PreconditionError("a weighted-shift spec has no dense matrix");
}

Polynomial OperatorSpec::shift_polynomial() const {
  if (kind != Kind::Shift) throw PreconditionError("spec is not a weighted shift");
  return Polynomial(mode, polynomial);
}

std::size_t OperatorSpec::dim() const {
  switch (kind) {
    case Kind::Matrix: return matrix.size();
    case Kind::JordanBlocks: {
      std::size_t d = 0;
      for (const auto& b : jordan_blocks) d += b.size;
      return d;
    }
    case Kind::Shift: break;
  }
  return 0;
}

bool operator==(const OperatorSpec& a, const OperatorSpec& b) {
  if (a.mode != b.mode || a.kind != b.kind || a.matrix != b.matrix ||
      a.polynomial != b.polynomial || a.prefix != b.prefix ||
      a.eigen_hints != b.eigen_hints || a.jordan_blocks.size() != b.jordan_blocks.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.jordan_blocks.size(); ++i) {
    if (!(a.jordan_blocks[i].z == b.jordan_blocks[i].z) ||
        a.jordan_blocks[i].size != b.jordan_blocks[i].size) {
      return false;
    }
  }
  return true;
}

}  // namespace misolab
