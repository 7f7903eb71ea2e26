#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>
#include <string>

#include "misolab/generators.hpp"
#include "misolab/report.hpp"
#include "misolab/spec_file.hpp"

using namespace misolab;
using nlohmann::json;

namespace {

const std::string kData = MISOLAB_TEST_DATA;

OperatorSpec data(const std::string& name) { return load_spec(kData + "/" + name + ".json"); }

// Walks a report and returns the first value that looks like a binary float.
std::optional<std::string> float_artifact(const json& j) {
  static const std::regex rational(R"(-?\d+(/\d+)?([+-]\d+(/\d+)?i)?)");
  static const std::regex decimal(R"(.*\d\.\d.*|.*\de[-+]?\d.*)");
  if (j.is_number_float()) return j.dump();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (std::regex_match(s, decimal) && !std::regex_match(s, rational)) return s;
    return std::nullopt;
  }
  if (j.is_structured()) {
    for (const auto& v : j) {
      if (auto bad = float_artifact(v)) return bad;
    }
  }
  return std::nullopt;
}

OperatorSpec random_spec(gen::Rng& rng, int variant) {
  OperatorSpec s;
  s.mode = variant % 2 ? Mode::Float : Mode::Exact;
  const std::size_t dim = 1 + rng() % 3;
  auto entry = [&] {
    const Scalar e = gen::random_rational(rng, 7, 6);
    return s.mode == Mode::Exact ? e : e.to_mode(Mode::Float);
  };
  switch ((variant / 2) % 3) {
    case 0:
      s.kind = OperatorSpec::Kind::Matrix;
      s.matrix.assign(dim, {});
      for (auto& row : s.matrix) {
        for (std::size_t c = 0; c < dim; ++c) row.push_back(entry());
      }
      break;
    case 1:
      s.kind = OperatorSpec::Kind::JordanBlocks;
      for (std::size_t b = 0; b < dim; ++b) s.jordan_blocks.push_back({entry(), 1 + rng() % 3});
      break;
    default:
      s.kind = OperatorSpec::Kind::Shift;
      for (std::size_t c = 0; c <= dim; ++c) s.polynomial.push_back(entry().real_part());
      s.polynomial.back() = s.polynomial.back().abs2() + Scalar::one(s.mode);
      s.prefix = 5 + rng() % 20;
      break;
  }
  if (variant % 5 == 0) s.eigen_hints = {entry(), entry()};
  return s;
}

}  // namespace

TEST_CASE("spec files round-trip through serialization") {
  gen::Rng rng(137);
  for (int k = 0; k < 120; ++k) {
    const auto s = random_spec(rng, k);
    const json doc = serialize_spec(s);
    const auto back = parse_spec_text(doc.dump());
    CHECK(back == s);
    CHECK(serialize_spec(back) == doc);
  }
  for (const char* name : {"jordan_1_2", "identity3", "worked_example", "jordan_sum",
                           "shift_linear", "float_jordan", "sheared"}) {
    const auto s = data(name);
    CHECK(parse_spec(serialize_spec(s)) == s);
  }
}

TEST_CASE("entries accept numbers, pairs and literals") {
  CHECK(parse_entry(json(0.25), Mode::Exact) == Scalar::exact(mpq_class(1, 4)));
  CHECK(parse_entry(json::array({1, -2}), Mode::Exact) == Scalar::exact(1, -2));
  CHECK(parse_entry(json("3/4-1/2i"), Mode::Exact) ==
        Scalar::exact(mpq_class(3, 4), mpq_class(-1, 2)));
  CHECK(serialize_entry(Scalar::exact(mpq_class(-3, 4), 2)) == json("-3/4+2i"));
  CHECK(parse_entry_list("i,1/2-3i", Mode::Exact).size() == 2);
  CHECK_THROWS_AS(parse_entry(json("1/0"), Mode::Exact), ParseError);
  CHECK_THROWS_AS(parse_entry(json::array({1, 2, 3}), Mode::Exact), ParseError);
}

TEST_CASE("malformed spec files are parse errors") {
  for (const char* name : {"bad_json", "not_square", "two_kinds", "bad_rational"}) {
    CAPTURE(name);
    CHECK_THROWS_AS(data(name), ParseError);
  }
  CHECK_THROWS_AS(load_spec(kData + "/missing.json"), ParseError);
  CHECK_THROWS_AS(parse_spec_text(R"({"mode":"exact","matrix":[[1]],"extra":1})"), ParseError);
  CHECK_THROWS_AS(parse_spec_text(R"({"mode":"exact","shift":{"polynomial":[0],"prefix":3}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_spec_text(R"({"mode":"exact","jordan_blocks":[{"z":1,"size":0}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_spec_text(R"({"mode":"rational","matrix":[[1]]})"), ParseError);
}

TEST_CASE("order reports") {
  auto r = cmd_order(data("jordan_1_2"), {});
  CHECK(r.exit_code == exit_code::kOk);
  CHECK(r.json["verdict"]["text"] == "strict-order(3)");
  CHECK(r.json["parameters"]["m_max"] == 5);
  CHECK(r.json["parameters"]["tol"].is_null());

  r = cmd_order(data("identity3"), {});
  CHECK(r.json["verdict"]["text"] == "strict-order(1)");

  r = cmd_order(data("worked_example"), {});
  CHECK(r.json["verdict"]["kind"] == "not-within-bound");
  CHECK(r.json["verdict"]["m"] == 5);

  AnalysisFlags f;
  f.m_max = 9;
  r = cmd_order(data("worked_example"), f);
  CHECK(r.json["verdict"]["m"] == 9);

  r = cmd_order(data("float_jordan"), {});
  CHECK(r.json["mode"] == "float");
  CHECK(r.json["verdict"]["text"] == "strict-order(3)");
  CHECK(r.json["parameters"]["tol"] == 1e-8);
}

TEST_CASE("decompose, shift, perturb and ortho reports") {
  auto r = cmd_decompose(data("jordan_sum"), {});
  CHECK(r.json["decomposition"]["certified"] == true);
  CHECK(r.json["decomposition"]["predicted_strict_order"] == 3);

  r = cmd_decompose(data("sheared"), {});
  CHECK(r.json["decomposition"]["certified"] == false);
  CHECK_FALSE(r.json["decomposition"]["refusal"].empty());

  r = cmd_decompose(data("off_circle"), {});
  CHECK(r.json["decomposition"]["certified"] == false);
  CHECK(r.exit_code == exit_code::kOk);

  ShiftFlags sf;
  sf.m = 2;
  r = cmd_shift(data("shift_linear"), sf);
  CHECK(r.json["verdict"]["holds"] == true);
  sf.m = 1;
  r = cmd_shift(data("shift_linear"), sf);
  CHECK(r.json["verdict"]["holds"] == false);

  r = cmd_perturb(data("perturb_a"), data("perturb_n"), {});
  CHECK(r.json["perturbation"]["bound"] == 5);
  CHECK(r.json["perturbation"]["criterion_fires"] == true);
  CHECK(r.json["verdict"]["text"] == "strict-order(5)");

  OrthoFlags of;
  of.h1 = "1,0";
  of.h2 = "i,1";
  of.z1 = "i";
  of.z2 = "-i";
  r = cmd_ortho(data("worked_example"), of);
  CHECK(r.json["orthogonality"]["re_only"] == true);
  CHECK(r.json["orthogonality"]["theorem_consistent"] == true);
  for (const auto& [k, v] : r.json["orthogonality"]["conditions"].items()) CHECK(v == false);

  of.h2 = "1,1";
  CHECK_THROWS_AS(cmd_ortho(data("worked_example"), of), PreconditionError);
  CHECK_THROWS_AS(cmd_shift(data("jordan_1_2"), sf), PreconditionError);
}

TEST_CASE("verify reports") {
  auto r = cmd_verify("jordan-orders", 7);
  CHECK(r.exit_code == exit_code::kOk);
  CHECK(r.json["verdict"]["passed"] == true);
  CHECK_THROWS_AS(cmd_verify("no-such-suite", 7), PreconditionError);
}

TEST_CASE("exact reports are deterministic and free of float artifacts") {
  const auto shift = data("shift_linear");
  ShiftFlags sf;
  sf.m = 2;
  std::vector<std::pair<std::string, std::function<AnalysisReport()>>> runs{
      {"order jordan", [] { return cmd_order(data("jordan_1_2"), {}); }},
      {"order worked", [] { return cmd_order(data("worked_example"), {}); }},
      {"order shift", [&] { return cmd_order(shift, {}); }},
      {"decompose sum", [] { return cmd_decompose(data("jordan_sum"), {}); }},
      {"decompose sheared", [] { return cmd_decompose(data("sheared"), {}); }},
      {"decompose off", [] { return cmd_decompose(data("off_circle"), {}); }},
      {"shift", [&] { return cmd_shift(shift, sf); }},
      {"perturb", [] { return cmd_perturb(data("perturb_a"), data("perturb_n"), {}); }},
  };
  for (const auto& [label, run] : runs) {
    CAPTURE(label);
    const auto a = run();
    const auto b = run();
    CHECK(a.json.dump() == b.json.dump());
    CHECK(a.human == b.human);
    CHECK(a.json["mode"] == "exact");
    const auto bad = float_artifact(a.json);
    CHECK_MESSAGE(!bad.has_value(), bad.value_or(""));
  }
}
