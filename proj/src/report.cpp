#include "misolab/report.hpp"

#include <algorithm>
#include <sstream>

#include "misolab/shift_factory.hpp"
#include "misolab/suites.hpp"

namespace misolab {

namespace {

using nlohmann::json;

double resolve_tol(Mode mode, const AnalysisFlags& flags) {
  if (mode == Mode::Exact) return 0.0;
  return flags.tol.value_or(kDefaultDefectTol);
}

double difference_tol(Mode mode, const AnalysisFlags& flags) {
  if (mode == Mode::Exact) return 0.0;
  return flags.tol.value_or(kDefaultDifferenceTol);
}

json base_report(Mode mode) {
  json r;
  r["mode"] = std::string(to_string(mode));
  r["verdict"] = nullptr;
  r["defect_norms"] = json::array();
  r["decomposition"] = nullptr;
  r["orthogonality"] = nullptr;
  r["parameters"] = json::object();
  r["warnings"] = json::array();
  return r;
}

json tol_value(Mode mode, double tol) {
  if (mode == Mode::Exact) return nullptr;
  return tol;
}

json vector_json(const DenseVector& v) {
  json arr = json::array();
  for (const auto& s : v.entries()) arr.push_back(serialize_entry(s));
  return arr;
}

// Real nonnegative magnitudes: rational text in Exact mode, double otherwise.
json magnitude(const Scalar& s) {
  if (s.is_exact()) return rational_string(s.exact_value().re);
  return s.real_double();
}

std::string vector_text(const DenseVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += v[i].to_string();
  }
  return out + ")";
}

std::string magnitude_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  std::ostringstream os;
  os.precision(6);
  os << j.get<double>();
  return os.str();
}

json order_verdict_json(const OrderVerdict& v) {
  json j;
  j["kind"] = v.is_strict() ? "strict-order" : "not-within-bound";
  j["m"] = v.m;
  j["text"] = v.describe();
  j["witness"] = v.witness ? vector_json(*v.witness) : json(nullptr);
  j["witness_value"] = v.witness_value ? serialize_entry(*v.witness_value) : json(nullptr);
  return j;
}

json defect_norms_json(const OrderVerdict& v) {
  json arr = json::array();
  for (std::size_t k = 0; k < v.defect_norms.size(); ++k) {
    json e;
    e["m"] = k + 1;
    if (k < v.defect_norms_exact.size()) {
      e["max_abs2"] = rational_string(v.defect_norms_exact[k].exact_value().re);
    } else {
      e["max_abs"] = v.defect_norms[k];
    }
    arr.push_back(e);
  }
  return arr;
}

std::string defect_norms_text(const json& norms) {
  std::string out;
  for (const auto& e : norms) {
    if (!out.empty()) out += "  ";
    out += "m=" + std::to_string(e["m"].get<unsigned>()) + ": ";
    out += e.contains("max_abs2") ? magnitude_text(e["max_abs2"]) : magnitude_text(e["max_abs"]);
  }
  return out;
}

void add_warnings(json& r, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) r["warnings"].push_back(w);
}

std::string warnings_text(const json& r) {
  std::string out;
  for (const auto& w : r["warnings"]) out += "warning: " + w.get<std::string>() + "\n";
  return out;
}

json degree_json(const std::string& label, const DegreeVerdict& d, Mode mode) {
  json j;
  j["vector"] = label;
  j["verdict"] = d.describe();
  j["degree"] = d.degree ? json(*d.degree) : json(nullptr);
  if (mode == Mode::Float) j["residual"] = d.residual;
  return j;
}

WeightedShift build_shift(const OperatorSpec& spec, std::size_t window,
                          std::size_t basis_count) {
  const std::size_t prefix = spec.prefix > 0 ? spec.prefix : window + basis_count;
  return shift_from_polynomial(spec.shift_polynomial(), prefix);
}

json spectrum_json(const SpectrumCheck& s) {
  json j;
  j["all_on_circle"] = s.all_on_circle;
  j["moduli"] = s.moduli;
  return j;
}

AnalysisReport shift_order(const OperatorSpec& spec, const AnalysisFlags& flags) {
  const Mode mode = spec.mode;
  const Polynomial p = spec.shift_polynomial();
  const unsigned m_max = flags.m_max.value_or(static_cast<unsigned>(*p.degree()) + 2);
  if (m_max == 0) throw PreconditionError("--mmax must be ≥ 1");
  const std::size_t window = flags.window.value_or(default_shift_window(m_max));
  const std::size_t basis_count = 4;
  const double tol = difference_tol(mode, flags);
  const WeightedShift w = build_shift(spec, window, basis_count);

  json r = base_report(mode);
  r["parameters"] = {{"m_max", m_max}, {"window", window}, {"tol", tol_value(mode, tol)},
                     {"basis_count", basis_count}};
  std::optional<unsigned> order;
  for (unsigned m = 1; m <= m_max && !order; ++m) {
    if (shift_is_m_isometry(w, m, basis_count, tol, window)) order = m;
  }
  r["verdict"] = {{"kind", order ? "shift-order" : "not-within-bound"},
                  {"m", order.value_or(m_max)},
                  {"text", order ? "shift-order(" + std::to_string(*order) + ")"
                                 : "not-within-bound(" + std::to_string(m_max) + ")"},
                  {"window_relative", true}};
  json degrees = json::array();
  std::string degree_text;
  for (std::size_t j = 0; j < basis_count; ++j) {
    const auto d = detect_degree(orbit_sequence(w, FiniteVector::basis(j, mode), window), tol);
    degrees.push_back(degree_json("e" + std::to_string(j), d, mode));
    degree_text += "  e" + std::to_string(j) + ": " + d.describe() + "\n";
  }
  r["orbit_degrees"] = degrees;
  r["warnings"].push_back("weighted-shift verdicts are relative to the sampled window");
  if (!newton_positivity_certificate(p)) {
    r["warnings"].push_back("positivity of the generator is only checked on the prefix");
  }

  AnalysisReport out;
  out.json = r;
  out.human = "mode: " + std::string(to_string(mode)) + "\noperator: weighted shift from p(x) = " +
              p.to_string() + "\nverdict: " + r["verdict"]["text"].get<std::string>() +
              "\norbit degrees:\n" + degree_text + warnings_text(r);
  return out;
}

DenseVector parse_vector(const std::string& text, Mode mode, std::size_t dim,
                         const char* name) {
  if (text.empty()) throw ParseError(std::string("missing ") + name);
  DenseVector v(parse_entry_list(text, mode));
  if (v.size() != dim) {
    throw DimensionMismatch(std::string(name) + " has " + std::to_string(v.size()) +
                            " entries, operator dimension is " + std::to_string(dim));
  }
  return v;
}

}  // namespace

AnalysisReport cmd_order(const OperatorSpec& spec, const AnalysisFlags& flags) {
  if (spec.is_shift()) return shift_order(spec, flags);
  const DenseOperator t = spec.dense();
  const Mode mode = t.mode();
  const unsigned m_max = flags.m_max.value_or(default_m_max(t.dim()));
  const std::size_t window = flags.window.value_or(default_window(t.dim()));
  const double tol = resolve_tol(mode, flags);
  const double dtol = difference_tol(mode, flags);

  const auto verdict = strict_order(t, m_max, tol);
  json r = base_report(mode);
  r["parameters"] = {{"m_max", m_max}, {"window", window}, {"tol", tol_value(mode, tol)},
                     {"dim", t.dim()}};
  r["verdict"] = order_verdict_json(verdict);
  r["defect_norms"] = defect_norms_json(verdict);

  json degrees = json::array();
  std::string degree_text;
  for (std::size_t j = 0; j < t.dim(); ++j) {
    const auto d =
        detect_degree(orbit_sequence(t, DenseVector::basis(t.dim(), j, mode), window), dtol);
    degrees.push_back(degree_json("e" + std::to_string(j), d, mode));
    degree_text += "  e" + std::to_string(j) + ": " + d.describe() + "\n";
    if (verdict.is_strict() && (!d.is_polynomial() || (d.degree && *d.degree + 1 > verdict.m))) {
      r["warnings"].push_back("orbit of e" + std::to_string(j) +
                              " is inconsistent with the strict order");
    }
  }
  r["orbit_degrees"] = degrees;
  if (mode == Mode::Float) {
    const auto s = unimodular_spectrum_check(t, tol);
    r["spectrum"] = spectrum_json(s);
    if (!s.all_on_circle && verdict.is_strict()) {
      r["warnings"].push_back("spectrum leaves the unit circle but the defect vanished");
    }
  }

  AnalysisReport out;
  out.json = r;
  std::string human = "mode: " + std::string(to_string(mode)) + "\ndim: " +
                      std::to_string(t.dim()) + "\nverdict: " + verdict.describe() + "\n";
  human += std::string("defect norms (") + (mode == Mode::Exact ? "max|entry|^2" : "max|entry|") +
           "): " + defect_norms_text(r["defect_norms"]) + "\n";
  if (verdict.witness) {
    human += "witness for beta_" + std::to_string(verdict.m - 1) + ": " +
             vector_text(*verdict.witness) + " -> " + verdict.witness_value->to_string() + "\n";
  }
  human += "orbit degrees:\n" + degree_text + warnings_text(r);
  out.human = human;
  return out;
}

AnalysisReport cmd_decompose(const OperatorSpec& spec, const AnalysisFlags& flags) {
  const DenseOperator t = spec.dense();
  const Mode mode = t.mode();
  const double tol = flags.tol.value_or(kDefaultDefectTol);
  const unsigned m_max = flags.m_max.value_or(default_m_max(t.dim()));
  std::vector<Scalar> hints = spec.eigen_hints;
  if (hints.empty() && spec.kind == OperatorSpec::Kind::JordanBlocks) {
    for (const auto& b : spec.jordan_blocks) hints.push_back(b.z);
  }
  const auto d = algebraic_decompose(t, hints, tol);
  const auto verdict = strict_order(t, m_max, mode == Mode::Exact ? 0.0 : tol);

  json r = base_report(mode);
  r["parameters"] = {{"m_max", m_max}, {"tol", tol_value(mode, tol)}, {"dim", t.dim()}};
  r["verdict"] = order_verdict_json(verdict);
  r["defect_norms"] = defect_norms_json(verdict);
  json blocks = json::array();
  std::string block_text;
  for (const auto& b : d.blocks) {
    blocks.push_back({{"z", serialize_entry(b.space.z)},
                      {"dim", b.space.dim()},
                      {"nu", b.nilpotent.index},
                      {"witness", vector_json(b.nilpotent.witness)}});
    block_text += "  z = " + b.space.z.to_string() + "  dim " + std::to_string(b.space.dim()) +
                  "  nu " + std::to_string(b.nilpotent.index) + "\n";
  }
  json dec;
  dec["blocks"] = blocks;
  dec["certified"] = d.certified;
  dec["all_unimodular"] = d.all_unimodular;
  dec["blocks_orthogonal"] = d.blocks_orthogonal;
  dec["predicted_strict_order"] = d.predicted_strict_order;
  dec["pairwise_gram"] = magnitude(d.pairwise_gram);
  dec["reassembly_residual"] =
      d.reassembly_residual_exact ? magnitude(*d.reassembly_residual_exact)
                                  : json(d.reassembly_residual);
  dec["refusal"] = d.refusal;
  dec["agrees_with_strict_order"] =
      d.certified ? (verdict.is_strict() && verdict.m == d.predicted_strict_order)
                  : !verdict.is_strict();
  r["decomposition"] = dec;
  add_warnings(r, d.warnings);
  if (!dec["agrees_with_strict_order"].get<bool>()) {
    r["warnings"].push_back("decomposition and strict order disagree");
  }

  AnalysisReport out;
  out.json = r;
  std::string human = "mode: " + std::string(to_string(mode)) + "\ndim: " +
                      std::to_string(t.dim()) + "\nblocks:\n" + block_text;
  human += "pairwise gram (max|<u,v>|^2): " + magnitude_text(dec["pairwise_gram"]) + "\n";
  human += "reassembly residual: " + magnitude_text(dec["reassembly_residual"]) + "\n";
  if (d.certified) {
    human += "certified: yes, predicted strict order " +
             std::to_string(d.predicted_strict_order) + "\n";
  } else {
    human += "certified: no\n";
    for (const auto& why : d.refusal) human += "  refused: " + why + "\n";
  }
  human += "strict order: " + verdict.describe() + "\n" + warnings_text(r);
  out.human = human;
  return out;
}

AnalysisReport cmd_shift(const OperatorSpec& spec, const ShiftFlags& flags) {
  if (!spec.is_shift()) throw PreconditionError("shift command needs a \"shift\" spec");
  if (flags.m == 0) throw PreconditionError("--m must be ≥ 1");
  if (flags.basis_count == 0) throw PreconditionError("--basis-count must be ≥ 1");
  const Mode mode = spec.mode;
  const std::size_t window = flags.common.window.value_or(default_shift_window(flags.m));
  const double tol = difference_tol(mode, flags.common);
  const Polynomial p = spec.shift_polynomial();
  const WeightedShift w = build_shift(spec, window, flags.basis_count);
  const bool holds = shift_is_m_isometry(w, flags.m, flags.basis_count, tol, window);

  json r = base_report(mode);
  r["parameters"] = {{"m", flags.m},
                     {"window", window},
                     {"basis_count", flags.basis_count},
                     {"tol", tol_value(mode, tol)}};
  r["verdict"] = {{"kind", "shift-m-isometry"},
                  {"m", flags.m},
                  {"holds", holds},
                  {"text", std::string(holds ? "" : "not ") + std::to_string(flags.m) +
                               "-isometry within the window"},
                  {"window_relative", true}};
  json weights = json::array();
  for (std::size_t n = 0; n < std::min<std::size_t>(8, window); ++n) {
    weights.push_back(magnitude(w.squared_weight(n)));
  }
  r["squared_weights"] = weights;
  json degrees = json::array();
  std::string degree_text;
  for (std::size_t j = 0; j < flags.basis_count; ++j) {
    const auto d = detect_degree(orbit_sequence(w, FiniteVector::basis(j, mode), window), tol);
    degrees.push_back(degree_json("e" + std::to_string(j), d, mode));
    degree_text += "  e" + std::to_string(j) + ": " + d.describe() + "\n";
  }
  r["orbit_degrees"] = degrees;
  const bool certificate = newton_positivity_certificate(p);
  r["positivity_certificate"] = certificate;
  r["warnings"].push_back("weighted-shift verdicts are relative to the sampled window");
  if (!certificate) {
    r["warnings"].push_back("positivity of the generator is only checked on the prefix");
  }

  AnalysisReport out;
  out.json = r;
  out.human = "mode: " + std::string(to_string(mode)) + "\noperator: weighted shift from p(x) = " +
              p.to_string() + "\n" + std::to_string(flags.m) + "-isometry: " +
              (holds ? "true" : "false") + "\norbit degrees:\n" + degree_text +
              warnings_text(r);
  return out;
}

AnalysisReport cmd_ortho(const OperatorSpec& spec, const OrthoFlags& flags) {
  const DenseOperator t = spec.dense();
  const Mode mode = t.mode();
  const double tol = resolve_tol(mode, flags.common);
  const std::size_t window = flags.common.window.value_or(default_window(t.dim()));
  const DenseVector h1 = parse_vector(flags.h1, mode, t.dim(), "--h1");
  const DenseVector h2 = parse_vector(flags.h2, mode, t.dim(), "--h2");
  if (flags.z1.empty() || flags.z2.empty()) throw ParseError("--z1 and --z2 are required");
  const Scalar z1 = parse_scalar(flags.z1, mode);
  const Scalar z2 = parse_scalar(flags.z2, mode);
  std::optional<std::pair<Scalar, Scalar>> eps;
  if (flags.eps) {
    const auto e = parse_entry_list(*flags.eps, mode);
    if (e.size() != 2) throw ParseError("--eps needs two entries, e.g. 1,i");
    eps = std::pair{e[0], e[1]};
  }

  const auto o = ortho_test_generalized(t, h1, h2, z1, z2, window, tol, eps);
  const auto q = jordan_pair_equivalences(t, h1, h2, z1, z2, tol, window, flags.seed);

  json r = base_report(mode);
  r["parameters"] = {{"window", window}, {"tol", tol_value(mode, tol)}, {"seed", flags.seed}};
  json orth;
  orth["case"] = o.which == OrthoReport::Case::Opposite ? "opposite" : "generic";
  orth["sum_orbit_polynomial"] = o.sum_orbit_polynomial;
  orth["eps"] = json::array({serialize_entry(o.eps.first), serialize_entry(o.eps.second)});
  orth["eps_orbits_polynomial"] = o.eps_orbits_polynomial;
  orth["mixed_inner_vanishes"] = o.mixed_inner_vanishes;
  orth["real_part_vanishes"] = o.real_part_vanishes;
  orth["re_only"] = o.re_only;
  orth["theorem_consistent"] = o.theorem_consistent;
  static const char* names[] = {"i", "ii", "iii", "iv", "v"};
  json conds;
  for (std::size_t k = 0; k < 5; ++k) conds[names[k]] = q.conditions[k];
  orth["conditions"] = conds;
  orth["conditions_agree"] = q.all_agree;
  orth["cyclic_dims"] = json::array({q.dim1, q.dim2});
  orth["restricted_order"] = q.restricted_order ? json(*q.restricted_order) : json(nullptr);
  if (mode == Mode::Float) {
    orth["cross_gram"] = q.cross_gram;
    orth["max_mixed_inner"] = o.max_mixed_inner;
  }
  r["orthogonality"] = orth;
  r["verdict"] = {{"kind", "orthogonality"},
                  {"orthogonal_cyclic_spaces", q.conditions[0]},
                  {"consistent", o.theorem_consistent && q.all_agree}};
  add_warnings(r, o.diagnostics);
  if (!q.all_agree) r["warnings"].push_back("the five Jordan-pair conditions disagree");

  AnalysisReport out;
  out.json = r;
  std::string human = "mode: " + std::string(to_string(mode)) + "\ncase: " +
                      orth["case"].get<std::string>() + "\n";
  human += std::string("sum orbit polynomial: ") + (o.sum_orbit_polynomial ? "yes" : "no") + "\n";
  if (o.which == OrthoReport::Case::Opposite) {
    human += "eps = (" + o.eps.first.to_string() + ", " + o.eps.second.to_string() +
             ") orbits polynomial: " + (o.eps_orbits_polynomial ? "yes" : "no") + "\n";
  }
  human += std::string("<T^n h1, T^n h2> = 0: ") + (o.mixed_inner_vanishes ? "yes" : "no") +
           "\nRe<T^n h1, T^n h2> = 0: " + (o.real_part_vanishes ? "yes" : "no") + "\n";
  human += "conditions (i)-(v):";
  for (bool c : q.conditions) human += c ? " true" : " false";
  human += std::string("\nconsistent: ") + (o.theorem_consistent && q.all_agree ? "yes" : "no") +
           "\n" + warnings_text(r);
  out.human = human;
  return out;
}

AnalysisReport cmd_perturb(const OperatorSpec& a_spec, const OperatorSpec& n_spec,
                           const AnalysisFlags& flags) {
  const DenseOperator a = a_spec.dense();
  const DenseOperator n = n_spec.dense();
  const Mode mode = a.mode();
  const double tol = flags.tol.value_or(kDefaultDefectTol);
  const auto p = perturbation_analysis(a, n, tol);
  const unsigned m_max =
      flags.m_max.value_or(std::max(p.m_n_bound, default_m_max(a.dim())));
  const auto verdict = strict_order(a + n, m_max, mode == Mode::Exact ? 0.0 : tol);

  json r = base_report(mode);
  r["parameters"] = {{"m_max", m_max}, {"tol", tol_value(mode, tol)}, {"dim", a.dim()}};
  r["verdict"] = order_verdict_json(verdict);
  r["defect_norms"] = defect_norms_json(verdict);
  const bool equal = verdict.is_strict() && verdict.m == p.m_n_bound;
  json pert;
  pert["m_a"] = p.m_a;
  pert["nu"] = p.nu;
  pert["bound"] = p.m_n_bound;
  pert["bound_verified"] = p.bound_verified;
  pert["criterion_fires"] = p.strict;
  pert["witness"] = p.witness ? vector_json(*p.witness) : json(nullptr);
  pert["witness_value"] = p.witness_value ? serialize_entry(*p.witness_value) : json(nullptr);
  pert["order_equals_bound"] = equal;
  pert["consistent"] = verdict.is_strict() && verdict.m <= p.m_n_bound && equal == p.strict;
  r["perturbation"] = pert;
  if (!pert["consistent"].get<bool>()) {
    r["warnings"].push_back("strict order and the witness criterion disagree");
  }

  AnalysisReport out;
  out.json = r;
  out.human = "mode: " + std::string(to_string(mode)) + "\nm_A: " + std::to_string(p.m_a) +
              "\nnu(N): " + std::to_string(p.nu) + "\nbound m_A + 2(nu-1): " +
              std::to_string(p.m_n_bound) + "\nstrictness criterion: " +
              (p.strict ? "fires" : "does not fire") + "\nstrict order of A+N: " +
              verdict.describe() + "\n" + warnings_text(r);
  return out;
}

AnalysisReport cmd_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    names.push_back(suite);
  }
  json r;
  r["mode"] = nullptr;
  r["parameters"] = {{"seed", seed}, {"suite", suite}};
  r["warnings"] = json::array();
  json suites = json::array();
  std::string human;
  bool ok = true;
  for (const auto& name : names) {
    const auto res = run_suite(name, seed);
    ok = ok && res.passed();
    suites.push_back({{"suite", res.name},
                      {"checks", res.checks},
                      {"violations", res.violations},
                      {"passed", res.passed()}});
    human += name + ": " + std::to_string(res.checks) + " checks, " +
             std::to_string(res.violations.size()) + " violations\n";
    for (const auto& v : res.violations) human += "  violation: " + v + "\n";
  }
  r["suites"] = suites;
  r["verdict"] = {{"kind", "suite"}, {"passed", ok}};

  AnalysisReport out;
  out.json = r;
  out.human = human + (ok ? "all checks passed\n" : "suite violations found\n");
  out.exit_code = ok ? exit_code::kOk : exit_code::kSuiteViolation;
  return out;
}

}  // namespace misolab
