#include "misolab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "misolab/generators.hpp"
#include "misolab/shift_factory.hpp"

namespace misolab {

namespace {

class Checker {
 public:
  explicit Checker(SuiteResult& r) : r_(r) {}
  void operator()(bool ok, const std::string& what) {
    ++r_.checks;
    if (!ok) r_.violations.push_back(what);
  }

 private:
  SuiteResult& r_;
};

Scalar ex(long n, long d = 1) { return Scalar::exact(mpq_class(n, d)); }

void jordan_orders(gen::Rng& rng, Checker& check) {
  const std::vector<Scalar> zs = {ex(1), ex(-1), Scalar::exact(0, 1), Scalar::exact(0, -1),
                                  Scalar::exact(mpq_class(3, 5), mpq_class(4, 5))};
  for (const auto& z : zs) {
    for (std::size_t k = 1; k <= 5; ++k) {
      const auto v = strict_order(jordan_matrix({z, k}));
      const std::string label = "J(" + z.to_string() + "," + std::to_string(k) + ")";
      check(v.is_strict() && v.m == 2 * k - 1, label + " order " + v.describe());
      check(v.m % 2 == 1, label + " order is odd");
      if (k >= 2) check(v.witness.has_value(), label + " has a witness for β_{m-1}");
    }
  }
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto& pool = gen::exact_unimodular_pool();
    const Scalar z = pool[rng() % pool.size()];
    const auto t = gen::conjugate(jordan_matrix({z, k}), gen::random_exact_unitary(rng, k));
    const auto v = strict_order(t);
    check(v.is_strict() && v.m == 2 * k - 1, "conjugated J(" + z.to_string() + "," +
                                                 std::to_string(k) + ") " + v.describe());
  }
}

void newton_roundtrip(gen::Rng& rng, Checker& check) {
  for (int i = 0; i < 50; ++i) {
    const auto deg = static_cast<std::size_t>(rng() % 7);
    const Polynomial p = gen::random_exact_polynomial(rng, deg);
    std::vector<Scalar> samples;
    for (long n = 0; n < 12; ++n) samples.push_back(p.eval(n));
    const Polynomial q = newton_reconstruct(samples, 0.0);
    check(q == p, "roundtrip of " + p.to_string() + " gave " + q.to_string());
    const auto table = difference_table(samples, 8);
    for (std::size_t m = 0; m <= 8; ++m) {
      for (std::size_t n = 0; n + m < samples.size(); ++n) {
        if (!(binomial_difference(samples, m, n) == table.rows[m][n])) {
          check(false, "binomial form differs at m=" + std::to_string(m));
        }
      }
    }
  }
}

void defect_consistency(gen::Rng& rng, Checker& check) {
  for (int i = 0; i < 20; ++i) {
    const auto t = gen::random_exact_matrix(rng, 4);
    const auto seq = defect_sequence(t, 6);
    for (unsigned m = 0; m <= 6; ++m) {
      check(seq[m] == defect_by_sum(t, m).matrix,
            "recurrence differs from the sum at m=" + std::to_string(m));
    }
    for (int j = 0; j < 3; ++j) {
      const auto h = gen::random_exact_vector(rng, 4);
      const auto gamma = orbit_sequence(t, h, 8);
      const auto table = difference_table(gamma, 6);
      for (unsigned m = 0; m <= 6; ++m) {
        Scalar rhs = inner(seq[m].apply(h), h);
        if (m % 2 == 1) rhs = -rhs;
        check(table.rows[m][0] == rhs, "(Δ^m γ)_0 differs at m=" + std::to_string(m));
      }
    }
  }
}

std::vector<Polynomial> factory_polynomials(Mode mode) {
  auto poly = [mode](std::vector<long> c) {
    std::vector<Scalar> s;
    for (long v : c) s.push_back(Scalar::from_int(v, mode));
    return Polynomial(mode, s);
  };
  return {poly({1}), poly({1, 1}), poly({1, 2, 1}), poly({1, 0, 1}), poly({3, 2})};
}

void shift_factory_checks(Mode mode, Checker& check, double tol) {
  for (const auto& p : factory_polynomials(mode)) {
    const auto d = static_cast<unsigned>(*p.degree());
    const WeightedShift w = shift_from_polynomial(p, 25);
    check(shift_is_m_isometry(w, d + 1, 6, tol), p.to_string() + " at m = deg + 1");
    if (d >= 1) check(!shift_is_m_isometry(w, d, 6, tol), p.to_string() + " not at m = deg");
    bool norms = true;
    for (std::size_t j = 0; j <= 24; ++j) {
      for (std::size_t n = 0; n + j <= 24; ++n) {
        const Scalar lhs = w.basis_orbit_norm2(j, n);
        const Scalar rhs = p.eval(static_cast<long>(n + j)) / p.eval(static_cast<long>(j));
        norms = norms && (mode == Mode::Exact ? lhs == rhs
                                              : (lhs - rhs).abs() <= tol * std::max(1.0, rhs.abs()));
      }
    }
    check(norms, p.to_string() + " orbit norms equal p(n+j)/p(j)");
  }
}

struct WorkedExample {
  DenseOperator t;
  DenseVector h1;
  DenseVector h2;
};

WorkedExample worked_example() {
  const Scalar i = Scalar::imag_unit(Mode::Exact);
  return {DenseOperator::from_rows({{i, ex(2)}, {ex(0), -i}}), DenseVector{ex(1), ex(0)},
          DenseVector{i, ex(1)}};
}

// −i^{k+l+1}
Scalar worked_inner(std::size_t k, std::size_t l, Mode mode) {
  static const long re[] = {1, 0, -1, 0};
  static const long im[] = {0, 1, 0, -1};
  const std::size_t e = (k + l + 1) % 4;
  return -(Scalar::from_int(re[e], mode) + Scalar::from_int(im[e], mode) * Scalar::imag_unit(mode));
}

void worked_example_checks(const WorkedExample& w, Checker& check, double tol,
                           const std::string& tag) {
  const Mode mode = w.t.mode();
  const Scalar three = Scalar::from_int(3, mode);
  bool constant = true;
  for (std::size_t n = 0; n <= 20; ++n) {
    const Scalar v = orbit_sequence(w.t, w.h1 + w.h2, 21).values()[n];
    constant = constant && (v - three).is_zero(tol * 3);
  }
  check(constant, tag + "||T^n(h1+h2)||^2 = 3");
  bool inners = true;
  for (std::size_t k = 0; k <= 6; ++k) {
    for (std::size_t l = 0; l <= 6; ++l) {
      const Scalar v = inner(w.t.power(static_cast<unsigned>(k)).apply(w.h1),
                             w.t.power(static_cast<unsigned>(l)).apply(w.h2));
      inners = inners && (v - worked_inner(k, l, mode)).is_zero(tol);
    }
  }
  check(inners, tag + "<T^k h1, T^l h2> = -i^(k+l+1)");
  const auto v = strict_order(w.t, 9, tol);
  check(!v.is_strict() && v.m == 9, tag + "worked example " + v.describe());
  const Scalar i = Scalar::imag_unit(mode);
  const auto eq = jordan_pair_equivalences(w.t, w.h1, w.h2, i, -i, tol);
  check(std::none_of(eq.conditions.begin(), eq.conditions.end(), [](bool c) { return c; }),
        tag + "all five Jordan-pair conditions are false");
}

void decomposition_checks(const std::vector<gen::CorpusEntry>& corpus, Checker& check,
                          std::function<DenseOperator(const DenseOperator&)> prepare,
                          double tol) {
  for (const auto& e : corpus) {
    const DenseOperator t = prepare(e.t);
    const auto d = algebraic_decompose(t, e.hints, tol);
    const auto so = strict_order(t, default_m_max(t.dim()), tol);
    const bool expect = e.kind == gen::CorpusEntry::Kind::Certified;
    check(d.certified == expect, e.label + ": certified = " + (d.certified ? "yes" : "no"));
    if (expect) {
      check(so.is_strict() && so.m == d.predicted_strict_order,
            e.label + ": predicted " + std::to_string(d.predicted_strict_order) + " vs " +
                so.describe());
      check(so.m % 2 == 1, e.label + ": certified order is odd");
    } else {
      check(!so.is_strict(), e.label + ": " + so.describe());
    }
    check(d.reassembly_residual <= 1e-6, e.label + ": reassembly residual");
  }
}

void perturbation_checks(gen::Rng& rng, Checker& check) {
  for (const auto& p : gen::perturbation_corpus(rng, 30)) {
    const auto r = perturbation_analysis(p.a, p.n);
    const unsigned bound = std::max(r.m_n_bound, default_m_max(p.a.dim()));
    const auto s = strict_order(p.a + p.n, bound);
    check(s.is_strict() && s.m <= r.m_n_bound, p.label + ": order within the bound");
    check(r.bound_verified, p.label + ": β at the bound vanishes");
    check((s.m == r.m_n_bound) == r.strict,
          p.label + ": equality iff the witness criterion fires (" + s.describe() +
              ", bound " + std::to_string(r.m_n_bound) + ")");
  }
}

void float_robustness(gen::Rng& rng, Checker& check) {
  constexpr double tol = 1e-8;
  auto to_float = [&rng](const DenseOperator& t) {
    return gen::conjugate(t.to_mode(Mode::Float), gen::random_unitary(rng, t.dim()));
  };
  const std::vector<Scalar> zs = {ex(1), ex(-1), Scalar::exact(0, 1), Scalar::exact(0, -1),
                                  Scalar::exact(mpq_class(3, 5), mpq_class(4, 5))};
  for (const auto& z : zs) {
    for (std::size_t k = 1; k <= 5; ++k) {
      const auto v = strict_order(to_float(jordan_matrix({z, k})), 2 * 5 + 1, tol);
      check(v.is_strict() && v.m == 2 * k - 1,
            "float J(" + z.to_string() + "," + std::to_string(k) + ") " + v.describe());
    }
  }
  const auto w = worked_example();
  const DenseOperator u = gen::random_unitary(rng, 2);
  worked_example_checks({gen::conjugate(w.t.to_mode(Mode::Float), u),
                         u.apply(w.h1.to_mode(Mode::Float)), u.apply(w.h2.to_mode(Mode::Float))},
                        check, tol, "float ");
  shift_factory_checks(Mode::Float, check, 1e-9);
  decomposition_checks(gen::decomposition_corpus(rng, 20), check, to_float, tol);
}

void degree_density(gen::Rng& rng, Checker& check) {
  for (const auto& s : gen::strict_isometry_corpus(rng, 10, {3, 5, 7})) {
    const auto v = strict_order(s.t);
    check(v.is_strict() && v.m == s.order, "corpus operator has order " + std::to_string(s.order));
    std::size_t hits = 0;
    for (int j = 0; j < 50; ++j) {
      const auto h = gen::random_exact_vector(rng, s.t.dim(), 1000000, 1000);
      const auto verdict = detect_degree(orbit_sequence(s.t, h, default_window(s.t.dim())), 0.0);
      if (verdict.degree && *verdict.degree + 1 == s.order) ++hits;
    }
    check(hits >= 49, "order " + std::to_string(s.order) + ": maximal degree in " +
                          std::to_string(hits) + "/50");
  }
}

void worked_examples(Checker& check) {
  worked_example_checks(worked_example(), check, 0.0, "");
  const Scalar i = Scalar::imag_unit(Mode::Exact);
  const auto t = jordan_matrix({i, 2});
  const auto gamma = orbit_sequence(t, DenseVector{ex(1), ex(0)}, 21);
  check(std::all_of(gamma.values().begin(), gamma.values().end(),
                    [](const Scalar& v) { return v == ex(1); }),
        "||T^n h||^2 = 1 for the first example");
  check(strict_order(jordan_matrix({ex(1), 2})).m == 3, "J(1,2) is a strict 3-isometry");
  const auto d = algebraic_decompose(jordan_sum({{ex(1), 2}, {ex(-1), 1}}), {ex(1), ex(-1)});
  check(d.certified && d.predicted_strict_order == 3, "J(1,2)+J(-1,1) certified with order 3");
  const auto v = strict_order(worked_example().t);
  check(!v.is_strict() && v.m == 5, "worked example reports " + v.describe());
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "jordan-orders",  "newton-roundtrip", "defect-consistency",
      "shift-factory",  "decomposition",    "perturbation",
      "float-robustness", "degree-density", "worked-examples"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  SuiteResult result;
  result.name = name;
  result.seed = seed;
  Checker check(result);
  gen::Rng rng(seed);
  if (name == "jordan-orders") {
    jordan_orders(rng, check);
  } else if (name == "newton-roundtrip") {
    newton_roundtrip(rng, check);
  } else if (name == "defect-consistency") {
    defect_consistency(rng, check);
  } else if (name == "shift-factory") {
    shift_factory_checks(Mode::Exact, check, 0.0);
  } else if (name == "decomposition") {
    decomposition_checks(gen::decomposition_corpus(rng, 20), check,
                         [](const DenseOperator& t) { return t; }, kDefaultDefectTol);
  } else if (name == "perturbation") {
    perturbation_checks(rng, check);
  } else if (name == "float-robustness") {
    float_robustness(rng, check);
  } else if (name == "degree-density") {
    degree_density(rng, check);
  } else if (name == "worked-examples") {
    worked_examples(check);
  } else {
    throw PreconditionError("unknown suite '" + name + "'");
  }
  return result;
}

}  // namespace misolab
