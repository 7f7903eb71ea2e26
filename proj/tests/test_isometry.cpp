#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "misolab/generators.hpp"
#include "misolab/isometry.hpp"
#include "misolab/spectral.hpp"

using namespace misolab;

namespace {

Scalar q(long n, long d = 1) { return Scalar::exact(mpq_class(n, d)); }
Scalar qi(long re, long im) { return Scalar::exact(re, im); }
const Scalar kI = Scalar::exact(0, 1);

DenseOperator m2(Scalar a, Scalar b, Scalar c, Scalar d) {
  return DenseOperator::from_rows({{a, b}, {c, d}});
}

// Σ_k (−1)^k C(m,k) T*^k T^k term by term, without reusing library defects.
DenseOperator brute_defect(const DenseOperator& t, unsigned m) {
  DenseOperator total = DenseOperator::zero(t.dim(), t.mode());
  for (unsigned k = 0; k <= m; ++k) {
    const DenseOperator tk = t.power(k);
    DenseOperator term = (tk.adjoint() * tk).scaled(Scalar::from_mpz(binomial(m, k), t.mode()));
    total = k % 2 ? total - term : total + term;
  }
  return total;
}

}  // namespace

TEST_CASE("defect examples") {
  const auto j = m2(q(1), q(1), q(0), q(1));
  CHECK(defect(DenseOperator::identity(2, Mode::Exact), 1).matrix.is_zero(0.0));
  CHECK(defect(j, 2).matrix == m2(q(0), q(0), q(0), q(2)));
  CHECK(defect(j, 3).matrix.is_zero(0.0));
  CHECK(defect(j, 0).matrix == DenseOperator::identity(2, Mode::Exact));
}

TEST_CASE("recurrence agrees with the binomial sum on random matrices") {
  gen::Rng rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    const auto t = gen::random_exact_matrix(rng, 4, 2, 2);
    const auto seq = defect_sequence(t, 6);
    for (unsigned m = 0; m <= 6; ++m) {
      const auto b = brute_defect(t, m);
      CHECK(seq[m] == b);
      CHECK(defect_by_sum(t, m).matrix == b);
      CHECK(b.is_hermitian(0.0));
    }
  }
}

TEST_CASE("m-isometry predicate examples") {
  CHECK(is_m_isometry(DenseOperator::diagonal({kI, q(-1)}), 1));
  const auto j = m2(q(1), q(1), q(0), q(1));
  CHECK_FALSE(is_m_isometry(j, 2));
  CHECK(is_m_isometry(j, 3));
  const auto sheared = m2(kI, q(2), q(0), -kI);
  for (unsigned m = 1; m <= 9; ++m) CHECK_FALSE(is_m_isometry(sheared, m));
}

TEST_CASE("strict order examples and witnesses") {
  auto v = strict_order(DenseOperator::diagonal({q(1), q(-1)}));
  CHECK(v.is_strict());
  CHECK(v.m == 1);
  CHECK_FALSE(v.witness.has_value());

  const auto j3 = jordan_matrix({q(1), 3});
  v = strict_order(j3);
  REQUIRE(v.is_strict());
  CHECK(v.m == 5);
  REQUIRE(v.witness.has_value());
  const Scalar w = inner(defect(j3, 4).matrix.apply(*v.witness), *v.witness);
  CHECK_FALSE(w.is_zero(0.0));
  CHECK(w == *v.witness_value);

  v = strict_order(m2(kI, q(2), q(0), -kI), 9);
  CHECK(v.kind == OrderVerdict::Kind::NotWithinBound);
  CHECK(v.m == 9);
  CHECK(default_m_max(3) == 7);
}

TEST_CASE("strict orders are hereditary and odd on algebraic unimodular operators") {
  gen::Rng rng(43);
  const auto corpus = gen::strict_isometry_corpus(rng, 12, {1, 3, 5, 7});
  for (const auto& entry : corpus) {
    const auto v = strict_order(entry.t);
    REQUIRE(v.is_strict());
    CHECK(v.m == entry.order);
    CHECK(v.m % 2 == 1);
    for (unsigned k = v.m; k <= v.m + 2; ++k) CHECK(defect(entry.t, k).matrix.is_zero(0.0));
    if (v.m >= 2) CHECK_FALSE(defect(entry.t, v.m - 1).matrix.is_zero(0.0));
  }
  const auto decomp = gen::decomposition_corpus(rng, 6);
  for (const auto& entry : decomp) {
    if (entry.kind != gen::CorpusEntry::Kind::Certified) continue;
    const auto v = strict_order(entry.t);
    REQUIRE(v.is_strict());
    CHECK(v.m % 2 == 1);
  }
}

TEST_CASE("Newton expansion of the orbit Gram operators") {
  CHECK(newton_expansion_check(DenseOperator::diagonal({kI, q(-1)}), 1, 8));
  CHECK(newton_expansion_check(jordan_matrix({q(1), 2}), 3, 6));
  CHECK(newton_expansion_check(m2(kI, q(1), q(0), kI), 3, 6));
  CHECK_THROWS_AS(newton_expansion_check(jordan_matrix({q(1), 2}), 2, 6), PreconditionError);

  // Independent oracle: T*ⁿTⁿ vs Σ_{k<m} (n)_k (−1)^k/k! β_k by brute force.
  const auto t = jordan_matrix({qi(3, 4) / q(5), 3});
  for (unsigned n = 0; n <= 8; ++n) {
    const auto tn = t.power(n);
    DenseOperator rhs = DenseOperator::zero(3, Mode::Exact);
    for (unsigned k = 0; k < 5; ++k) {
      const Scalar c = Scalar::exact(mpq_class(falling_factorial(n, k), factorial(k)));
      const auto term = brute_defect(t, k).scaled(c);
      rhs = k % 2 ? rhs - term : rhs + term;
    }
    CHECK(tn.adjoint() * tn == rhs);
  }
}

TEST_CASE("defect form examples and symmetries") {
  const auto j = jordan_matrix({q(1), 2});
  const DenseVector e1 = DenseVector::basis(2, 0, Mode::Exact);
  const DenseVector f{q(1, 2), qi(0, 3)};
  CHECK(defect_form(j, 0)(e1, f) == inner(e1, f));
  CHECK(defect_form(j, 1).quadratic(e1).is_zero(0.0));

  gen::Rng rng(47);
  for (int trial = 0; trial < 8; ++trial) {
    const auto t = gen::random_exact_matrix(rng, 3, 2, 2);
    const auto g = gen::random_exact_vector(rng, 3);
    const auto h = gen::random_exact_vector(rng, 3);
    for (unsigned k = 0; k <= 4; ++k) {
      const auto form = defect_form(t, k);
      CHECK(form(g, h) == form(h, g).conj());
      CHECK(form.quadratic(h).imag_part().is_zero(0.0));
      CHECK(form(g, h) == inner(brute_defect(t, k).apply(g), h));
    }
  }
}

TEST_CASE("orbit inner products expand through defect forms") {
  gen::Rng rng(53);
  const auto t = jordan_matrix({kI, 2});
  const auto f = gen::random_exact_vector(rng, 2);
  const auto g = gen::random_exact_vector(rng, 2);
  for (unsigned n = 0; n <= 10; ++n) {
    Scalar rhs = Scalar::zero(Mode::Exact);
    for (unsigned k = 0; k < 3; ++k) {
      Scalar term = defect_form(t, k)(f, g) *
                    Scalar::exact(mpq_class(falling_factorial(n, k), factorial(k)));
      rhs = k % 2 ? rhs - term : rhs + term;
    }
    CHECK(orbit_inner(t, f, g, n) == rhs);
  }
}

TEST_CASE("bottom difference equals the defect quadratic form") {
  gen::Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = gen::random_exact_matrix(rng, 3, 2, 2);
    const auto h = gen::random_exact_vector(rng, 3);
    const auto table = difference_table(orbit_sequence(t, h, 7), 5);
    for (unsigned m = 0; m <= 5; ++m) {
      Scalar expected = inner(brute_defect(t, m).apply(h), h);
      if (m % 2) expected = -expected;
      CHECK(table.rows[m][0] == expected);
    }
  }
}

TEST_CASE("local survey examples") {
  const auto j = jordan_matrix({q(1), 2});
  gen::Rng rng(61);
  const auto s = local_isometry_survey(
      j, {gen::random_exact_vector(rng, 2), DenseVector::basis(2, 1, Mode::Exact)});
  REQUIRE(s.per_vector.size() == 2);
  for (const auto& d : s.per_vector) {
    REQUIRE(d.degree.has_value());
    CHECK(*d.degree == 2);
  }
  REQUIRE(s.order.has_value());
  CHECK(s.order->m == 3);
  CHECK(s.consistent_with_m_isometry);

  const double r = std::sqrt(2.0);
  const auto grow = DenseOperator::diagonal({Scalar::floating(r), Scalar::floating(r)});
  const auto g = local_isometry_survey(grow, {DenseVector::basis(2, 0, Mode::Float)});
  CHECK(g.per_vector[0].kind == DegreeVerdict::Kind::NotPolynomialWithinWindow);
  CHECK_FALSE(g.consistent_with_m_isometry);

  CHECK_THROWS_AS(local_isometry_survey(j, std::vector<DenseVector>{}), PreconditionError);
}

TEST_CASE("orbit degrees follow the strict order") {
  gen::Rng rng(67);
  for (const auto& entry : gen::strict_isometry_corpus(rng, 8, {1, 3, 5, 7})) {
    const std::size_t dim = entry.t.dim();
    const std::size_t window = default_window(dim);
    bool attained = false;
    for (int k = 0; k < 6; ++k) {
      const auto h = gen::random_exact_vector(rng, dim);
      const auto d = detect_degree(orbit_sequence(entry.t, h, window), 0.0);
      REQUIRE(d.degree.has_value());
      CHECK(*d.degree <= entry.order - 1);
      attained = attained || *d.degree == entry.order - 1;
    }
    CHECK(attained);
  }
}

TEST_CASE("orbit degrees on a polarized spanning set decide the order") {
  gen::Rng rng(71);
  std::vector<DenseOperator> ops;
  for (const auto& e : gen::strict_isometry_corpus(rng, 4, {3, 5})) ops.push_back(e.t);
  ops.push_back(gen::random_exact_matrix(rng, 3, 1, 1));
  ops.push_back(m2(kI, q(2), q(0), -kI));
  for (const auto& t : ops) {
    const std::size_t dim = t.dim();
    std::vector<DenseVector> probes;
    for (std::size_t a = 0; a < dim; ++a) {
      const auto ea = DenseVector::basis(dim, a, Mode::Exact);
      probes.push_back(ea);
      for (std::size_t b = a + 1; b < dim; ++b) {
        const auto eb = DenseVector::basis(dim, b, Mode::Exact);
        probes.push_back(ea + eb);
        probes.push_back(ea + eb.scaled(kI));
      }
    }
    for (unsigned m = 1; m <= 7; ++m) {
      bool all_low = true;
      for (const auto& h : probes) {
        const auto d = detect_degree(orbit_sequence(t, h, default_window(dim)), 0.0);
        all_low = all_low && d.is_polynomial() && (!d.degree || *d.degree + 1 <= m);
      }
      if (all_low) CHECK(defect(t, m).matrix.is_zero(0.0));
    }
  }
}

TEST_CASE("polarization examples") {
  auto norm = [](const DenseVector& v) { return v.norm2(); };
  const DenseVector e0 = DenseVector::basis(2, 0, Mode::Exact);
  const DenseVector e1 = DenseVector::basis(2, 1, Mode::Exact);
  CHECK(polarization_reconstruct(norm, e0, e1) == q(1));

  const auto b = defect(jordan_matrix({q(1), 2}), 2).matrix;
  auto phi = [&](const DenseVector& v) { return inner(b.apply(v), v); };
  gen::Rng rng(73);
  const auto h = gen::random_exact_vector(rng, 2);
  const auto a = polarization_reconstruct(phi, h, gen::random_exact_vector(rng, 2));
  const auto c = polarization_reconstruct(phi, h, gen::random_exact_vector(rng, 2));
  CHECK(a == c);
  CHECK(a == phi(h));

  auto zero = [](const DenseVector& v) { return Scalar::zero(v.mode()); };
  CHECK(polarization_reconstruct(zero, h, e0).is_zero(0.0));
}

TEST_CASE("float mode matches exact verdicts on conjugated Jordan blocks") {
  gen::Rng rng(79);
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto u = gen::random_unitary(rng, k);
    const auto t = gen::conjugate(jordan_matrix({qi(3, 4) / q(5), k}).to_mode(Mode::Float), u);
    const auto v = strict_order(t, default_m_max(k), 1e-8);
    REQUIRE(v.is_strict());
    CHECK(v.m == 2 * k - 1);
  }
}
