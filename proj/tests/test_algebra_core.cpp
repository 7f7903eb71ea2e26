#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "misolab/combinatorics.hpp"
#include "misolab/finite_vector.hpp"
#include "misolab/generators.hpp"
#include "misolab/linalg.hpp"
#include "misolab/polynomial.hpp"
#include "misolab/weighted_shift.hpp"

using namespace misolab;

namespace {

Scalar q(long n, long d = 1) { return Scalar::exact(mpq_class(n, d)); }
Scalar qi(long re, long im) { return Scalar::exact(re, im); }
const Scalar I = Scalar::imag_unit(Mode::Exact);

DenseOperator m2(Scalar a, Scalar b, Scalar c, Scalar d) {
  return DenseOperator::from_rows({{a, b}, {c, d}});
}

}  // namespace

TEST_CASE("scalar literals parse into canonical rationals") {
  CHECK(parse_scalar("3/4", Mode::Exact) == q(3, 4));
  CHECK(parse_scalar("-6/8+1/2i", Mode::Exact) == Scalar::exact(mpq_class(-3, 4), mpq_class(1, 2)));
  CHECK(parse_scalar("i", Mode::Exact) == I);
  CHECK(parse_scalar("-i", Mode::Exact) == -I);
  CHECK(parse_scalar("3/4i", Mode::Exact) == Scalar::exact(0, mpq_class(3, 4)));
  CHECK(parse_scalar("0.125", Mode::Exact) == q(1, 8));
  CHECK(parse_scalar("1-2i", Mode::Exact) == qi(1, -2));
  CHECK_THROWS_AS(parse_scalar("1/0", Mode::Exact), ParseError);
  CHECK_THROWS_AS(parse_scalar("1 + i", Mode::Exact), ParseError);
  CHECK_THROWS_AS(parse_scalar("abc", Mode::Exact), ParseError);
  CHECK_THROWS_AS(parse_scalar("", Mode::Exact), ParseError);

  for (const char* text : {"0", "1", "-1", "3/4", "0+1i", "-5/13+12/13i", "2-7/3i"}) {
    const Scalar s = parse_scalar(text, Mode::Exact);
    CHECK(parse_scalar(s.to_string(), Mode::Exact) == s);
  }
}

TEST_CASE("float literals round-trip through to_string") {
  const Scalar s = Scalar::floating(0.1, -1.0 / 3.0);
  CHECK(parse_scalar(s.to_string(), Mode::Float) == s);
}

TEST_CASE("mixing modes is an error") {
  CHECK_THROWS_AS(q(1) + Scalar::floating(1.0), ModeMismatch);
  CHECK_THROWS_AS(DenseOperator::identity(2, Mode::Exact) * DenseOperator::identity(2, Mode::Float),
                  ModeMismatch);
  CHECK_THROWS_AS(DenseOperator::identity(2, Mode::Exact) * DenseOperator::identity(3, Mode::Exact),
                  DimensionMismatch);
}

TEST_CASE("exact arithmetic is closed and has no rounding") {
  gen::Rng rng(11);
  for (int k = 0; k < 50; ++k) {
    const Scalar a = gen::random_rational(rng);
    const Scalar b = gen::random_rational(rng);
    const Scalar c = gen::random_rational(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!b.exactly_zero()) CHECK((a / b) * b == a);
    CHECK((a * b).conj() == a.conj() * b.conj());
  }
}

TEST_CASE("matmul examples") {
  const DenseOperator a = m2(q(2), q(3), I, q(-1, 2));
  CHECK(matmul(DenseOperator::identity(2, Mode::Exact), a) == a);
  const DenseOperator j = m2(q(1), q(1), q(0), q(1));
  CHECK(matmul(j, j) == m2(q(1), q(2), q(0), q(1)));
  const DenseOperator d = m2(q(2), q(0), q(0), q(2));
  const auto inv = linalg::inverse(d, 0.0);
  REQUIRE(inv.has_value());
  CHECK(matmul(d, *inv) == DenseOperator::identity(2, Mode::Exact));
}

TEST_CASE("adjoint examples") {
  const DenseOperator t = m2(I, q(2), q(0), -I);
  CHECK(adjoint(t) == m2(-I, q(0), q(2), I));
  const DenseOperator h = m2(q(1), qi(2, 1), qi(2, -1), q(-3));
  CHECK(adjoint(h) == h);
  CHECK(adjoint(adjoint(t)) == t);
}

TEST_CASE("adjoint reverses products") {
  gen::Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto a = gen::random_exact_matrix(rng, 3);
    const auto b = gen::random_exact_matrix(rng, 3);
    CHECK(adjoint(a * b) == adjoint(b) * adjoint(a));
  }
}

TEST_CASE("inner product examples") {
  CHECK(inner(DenseVector{q(1), q(0)}, DenseVector{I, q(1)}) == -I);
  CHECK(inner(DenseVector{q(3), q(4)}, DenseVector{q(3), q(4)}) == q(25));
  CHECK(inner(FiniteVector::basis(2, Mode::Exact), FiniteVector::basis(5, Mode::Exact)) == q(0));
}

TEST_CASE("inner product is recovered from four norms") {
  gen::Rng rng(17);
  for (int k = 0; k < 30; ++k) {
    const auto u = gen::random_exact_vector(rng, 4);
    const auto v = gen::random_exact_vector(rng, 4);
    // ⟨u,v⟩ = ¼ Σ_k i^k ||u + i^k v||²
    Scalar total = q(0);
    Scalar phase = q(1);
    for (int k2 = 0; k2 < 4; ++k2) {
      const DenseVector w = u + v.scaled(phase);
      total += phase * inner(w, w);
      phase *= I;
    }
    CHECK(total / q(4) == inner(u, v));
    const Scalar uu = inner(u, u);
    CHECK(uu.imag_part().exactly_zero());
    CHECK(sgn(uu.exact_value().re) > 0);
  }
}

TEST_CASE("finite vectors stay canonical") {
  FiniteVector v(Mode::Exact, {{0, q(1)}, {3, q(0)}, {4, q(2)}});
  CHECK(v.support().size() == 2);
  const FiniteVector w = v - v;
  CHECK(w.empty());
  CHECK(inner(w, w) == q(0));
  CHECK(inner(v, v) == q(5));

  FiniteVector f(Mode::Float, {{0, Scalar::floating(1e-14)}, {1, Scalar::floating(1.0)}});
  CHECK(f.support().size() == 2);
  CHECK(f.cleaned(1e-12).support().size() == 1);
}

TEST_CASE("falling factorial examples and binomial cross-check") {
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(3, 5) == 0);
  CHECK(falling_factorial(7, 0) == 1);
  // Pascal's triangle built independently.
  std::vector<std::vector<mpz_class>> pascal(21);
  for (std::size_t n = 0; n <= 20; ++n) {
    pascal[n].assign(n + 1, 1);
    for (std::size_t k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
  }
  for (unsigned n = 0; n <= 20; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      CHECK(falling_factorial(n, k) / factorial(k) == pascal[n][k]);
      CHECK(binomial(n, k) == pascal[n][k]);
    }
  }
}

TEST_CASE("polynomial examples") {
  const Polynomial p(Mode::Exact, {q(1), I});
  CHECK(p.star() == Polynomial(Mode::Exact, {q(1), -I}));
  const Polynomial r(Mode::Exact, {q(0), q(0), qi(2, 3)});
  CHECK(r.re_part() == Polynomial(Mode::Exact, {q(0), q(0), q(2)}));
  CHECK(r.im_part() == Polynomial(Mode::Exact, {q(0), q(0), q(3)}));
  const Polynomial s(Mode::Exact, {q(1), q(0), q(1)});
  CHECK(s.eval(3) == q(10));
  CHECK(Polynomial(Mode::Exact, {q(0), q(0)}).is_zero());
  CHECK_FALSE(Polynomial(Mode::Exact).degree().has_value());
  CHECK(*s.degree() == 2);
  CHECK((p * p.star()).has_real_coeffs(0.0));
  CHECK_THROWS_AS(s + Polynomial(Mode::Float, {Scalar::floating(1.0)}), ModeMismatch);
}

TEST_CASE("falling factorial polynomial matches the integer values") {
  for (std::size_t k = 0; k <= 6; ++k) {
    const Polynomial f = Polynomial::falling(k, Mode::Exact);
    for (long n = 0; n <= 10; ++n) {
      CHECK(f.eval(n) == Scalar::from_mpz(falling_factorial(static_cast<unsigned long>(n), k), Mode::Exact));
    }
  }
}

TEST_CASE("weighted shift powers carry the weight products") {
  const WeightedShift w = WeightedShift::from_weights(
      Mode::Exact, {q(1), q(2)}, [](std::size_t n) { return q(static_cast<long>(n) + 1, 2); });
  FiniteVector v = FiniteVector::basis(0, Mode::Exact);
  Scalar product = q(1);
  for (std::size_t n = 0; n < 8; ++n) {
    const FiniteVector p = w.apply_power(FiniteVector::basis(0, Mode::Exact), n);
    REQUIRE(p.support().size() == 1);
    CHECK(p.support().begin()->first == n);
    CHECK(p.at(n) == product);
    product *= w.weight(n);
  }
  const FiniteVector e3 = w.apply(FiniteVector::basis(3, Mode::Exact));
  CHECK(e3 == FiniteVector(Mode::Exact, {{4, w.weight(3)}}));
}

TEST_CASE("squared-weight shifts only give rational square roots") {
  const WeightedShift w = WeightedShift::from_squared_weights(
      Mode::Exact, {}, [](std::size_t n) { return n % 2 == 0 ? q(4, 9) : q(2); });
  CHECK(w.weight(0) == q(2, 3));
  CHECK_THROWS_AS(w.weight(1), PreconditionError);
  CHECK(w.basis_orbit_norm2(0, 3) == q(32, 81));
  CHECK(w.orbit_inner(FiniteVector::basis(0, Mode::Exact), FiniteVector::basis(0, Mode::Exact), 2) ==
        q(8, 9));
}
