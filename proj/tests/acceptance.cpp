// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "misolab/generators.hpp"
#include "misolab/shift_factory.hpp"
#include "misolab/spectral.hpp"

using namespace misolab;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr double kFloatTol = 1e-8;
constexpr double kResidualTol = 1e-6;

Scalar q(long n, long d = 1) { return Scalar::exact(mpq_class(n, d)); }
const Scalar kI = Scalar::exact(0, 1);
const Scalar k345 = Scalar::exact(mpq_class(3, 5), mpq_class(4, 5));

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;
  double worst_residual = 0.0;

  void operator()(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  }
  void residual(double r, const std::string& what) {
    worst_residual = std::max(worst_residual, r);
    (*this)(r <= kResidualTol, what + " residual " + std::to_string(r));
  }
};

// Oracles below use only matrix products, adjoints and inner products.

DenseOperator brute_defect(const DenseOperator& t, unsigned m) {
  DenseOperator total = DenseOperator::zero(t.dim(), t.mode());
  DenseOperator tk = DenseOperator::identity(t.dim(), t.mode());
  for (unsigned k = 0; k <= m; ++k) {
    const auto term = (tk.adjoint() * tk).scaled(Scalar::from_mpz(binomial(m, k), t.mode()));
    total = k % 2 ? total - term : total + term;
    tk = t * tk;
  }
  return total;
}

DenseOperator jordan(const Scalar& z, std::size_t k) {
  std::vector<Scalar> e(k * k, Scalar::zero(z.mode()));
  for (std::size_t r = 0; r < k; ++r) {
    e[r * k + r] = z;
    if (r + 1 < k) e[r * k + r + 1] = Scalar::one(z.mode());
  }
  return DenseOperator(k, e);
}

// Smallest m ≤ m_max with brute β_m = 0.
std::optional<unsigned> brute_order(const DenseOperator& t, unsigned m_max) {
  for (unsigned m = 1; m <= m_max; ++m) {
    if (brute_defect(t, m).is_zero(0.0)) return m;
  }
  return std::nullopt;
}

mpq_class horner(const std::vector<mpq_class>& c, long x) {
  mpq_class acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Scalar i_power(unsigned e) {
  static const Scalar cycle[4] = {q(1), kI, q(-1), -kI};
  return cycle[e % 4];
}

struct Worked {
  DenseOperator t;
  DenseVector h1, h2;
};

Worked worked(Mode mode) {
  const DenseOperator t = DenseOperator::from_rows({{kI, q(2)}, {q(0), -kI}});
  return {t.to_mode(mode), DenseVector{q(1), q(0)}.to_mode(mode),
          DenseVector{kI, q(1)}.to_mode(mode)};
}

double rel_defect(const DenseOperator& t, unsigned m) {
  const double scale = defect_threshold(t, m, 1.0);
  return brute_defect(t, m).max_abs() / std::max(scale, 1.0);
}

const std::vector<Scalar>& jordan_eigenvalues() {
  static const std::vector<Scalar> zs{q(1), q(-1), kI, -kI, k345};
  return zs;
}

// Criteria -------------------------------------------------------------------

void jordan_order_law(gen::Rng&, Tally& t) {
  for (const auto& z : jordan_eigenvalues()) {
    for (std::size_t k = 1; k <= 5; ++k) {
      const std::string label = "J(" + z.to_string() + "," + std::to_string(k) + ")";
      const auto j = jordan(z, k);
      const auto v = strict_order(j);
      t(v.is_strict() && v.m == 2 * k - 1, label + " library order " + v.describe());
      t(brute_order(j, 2 * static_cast<unsigned>(k) + 1) == 2 * k - 1, label + " brute order");
    }
  }
}

void worked_checks(const Worked& w, Tally& t, double tol, const std::string& tag) {
  const bool exact = tol == 0.0;
  const DenseVector sum = w.h1 + w.h2;
  for (unsigned n = 0; n <= 20; ++n) {
    const Scalar g = w.t.power(n).apply(sum).norm2();
    if (exact) {
      t(g == q(3), tag + "||T^n(h1+h2)||^2 = 3 at n = " + std::to_string(n));
    } else {
      t.residual(std::abs(g.to_complex() - 3.0), tag + "orbit norm n = " + std::to_string(n));
    }
  }
  for (unsigned k = 0; k <= 6; ++k) {
    for (unsigned l = 0; l <= 6; ++l) {
      const Scalar got = inner(w.t.power(k).apply(w.h1), w.t.power(l).apply(w.h2));
      const Scalar want = -i_power(k + l + 1);
      const std::string label = tag + "<T^" + std::to_string(k) + "h1,T^" + std::to_string(l) + "h2>";
      if (exact) {
        t(got == want, label);
      } else {
        t.residual(std::abs(got.to_complex() - want.to_complex()), label);
      }
    }
  }
  const auto v = strict_order(w.t, 9, exact ? kDefaultDefectTol : tol);
  t(v.kind == OrderVerdict::Kind::NotWithinBound && v.m == 9, tag + "strict order " + v.describe());
  if (exact) t(!brute_order(w.t, 9).has_value(), "brute order within 9");
  const auto eq = jordan_pair_equivalences(w.t, w.h1, w.h2, kI.to_mode(w.t.mode()),
                                           (-kI).to_mode(w.t.mode()), tol);
  for (std::size_t c = 0; c < 5; ++c) {
    t(!eq.conditions[c], tag + "condition " + std::to_string(c + 1) + " is false");
  }
}

void worked_example(gen::Rng&, Tally& t) { worked_checks(worked(Mode::Exact), t, 0.0, ""); }

void first_example(gen::Rng&, Tally& t) {
  const auto j = DenseOperator::from_rows({{kI, q(1)}, {q(0), kI}});
  DenseVector v{q(1), q(0)};
  for (unsigned n = 0; n <= 20; ++n) {
    t(v.norm2() == q(1), "||T^n h||^2 = 1 at n = " + std::to_string(n));
    v = j.apply(v);
  }
}

void newton_calculus(gen::Rng& rng, Tally& t) {
  for (int trial = 0; trial < 200; ++trial) {
    const auto deg = static_cast<std::size_t>(trial % 7);
    std::vector<mpq_class> c;
    for (std::size_t k = 0; k <= deg; ++k) c.push_back(gen::random_rational(rng, 9, 7).exact_value().re);
    while (c.back() == 0) c.back() = 1;
    std::vector<Scalar> coeffs, samples;
    for (const auto& x : c) coeffs.push_back(Scalar::exact(x));
    const long len = static_cast<long>(deg) + 6;
    for (long n = 0; n < len; ++n) samples.push_back(Scalar::exact(horner(c, n)));

    const Polynomial back = newton_reconstruct(samples, 0.0);
    t(back == Polynomial(Mode::Exact, coeffs), "roundtrip of degree " + std::to_string(deg));

    const std::size_t depth = static_cast<std::size_t>(len) - 1;
    const auto table = difference_table(samples, depth);
    std::vector<mpq_class> row;
    for (const auto& s : samples) row.push_back(s.exact_value().re);
    for (std::size_t m = 0; m <= depth; ++m) {
      for (std::size_t n = 0; n + m < samples.size(); ++n) {
        mpq_class bin = 0;
        for (std::size_t k = 0; k <= m; ++k) {
          const mpq_class term = mpq_class(binomial(m, k)) * samples[n + k].exact_value().re;
          if ((m - k) % 2) bin -= term; else bin += term;
        }
        t(table.rows[m][n] == Scalar::exact(row[n]), "iterated subtraction row " + std::to_string(m));
        t(Scalar::exact(bin) == Scalar::exact(row[n]), "binomial form row " + std::to_string(m));
      }
      std::vector<mpq_class> next;
      for (std::size_t n = 0; n + 1 < row.size(); ++n) next.push_back(row[n + 1] - row[n]);
      row = next;
    }
  }
}

void defect_consistency(gen::Rng& rng, Tally& t) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto m4 = gen::random_exact_matrix(rng, 4, 3, 3);
    const auto seq = defect_sequence(m4, 6);
    std::vector<DenseOperator> brute;
    for (unsigned m = 0; m <= 6; ++m) {
      brute.push_back(brute_defect(m4, m));
      t(seq[m] == brute.back(), "recurrence vs sum at m = " + std::to_string(m));
    }
    for (int j = 0; j < 5; ++j) {
      const auto h = gen::random_exact_vector(rng, 4);
      const auto table = difference_table(orbit_sequence(m4, h, 8), 6);
      for (unsigned m = 0; m <= 6; ++m) {
        Scalar want = inner(brute[m].apply(h), h);
        if (m % 2) want = -want;
        t(table.rows[m][0] == want, "bottom difference at m = " + std::to_string(m));
      }
    }
  }
}

struct ShiftCase {
  std::vector<long> coeffs;
  std::string name;
};

const std::vector<ShiftCase>& shift_cases() {
  static const std::vector<ShiftCase> cases{
      {{1}, "1"}, {{1, 1}, "x+1"}, {{1, 2, 1}, "(x+1)^2"}, {{1, 0, 1}, "x^2+1"}, {{3, 2}, "2x+3"}};
  return cases;
}

void shift_checks(Mode mode, Tally& t, double tol, const std::string& tag) {
  for (const auto& sc : shift_cases()) {
    std::vector<Scalar> coeffs;
    std::vector<mpq_class> cq;
    for (long x : sc.coeffs) {
      coeffs.push_back(q(x).to_mode(mode));
      cq.push_back(x);
    }
    const unsigned deg = static_cast<unsigned>(sc.coeffs.size() - 1);
    const auto w = shift_from_polynomial(Polynomial(mode, coeffs), 30);
    const double dtol = mode == Mode::Exact ? 0.0 : tol;
    t(shift_is_m_isometry(w, deg + 1, 4, dtol), tag + sc.name + " is a " + std::to_string(deg + 1) + "-isometry");
    if (deg > 0) t(!shift_is_m_isometry(w, deg, 4, dtol), tag + sc.name + " is not a " + std::to_string(deg) + "-isometry");
    for (long j = 0; j <= 24; ++j) {
      for (long n = 0; n + j <= 24; ++n) {
        const mpq_class want = horner(cq, n + j) / horner(cq, j);
        const Scalar got = w.basis_orbit_norm2(static_cast<std::size_t>(j), static_cast<std::size_t>(n));
        if (mode == Mode::Exact) {
          t(got == Scalar::exact(want), tag + sc.name + " orbit norm");
        } else {
          const double wd = want.get_d();
          t.residual(std::abs(got.real_double() - wd) / wd, tag + sc.name + " orbit norm");
        }
      }
    }
  }
}

void shift_factory(gen::Rng&, Tally& t) { shift_checks(Mode::Exact, t, 0.0, ""); }

void decomposition_checks(const std::vector<gen::CorpusEntry>& corpus, Tally& t,
                          const std::function<DenseOperator(const DenseOperator&)>& prepare,
                          double tol) {
  const bool exact = tol == 0.0;
  std::size_t certified = 0;
  for (const auto& e : corpus) {
    const auto op = prepare(e.t);
    const bool expect = e.kind == gen::CorpusEntry::Kind::Certified;
    const auto d = algebraic_decompose(op, exact ? e.hints : std::vector<Scalar>{},
                                       exact ? kDefaultDefectTol : tol);
    const auto v = strict_order(op, default_m_max(op.dim()), exact ? kDefaultDefectTol : tol);
    t(d.certified == expect, e.label + " certification");
    if (d.certified) ++certified;
    if (expect) {
      t(v.is_strict() && v.m == d.predicted_strict_order, e.label + " predicted order vs " + v.describe());
      t(d.predicted_strict_order % 2 == 1, e.label + " odd order");
      if (exact) {
        t(brute_order(op, default_m_max(op.dim())) == d.predicted_strict_order, e.label + " brute order");
      } else {
        t.residual(rel_defect(op, d.predicted_strict_order), e.label + " defect at predicted order");
      }
    } else {
      t(v.kind == OrderVerdict::Kind::NotWithinBound && v.m == default_m_max(op.dim()),
        e.label + " " + v.describe());
    }
    if (!exact) t.residual(d.reassembly_residual, e.label + " reassembly");
  }
  t(certified == 20, "certified count " + std::to_string(certified));
}

void decomposition(gen::Rng& rng, Tally& t) {
  const auto corpus = gen::decomposition_corpus(rng, 20);
  t(corpus.size() == 60, "corpus size");
  decomposition_checks(corpus, t, [](const DenseOperator& m) { return m; }, 0.0);
}

void perturbation(gen::Rng& rng, Tally& t) {
  std::size_t discrepancies = 0;
  const auto corpus = gen::perturbation_corpus(rng, 30);
  t(corpus.size() == 30, "corpus size");
  for (const auto& pair : corpus) {
    const auto& a = pair.a;
    const auto& n = pair.n;
    const std::size_t dim = a.dim();
    const auto m_a = brute_order(a, default_m_max(dim));
    std::size_t nu = 1;
    while (nu <= dim && !n.power(static_cast<unsigned>(nu)).is_zero(0.0)) ++nu;
    if (!m_a || nu > dim || !(a * n == n * a)) {
      ++discrepancies;
      t(false, pair.label + " is not a valid pair");
      continue;
    }
    const unsigned bound = *m_a + 2 * static_cast<unsigned>(nu - 1);
    const auto order = brute_order(a + n, bound + 2);
    // Σ_l (−1)^l C(m_A − 1, l) (A^l N^{ν−1})*(A^l N^{ν−1}) ≠ 0
    const auto top = n.power(static_cast<unsigned>(nu - 1));
    DenseOperator form = DenseOperator::zero(dim, Mode::Exact);
    for (unsigned l = 0; l < *m_a; ++l) {
      const auto b = a.power(l) * top;
      const auto term = (b.adjoint() * b).scaled(Scalar::from_mpz(binomial(*m_a - 1, l), Mode::Exact));
      form = l % 2 ? form - term : form + term;
    }
    const bool fires = !form.is_zero(0.0);
    const auto p = perturbation_analysis(a, n);
    bool ok = order.has_value() && *order <= bound && ((*order == bound) == fires);
    ok = ok && p.m_a == *m_a && p.nu == nu && p.m_n_bound == bound && p.strict == fires &&
         p.bound_verified;
    if (!ok) ++discrepancies;
    t(ok, pair.label + " bound " + std::to_string(bound));
  }
  t(discrepancies == 0, std::to_string(discrepancies) + " discrepancies");
}

void float_robustness(gen::Rng& rng, Tally& t) {
  auto to_float = [&rng](const DenseOperator& m) {
    return gen::conjugate(m.to_mode(Mode::Float), gen::random_unitary(rng, m.dim()));
  };
  for (const auto& z : jordan_eigenvalues()) {
    for (std::size_t k = 1; k <= 5; ++k) {
      const auto j = to_float(jordan(z, k));
      const auto v = strict_order(j, 11, kFloatTol);
      const std::string label = "float J(" + z.to_string() + "," + std::to_string(k) + ")";
      t(v.is_strict() && v.m == 2 * k - 1, label + " " + v.describe());
      t.residual(rel_defect(j, static_cast<unsigned>(2 * k - 1)), label);
    }
  }
  const auto w = worked(Mode::Float);
  const auto u = gen::random_unitary(rng, 2);
  worked_checks({gen::conjugate(w.t, u), u.apply(w.h1), u.apply(w.h2)}, t, kFloatTol, "float ");
  shift_checks(Mode::Float, t, 1e-9, "float ");
  decomposition_checks(gen::decomposition_corpus(rng, 20), t, to_float, kFloatTol);
}

void degree_density(gen::Rng& rng, Tally& t) {
  const auto corpus = gen::strict_isometry_corpus(rng, 10, {3, 5, 7});
  t(corpus.size() == 10, "corpus size");
  for (const auto& s : corpus) {
    t(brute_order(s.t, default_m_max(s.t.dim())) == s.order, "operator order " + std::to_string(s.order));
    std::size_t hits = 0;
    for (int j = 0; j < 50; ++j) {
      const auto h = gen::random_exact_vector(rng, s.t.dim(), 1000000, 1000);
      const auto d = detect_degree(orbit_sequence(s.t, h, default_window(s.t.dim())), 0.0);
      if (d.degree && *d.degree + 1 == s.order) ++hits;
    }
    t(hits >= 49, "order " + std::to_string(s.order) + ": " + std::to_string(hits) + "/50 maximal");
  }
}

struct Criterion {
  const char* name;
  void (*run)(gen::Rng&, Tally&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"Jordan order law", jordan_order_law},
      {"worked example", worked_example},
      {"first example", first_example},
      {"Newton calculus", newton_calculus},
      {"defect consistency", defect_consistency},
      {"shift factory", shift_factory},
      {"decomposition equivalence", decomposition},
      {"perturbation", perturbation},
      {"float robustness", float_robustness},
      {"orbit degree density", degree_density},
  };
  std::uint64_t seed = kSeed;
  if (const char* env = std::getenv("MISOLAB_SEED")) seed = std::strtoull(env, nullptr, 10);
  std::printf("seed %llu\n", static_cast<unsigned long long>(seed));
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    gen::Rng rng(seed + static_cast<std::uint64_t>(index));
    Tally tally;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(rng, tally);
    } catch (const std::exception& e) {
      tally(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = tally.failures == 0;
    failed += ok ? 0 : 1;
    std::printf("criterion %2d %-26s %s  (%zu checks, %.2fs", index, c.name, ok ? "PASS" : "FAIL",
                tally.checks, secs);
    if (tally.worst_residual > 0.0) std::printf(", max residual %.2e", tally.worst_residual);
    std::printf(")\n");
    if (!ok) std::printf("    %zu failed; first: %s\n", tally.failures, tally.first.c_str());
  }
  return failed == 0 ? 0 : 1;
}
