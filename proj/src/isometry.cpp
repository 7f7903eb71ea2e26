#include "misolab/isometry.hpp"

#include <algorithm>

#include "misolab/linalg.hpp"

namespace misolab {

namespace {

// max |T*^k T^k| for k = 0..m_max.
std::vector<double> gram_power_magnitudes(const DenseOperator& t, unsigned m_max) {
  std::vector<double> out;
  out.reserve(m_max + 1);
  DenseOperator power = DenseOperator::identity(t.dim(), t.mode());
  for (unsigned k = 0; k <= m_max; ++k) {
    if (k > 0) power = power * t;
    out.push_back((power.adjoint() * power).max_abs());
  }
  return out;
}

double threshold_from_magnitudes(const std::vector<double>& g, unsigned m,
                                 double tol) {
  double scale = 0.0;
  for (unsigned k = 0; k <= m; ++k) scale = std::max(scale, g[k]);
  return tol * scale;
}

}  // namespace

DefectOperator defect(const DenseOperator& t, unsigned m) {
  return {m, defect_sequence(t, m).back()};
}

DefectOperator defect_by_sum(const DenseOperator& t, unsigned m) {
  const Mode mode = t.mode();
  DenseOperator total = DenseOperator::zero(t.dim(), mode);
  DenseOperator power = DenseOperator::identity(t.dim(), mode);
  for (unsigned k = 0; k <= m; ++k) {
    if (k > 0) power = power * t;
    DenseOperator term = (power.adjoint() * power)
                             .scaled(Scalar::from_mpz(binomial(m, k), mode));
    total = (k % 2 == 1) ? total - term : total + term;
  }
  return {m, total};
}

std::vector<DenseOperator> defect_sequence(const DenseOperator& t, unsigned m_max) {
  std::vector<DenseOperator> out;
  out.reserve(m_max + 1);
  out.push_back(DenseOperator::identity(t.dim(), t.mode()));
  const DenseOperator t_star = t.adjoint();
  for (unsigned k = 0; k < m_max; ++k) {
    out.push_back(out.back() - t_star * out.back() * t);
  }
  return out;
}

double defect_threshold(const DenseOperator& t, unsigned m, double tol) {
  if (t.mode() == Mode::Exact) return 0.0;
  return threshold_from_magnitudes(gram_power_magnitudes(t, m), m, tol);
}

bool is_m_isometry(const DenseOperator& t, unsigned m, double tol) {
  if (m == 0) throw PreconditionError("is_m_isometry needs m ≥ 1");
  return defect(t, m).matrix.is_zero(defect_threshold(t, m, tol));
}

std::string OrderVerdict::describe() const {
  if (kind == Kind::StrictOrder) return "strict-order(" + std::to_string(m) + ")";
  return "not-within-bound(" + std::to_string(m) + ")";
}

unsigned default_m_max(std::size_t dim) { return static_cast<unsigned>(2 * dim + 1); }

std::optional<DenseVector> hermitian_witness(const DenseOperator& b, double tol) {
  const std::size_t n = b.dim();
  const Mode mode = b.mode();
  auto form = [&b](const DenseVector& h) { return inner(b.apply(h), h); };

  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double v = b(j, j).abs();
    if (v > best_value) {
      best_value = v;
      best = j;
    }
  }
  if (!b(best, best).is_zero(tol)) return DenseVector::basis(n, best, mode);

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const DenseVector ej = DenseVector::basis(n, j, mode);
      const DenseVector ek = DenseVector::basis(n, k, mode);
      const DenseVector plus = ej + ek;
      if (!form(plus).is_zero(tol)) return plus;
      const DenseVector twisted = ej + ek.scaled(Scalar::imag_unit(mode));
      if (!form(twisted).is_zero(tol)) return twisted;
    }
  }
  if (mode == Mode::Float && !b.is_zero(tol)) {
    DenseVector v = linalg::dominant_hermitian_eigenvector(b);
    if (!form(v).is_zero(tol)) return v;
  }
  return std::nullopt;
}

OrderVerdict strict_order(const DenseOperator& t, unsigned m_max, double tol) {
  if (m_max == 0) throw PreconditionError("strict_order needs m_max ≥ 1");
  const auto betas = defect_sequence(t, m_max);
  std::vector<double> magnitudes;
  if (t.mode() == Mode::Float) magnitudes = gram_power_magnitudes(t, m_max);
  auto threshold = [&](unsigned m) {
    return t.mode() == Mode::Exact ? 0.0
                                   : threshold_from_magnitudes(magnitudes, m, tol);
  };

  OrderVerdict verdict;
  verdict.m = m_max;
  for (unsigned m = 1; m <= m_max; ++m) {
    verdict.defect_norms.push_back(betas[m].max_abs());
    if (t.mode() == Mode::Exact) verdict.defect_norms_exact.push_back(betas[m].max_abs2());
    if (!betas[m].is_zero(threshold(m))) continue;
    verdict.kind = OrderVerdict::Kind::StrictOrder;
    verdict.m = m;
    if (m >= 2) {
      const auto& prev = betas[m - 1];
      verdict.witness = hermitian_witness(prev, threshold(m - 1));
      if (verdict.witness) {
        verdict.witness_value = inner(prev.apply(*verdict.witness), *verdict.witness);
      }
    }
    return verdict;
  }
  return verdict;
}

bool newton_expansion_check(const DenseOperator& t, unsigned m, unsigned n_max,
                            double tol) {
  if (!is_m_isometry(t, m, tol)) {
    throw PreconditionError("newton_expansion_check: T is not an " +
                            std::to_string(m) + "-isometry");
  }
  const Mode mode = t.mode();
  const auto betas = defect_sequence(t, m - 1);
  DenseOperator power = DenseOperator::identity(t.dim(), mode);
  for (unsigned n = 0; n <= n_max; ++n) {
    if (n > 0) power = power * t;
    const DenseOperator lhs = power.adjoint() * power;
    DenseOperator rhs = DenseOperator::zero(t.dim(), mode);
    for (unsigned k = 0; k < m; ++k) {
      Scalar c = Scalar::from_mpz(falling_factorial(n, k), mode) /
                 Scalar::from_mpz(factorial(k), mode);
      if (k % 2 == 1) c = -c;
      rhs = rhs + betas[k].scaled(c);
    }
    const double scale = std::max(1.0, lhs.max_abs());
    if (!(lhs - rhs).is_zero(mode == Mode::Exact ? 0.0 : tol * scale)) return false;
  }
  return true;
}

Scalar orbit_inner(const DenseOperator& t, const DenseVector& f,
                   const DenseVector& g, std::size_t n) {
  DenseVector a = f;
  DenseVector b = g;
  for (std::size_t k = 0; k < n; ++k) {
    a = t.apply(a);
    b = t.apply(b);
  }
  return inner(a, b);
}

OrbitSequence orbit_sequence(const DenseOperator& t, const DenseVector& h,
                             std::size_t window) {
  std::vector<Scalar> values;
  values.reserve(window);
  DenseVector v = h;
  for (std::size_t n = 0; n < window; ++n) {
    if (n > 0) v = t.apply(v);
    values.push_back(v.norm2());
  }
  return OrbitSequence(std::move(values), "dense orbit");
}

OrbitSequence orbit_sequence(const WeightedShift& w, const FiniteVector& h,
                             std::size_t window) {
  std::vector<Scalar> values;
  values.reserve(window);
  for (std::size_t n = 0; n < window; ++n) values.push_back(w.orbit_inner(h, h, n));
  return OrbitSequence(std::move(values), "weighted-shift orbit");
}

SurveyResult local_isometry_survey(const DenseOperator& t,
                                   const std::vector<DenseVector>& vectors,
                                   double tol, std::optional<std::size_t> window) {
  if (vectors.empty()) throw PreconditionError("survey needs at least one vector");
  const std::size_t len = window.value_or(default_window(t.dim()));
  SurveyResult result;
  std::size_t bound = 0;
  bool all_polynomial = true;
  for (const auto& h : vectors) {
    result.per_vector.push_back(detect_degree(orbit_sequence(t, h, len), tol));
    const auto& v = result.per_vector.back();
    if (!v.is_polynomial()) {
      all_polynomial = false;
    } else if (v.degree) {
      bound = std::max(bound, *v.degree + 1);
    }
  }
  if (all_polynomial) result.order_lower_bound = bound;
  result.order = strict_order(t, default_m_max(t.dim()),
                              t.mode() == Mode::Exact ? 0.0 : kDefaultDefectTol);
  result.consistent_with_m_isometry =
      all_polynomial && result.order->is_strict() && bound <= result.order->m;
  return result;
}

SurveyResult local_isometry_survey(const WeightedShift& w,
                                   const std::vector<FiniteVector>& vectors,
                                   std::size_t window, double tol) {
  if (vectors.empty()) throw PreconditionError("survey needs at least one vector");
  SurveyResult result;
  std::size_t bound = 0;
  bool all_polynomial = true;
  for (const auto& h : vectors) {
    result.per_vector.push_back(detect_degree(orbit_sequence(w, h, window), tol));
    const auto& v = result.per_vector.back();
    if (!v.is_polynomial()) {
      all_polynomial = false;
    } else if (v.degree) {
      bound = std::max(bound, *v.degree + 1);
    }
  }
  if (all_polynomial) result.order_lower_bound = bound;
  result.consistent_with_m_isometry = all_polynomial;
  return result;
}

}  // namespace misolab
