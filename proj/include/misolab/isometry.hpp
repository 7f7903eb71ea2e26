#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "misolab/combinatorics.hpp"
#include "misolab/difference.hpp"
#include "misolab/finite_vector.hpp"
#include "misolab/matrix.hpp"
#include "misolab/weighted_shift.hpp"

namespace misolab {

/// Default relative tolerance for Float-mode "β_m = 0" tests.
inline constexpr double kDefaultDefectTol = 1e-8;

/// β_m(T) = Σ_{k=0}^{m} (−1)^k C(m,k) T*^k T^k.
struct DefectOperator {
  unsigned m = 0;
  DenseOperator matrix;
};

/// β_m(T) through the recurrence β_{k+1} = β_k − T*·β_k·T.
DefectOperator defect(const DenseOperator& t, unsigned m);

/// β_m(T) through the defining binomial sum (independent route).
DefectOperator defect_by_sum(const DenseOperator& t, unsigned m);

/// β_0(T), …, β_{m_max}(T) by the recurrence.
std::vector<DenseOperator> defect_sequence(const DenseOperator& t, unsigned m_max);

/// Float-mode threshold for treating β_m(T) as zero: tol times the largest
/// summand magnitude, max_{k≤m} max|T*^k T^k|. Zero in Exact mode.
double defect_threshold(const DenseOperator& t, unsigned m, double tol);

/// β_m(T) = 0, exactly or within defect_threshold.
bool is_m_isometry(const DenseOperator& t, unsigned m,
                   double tol = kDefaultDefectTol);

struct OrderVerdict {
  enum class Kind { StrictOrder, NotWithinBound };

  Kind kind = Kind::NotWithinBound;
  /// The strict order (StrictOrder) or the searched bound (NotWithinBound).
  unsigned m = 0;
  /// For StrictOrder with m ≥ 2: h with ⟨β_{m−1}(T)h, h⟩ ≠ 0.
  std::optional<DenseVector> witness;
  std::optional<Scalar> witness_value;
  /// Largest |entry| of β_k(T) for k = 1..(last order examined).
  std::vector<double> defect_norms;
  /// Exact-mode defect sizes as max |entry|² (empty in Float mode).
  std::vector<Scalar> defect_norms_exact;

  bool is_strict() const { return kind == Kind::StrictOrder; }
  std::string describe() const;
};

/// Default order bound 2·dim + 1.
unsigned default_m_max(std::size_t dim);

/// Smallest m ≤ m_max with β_m(T) = 0, plus a witness that β_{m−1} ≠ 0.
OrderVerdict strict_order(const DenseOperator& t, unsigned m_max,
                          double tol = kDefaultDefectTol);
inline OrderVerdict strict_order(const DenseOperator& t) {
  return strict_order(t, default_m_max(t.dim()));
}

/// Vector h with ⟨B h, h⟩ ≠ 0 for a Hermitian B ≠ 0: best diagonal basis
/// vector, then e_j + e_k / e_j + i·e_k, then (Float) the dominant eigenvector.
std::optional<DenseVector> hermitian_witness(const DenseOperator& b, double tol);

/// T*ⁿTⁿ = Σ_{k<m} (n)_k (−1)^k / k! · β_k(T) for n = 0..n_max.
/// Throws PreconditionError when T is not an m-isometry.
bool newton_expansion_check(const DenseOperator& t, unsigned m, unsigned n_max,
                            double tol = kDefaultDefectTol);

/// ⟨Tⁿ f, Tⁿ g⟩ for dense operators.
Scalar orbit_inner(const DenseOperator& t, const DenseVector& f,
                   const DenseVector& g, std::size_t n);
/// ⟨Wⁿ f, Wⁿ g⟩ for weighted shifts.
inline Scalar orbit_inner(const WeightedShift& w, const FiniteVector& f,
                          const FiniteVector& g, std::size_t n) {
  return w.orbit_inner(f, g, n);
}

/// γ_{T,h} over n = 0..window−1.
OrbitSequence orbit_sequence(const DenseOperator& t, const DenseVector& h,
                             std::size_t window);
OrbitSequence orbit_sequence(const WeightedShift& w, const FiniteVector& h,
                             std::size_t window);

/// Sesquilinear form F_{T;k}(f,g) = Σ_j (−1)^j C(k,j) ⟨T^j f, T^j g⟩.
///
/// Only applications of T and inner products are used, so the same form is
/// available for dense operators and for weighted shifts on finitely
/// supported sequences.
template <class Op, class Vec>
class DefectForm {
 public:
  DefectForm(Op op, unsigned k) : op_(std::move(op)), k_(k) {}

  unsigned k() const { return k_; }

  Scalar operator()(const Vec& f, const Vec& g) const {
    Scalar total = Scalar::zero(op_.mode());
    for (unsigned j = 0; j <= k_; ++j) {
      Scalar term = orbit_inner(op_, f, g, j) *
                    Scalar::from_mpz(binomial(k_, j), op_.mode());
      if (j % 2 == 1) {
        total -= term;
      } else {
        total += term;
      }
    }
    return total;
  }

  /// F_{T;k}(h, h)
  Scalar quadratic(const Vec& h) const { return (*this)(h, h); }

 private:
  Op op_;
  unsigned k_;
};

inline DefectForm<DenseOperator, DenseVector> defect_form(const DenseOperator& t,
                                                          unsigned k) {
  return {t, k};
}
inline DefectForm<WeightedShift, FiniteVector> defect_form(const WeightedShift& w,
                                                           unsigned k) {
  return {w, k};
}

/// ½ Σ_{j=0}^{2} (−1)^j C(2,j) φ(h₀ + j·h): recovers φ(h) for a quadratic
/// form φ independently of the base point h₀.
template <class Vec, class Form>
Scalar polarization_reconstruct(const Form& phi, const Vec& h, const Vec& h0) {
  const Scalar a = phi(h0);
  const Scalar b = phi(h0 + h);
  const Scalar c = phi(h0 + h + h);
  const Mode mode = a.mode();
  return (a - Scalar::from_int(2, mode) * b + c) / Scalar::from_int(2, mode);
}

struct SurveyResult {
  std::vector<DegreeVerdict> per_vector;
  /// Dense operators only: the strict order of T.
  std::optional<OrderVerdict> order;
  /// max over vectors of (degree + 1); nullopt if some orbit is not polynomial.
  std::optional<std::size_t> order_lower_bound;
  /// Every sampled orbit polynomial with degree ≤ m − 1 for m the reported
  /// order (or the lower bound when no order is available).
  bool consistent_with_m_isometry = false;
};

/// Degree verdict of every γ_{T,h}; for dense T also the strict order.
SurveyResult local_isometry_survey(const DenseOperator& t,
                                   const std::vector<DenseVector>& vectors,
                                   double tol = kDefaultDifferenceTol,
                                   std::optional<std::size_t> window = std::nullopt);
SurveyResult local_isometry_survey(const WeightedShift& w,
                                   const std::vector<FiniteVector>& vectors,
                                   std::size_t window,
                                   double tol = kDefaultDifferenceTol);

}  // namespace misolab
