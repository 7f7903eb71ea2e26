#include "misolab/shift_factory.hpp"

#include <algorithm>
#include <cmath>

#include "misolab/isometry.hpp"

namespace misolab {

namespace {

bool strictly_positive(const Scalar& s) {
  if (s.is_exact()) return sgn(s.exact_value().re) > 0;
  return s.real_double() > 0.0;
}

}  // namespace

std::size_t default_shift_window(unsigned m) {
  return std::max<std::size_t>(16, 2 * (2 * static_cast<std::size_t>(m) + 1) + 2);
}

bool newton_positivity_certificate(const Polynomial& p) {
  if (p.is_zero()) return false;
  const std::size_t d = *p.degree();
  std::vector<Scalar> samples;
  for (std::size_t n = 0; n <= d + 1; ++n) samples.push_back(p.eval(static_cast<long>(n)));
  if (!strictly_positive(samples[0])) return false;
  const auto table = difference_table(samples, d + 1);
  for (std::size_t k = 1; k <= d; ++k) {
    const Scalar& c = table.rows[k][0];
    if (c.is_exact() ? sgn(c.exact_value().re) < 0 : c.real_double() < 0.0) return false;
  }
  return true;
}

WeightedShift shift_from_polynomial(const Polynomial& p, std::size_t prefix_len) {
  if (p.is_zero()) throw PreconditionError("generator polynomial must be nonzero");
  if (!p.has_real_coeffs(0.0)) {
    throw PreconditionError("generator polynomial must have real coefficients");
  }
  const Mode mode = p.mode();
  for (std::size_t n = 0; n <= prefix_len; ++n) {
    if (!strictly_positive(p.eval(static_cast<long>(n)))) {
      throw PreconditionError("generator p(" + std::to_string(n) +
                              ") = " + p.eval(static_cast<long>(n)).to_string() +
                              " is not positive");
    }
  }
  auto squared = [p](std::size_t n) {
    const Scalar lo = p.eval(static_cast<long>(n));
    if (!strictly_positive(lo) || !strictly_positive(p.eval(static_cast<long>(n + 1)))) {
      throw PreconditionError("generator polynomial is not positive at " +
                              std::to_string(n));
    }
    return p.eval(static_cast<long>(n + 1)) / lo;
  };
  std::vector<Scalar> prefix;
  for (std::size_t n = 0; n < prefix_len; ++n) prefix.push_back(squared(n));
  if (mode == Mode::Exact) {
    return WeightedShift::from_squared_weights(mode, std::move(prefix), squared);
  }
  auto root = [squared](std::size_t n) {
    return Scalar::floating(std::sqrt(squared(n).real_double()));
  };
  std::vector<Scalar> weights;
  for (std::size_t n = 0; n < prefix_len; ++n) weights.push_back(root(n));
  return WeightedShift::from_weights(mode, std::move(weights), root);
}

WeightedShift localization_shift(const DenseOperator& t, const DenseVector& h,
                                 std::size_t prefix_len, double tol) {
  if (h.is_zero(tol)) throw PreconditionError("localization shift needs h ≠ 0");
  const Mode mode = t.mode();
  // Squared orbit norms ||Tⁿh||², n = 0..prefix_len.
  std::vector<Scalar> norms;
  DenseVector v = h;
  for (std::size_t n = 0; n <= prefix_len; ++n) {
    if (n > 0) v = t.apply(v);
    norms.push_back(v.norm2());
    if (norms.back().is_zero(tol * tol)) {
      throw PreconditionError("orbit norm ||T^" + std::to_string(n) +
                              "h|| vanishes; T is not injective on the orbit");
    }
  }
  auto squared = [t, h, tol](std::size_t n) {
    const Scalar lo = orbit_inner(t, h, h, n);
    const Scalar hi = orbit_inner(t, h, h, n + 1);
    if (lo.is_zero(tol * tol)) {
      throw PreconditionError("orbit norm vanishes at " + std::to_string(n));
    }
    return hi / lo;
  };
  std::vector<Scalar> prefix;
  for (std::size_t n = 0; n < prefix_len; ++n) prefix.push_back(norms[n + 1] / norms[n]);
  return WeightedShift::from_squared_weights(mode, std::move(prefix), squared);
}

bool shift_is_m_isometry(const WeightedShift& w, unsigned m,
                         std::size_t basis_count, double tol,
                         std::optional<std::size_t> window) {
  if (m == 0) throw PreconditionError("shift_is_m_isometry needs m ≥ 1");
  if (basis_count == 0) throw PreconditionError("basis_count must be ≥ 1");
  const std::size_t len = window.value_or(default_shift_window(m));
  if (len <= m) throw PreconditionError("window too short for order " + std::to_string(m));
  for (std::size_t j = 0; j < basis_count; ++j) {
    const auto gamma = orbit_sequence(w, FiniteVector::basis(j, w.mode()), len);
    if (!difference_row_vanishes(gamma.values(), m, tol)) return false;
  }
  return true;
}

}  // namespace misolab
