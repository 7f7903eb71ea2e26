#include "misolab/difference.hpp"

#include <algorithm>

#include "misolab/combinatorics.hpp"

namespace misolab {

OrbitSequence::OrbitSequence(std::vector<Scalar> values, std::string source)
    : values_(std::move(values)), source_(std::move(source)) {
  if (values_.size() < 2) throw PreconditionError("orbit window needs ≥ 2 values");
  const Mode mode = values_.front().mode();
  for (const auto& v : values_) {
    if (v.mode() != mode) throw ModeMismatch("orbit values mix modes");
    bool ok = false;
    if (mode == Mode::Exact) {
      ok = sgn(v.exact_value().im) == 0 && sgn(v.exact_value().re) >= 0;
    } else {
      ok = v.to_complex().imag() == 0.0 && v.real_double() >= 0.0;
    }
    if (!ok) throw PreconditionError("orbit value " + v.to_string() + " is not a squared norm");
  }
}

std::string DegreeVerdict::describe() const {
  switch (kind) {
    case Kind::ZeroSequence: return "zero-sequence";
    case Kind::Polynomial: return "polynomial(" + std::to_string(*degree) + ")";
    case Kind::NotPolynomialWithinWindow: break;
  }
  return "not-polynomial-within-window";
}

DifferenceTable difference_table(std::span<const Scalar> values, std::size_t depth) {
  if (depth >= values.size()) {
    throw PreconditionError("difference depth " + std::to_string(depth) +
                            " needs a window longer than " +
                            std::to_string(values.size()));
  }
  DifferenceTable table;
  table.rows.emplace_back(values.begin(), values.end());
  for (std::size_t k = 0; k < depth; ++k) {
    const auto& prev = table.rows.back();
    std::vector<Scalar> next;
    next.reserve(prev.size() - 1);
    for (std::size_t n = 0; n + 1 < prev.size(); ++n) next.push_back(prev[n + 1] - prev[n]);
    table.rows.push_back(std::move(next));
  }
  return table;
}

DifferenceTable difference_table(const OrbitSequence& gamma, std::size_t depth) {
  return difference_table(gamma.values(), depth);
}

Scalar binomial_difference(std::span<const Scalar> values, std::size_t m,
                           std::size_t n) {
  if (n + m >= values.size()) throw PreconditionError("binomial difference out of window");
  const Mode mode = values.front().mode();
  Scalar total = Scalar::zero(mode);
  for (std::size_t k = 0; k <= m; ++k) {
    Scalar term = values[n + k] * Scalar::from_mpz(binomial(m, k), mode);
    // (−1)^m (−1)^k = (−1)^{m−k}
    if ((m - k) % 2 == 1) {
      total -= term;
    } else {
      total += term;
    }
  }
  return total;
}

double difference_row_threshold(std::span<const Scalar> values, std::size_t depth,
                                double tol) {
  double scale = 1.0;
  for (const auto& v : values) scale = std::max(scale, v.abs());
  return tol * scale * binomial(depth, depth / 2).get_d();
}

namespace {

double row_max_abs(const std::vector<Scalar>& row) {
  double m = 0.0;
  for (const auto& s : row) m = std::max(m, s.abs());
  return m;
}

bool row_vanishes(const std::vector<Scalar>& row, double threshold) {
  return std::all_of(row.begin(), row.end(),
                     [threshold](const Scalar& s) { return s.is_zero(threshold); });
}

}  // namespace

bool difference_row_vanishes(std::span<const Scalar> values, std::size_t depth,
                             double tol) {
  const auto table = difference_table(values, depth);
  return row_vanishes(table.rows.back(),
                      difference_row_threshold(values, depth, tol));
}

DegreeVerdict detect_degree(std::span<const Scalar> values, double tol) {
  if (values.size() < 3) throw PreconditionError("degree detection needs a window of ≥ 3");
  const std::size_t last = values.size() - 1;
  const auto table = difference_table(values, last);
  DegreeVerdict verdict;
  if (row_vanishes(table.rows[0], difference_row_threshold(values, 0, tol))) {
    verdict.kind = DegreeVerdict::Kind::ZeroSequence;
    verdict.residual = row_max_abs(table.rows[0]);
    return verdict;
  }
  for (std::size_t d = 0; d + 1 <= last; ++d) {
    const auto& row = table.rows[d + 1];
    if (row_vanishes(row, difference_row_threshold(values, d + 1, tol))) {
      verdict.kind = DegreeVerdict::Kind::Polynomial;
      verdict.degree = d;
      verdict.residual = row_max_abs(row);
      return verdict;
    }
  }
  verdict.residual = row_max_abs(table.rows[last]);
  return verdict;
}

DegreeVerdict detect_degree(const OrbitSequence& gamma, double tol) {
  return detect_degree(gamma.values(), tol);
}

Polynomial newton_reconstruct(std::span<const Scalar> values, double tol) {
  const auto verdict = detect_degree(values, tol);
  const Mode mode = values.front().mode();
  if (verdict.kind == DegreeVerdict::Kind::ZeroSequence) return Polynomial(mode);
  if (verdict.kind != DegreeVerdict::Kind::Polynomial) {
    throw PreconditionError("sequence is not polynomial within its window");
  }
  const std::size_t d = *verdict.degree;
  const auto table = difference_table(values, d);
  Polynomial p(mode);
  for (std::size_t k = 0; k <= d; ++k) {
    const Scalar c = table.rows[k][0] / Scalar::from_mpz(factorial(k), mode);
    p = p + Polynomial::falling(k, mode).scaled(c);
  }
  return p;
}

Polynomial newton_reconstruct(const OrbitSequence& gamma, double tol) {
  return newton_reconstruct(gamma.values(), tol);
}

std::size_t default_window(std::size_t dim) { return 2 * (2 * dim + 1) + 2; }

}  // namespace misolab
