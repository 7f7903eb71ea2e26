#include "misolab/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace misolab::linalg {

namespace {

using Rows = std::vector<std::vector<Scalar>>;

Eigen::MatrixXcd to_eigen(const DenseOperator& a) {
  const auto n = static_cast<Eigen::Index>(a.dim());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      m(r, c) = a(static_cast<std::size_t>(r), static_cast<std::size_t>(c))
                    .to_complex();
    }
  }
  return m;
}

Eigen::MatrixXcd columns_to_eigen(const std::vector<DenseVector>& cols) {
  const auto rows = static_cast<Eigen::Index>(cols.front().size());
  Eigen::MatrixXcd m(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      m(r, static_cast<Eigen::Index>(c)) =
          cols[c][static_cast<std::size_t>(r)].to_complex();
    }
  }
  return m;
}

DenseVector from_eigen(const Eigen::VectorXcd& v) {
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Scalar::floating(v(i)));
  return DenseVector(std::move(out));
}

// In-place reduced row echelon form over exact scalars; returns pivot columns.
std::vector<std::size_t> rref_exact(Rows& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].exactly_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    const Scalar inv = Scalar::one(Mode::Exact) / m[r][c];
    for (auto& s : m[r]) s *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].exactly_zero()) continue;
      const Scalar factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Rows operator_rows(const DenseOperator& a) {
  Rows m(a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) m[r].push_back(a(r, c));
  }
  return m;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

}  // namespace

std::vector<DenseVector> kernel_basis(const DenseOperator& a, double tol) {
  const std::size_t n = a.dim();
  std::vector<DenseVector> basis;
  if (a.mode() == Mode::Exact) {
    Rows m = operator_rows(a);
    const auto pivots = rref_exact(m);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t free = 0; free < n; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Scalar> v(n, Scalar::zero(Mode::Exact));
      v[free] = Scalar::one(Mode::Exact);
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
      basis.emplace_back(std::move(v));
    }
    return basis;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= cutoff) basis.push_back(from_eigen(svd.matrixV().col(i)));
  }
  return basis;
}

std::size_t rank(const std::vector<DenseVector>& vectors, double tol) {
  if (vectors.empty()) return 0;
  if (vectors.front().mode() == Mode::Exact) {
    Rows m;
    for (const auto& v : vectors) m.emplace_back(v.entries().begin(), v.entries().end());
    return rref_exact(m).size();
  }
  const auto sv = singular_values(columns_to_eigen(vectors));
  const double cutoff = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  return static_cast<std::size_t>((sv.array() > cutoff).count());
}

bool in_span(const std::vector<DenseVector>& basis, const DenseVector& v,
             double tol) {
  if (v.mode() == Mode::Exact) {
    if (v.is_zero(0)) return true;
    std::vector<DenseVector> extended = basis;
    extended.push_back(v);
    return rank(extended, tol) == rank(basis, tol);
  }
  const auto q = orthonormalize(basis, tol);
  DenseVector residual = v;
  for (const auto& e : q) residual = residual - e.scaled(inner(v, e));
  const double scale = std::max(1.0, std::sqrt(v.norm2().real_double()));
  return std::sqrt(residual.norm2().real_double()) <= tol * scale;
}

std::optional<DenseOperator> inverse(const DenseOperator& a, double tol) {
  const std::size_t n = a.dim();
  const Mode mode = a.mode();
  Rows m = operator_rows(a);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      m[r].push_back(r == c ? Scalar::one(mode) : Scalar::zero(mode));
    }
  }
  const double scale = std::max(1.0, a.max_abs());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    if (mode == Mode::Exact) {
      while (p < n && m[p][c].exactly_zero()) ++p;
      if (p == n) return std::nullopt;
    } else {
      for (std::size_t i = c + 1; i < n; ++i) {
        if (m[i][c].abs() > m[p][c].abs()) p = i;
      }
      if (m[p][c].abs() <= tol * scale) return std::nullopt;
    }
    std::swap(m[c], m[p]);
    const Scalar inv = Scalar::one(mode) / m[c][c];
    for (auto& s : m[c]) s *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c].exactly_zero()) continue;
      const Scalar factor = m[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= factor * m[c][j];
    }
  }
  std::vector<Scalar> e;
  e.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    e.insert(e.end(), m[r].begin() + static_cast<std::ptrdiff_t>(n), m[r].end());
  }
  return DenseOperator(n, std::move(e));
}

std::vector<DenseVector> orthonormalize(const std::vector<DenseVector>& vectors,
                                        double tol) {
  std::vector<DenseVector> q;
  for (const auto& v0 : vectors) {
    DenseVector v = v0.to_mode(Mode::Float);
    const double original = std::sqrt(v.norm2().real_double());
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : q) v = v - e.scaled(inner(v, e));
    }
    const double residual = std::sqrt(v.norm2().real_double());
    if (residual <= tol * std::max(1.0, original)) continue;
    q.push_back(v.scaled(Scalar::floating(1.0 / residual)));
  }
  return q;
}

DenseOperator compress(const DenseOperator& t, const std::vector<DenseVector>& q) {
  const std::size_t r = q.size();
  std::vector<DenseVector> images;
  images.reserve(r);
  const DenseOperator tf = t.to_mode(Mode::Float);
  for (const auto& v : q) images.push_back(tf.apply(v));
  std::vector<Scalar> e;
  e.reserve(r * r);
  for (std::size_t row = 0; row < r; ++row) {
    for (std::size_t col = 0; col < r; ++col) e.push_back(inner(images[col], q[row]));
  }
  return DenseOperator(r, std::move(e));
}

std::vector<std::complex<double>> eigenvalues(const DenseOperator& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(a), false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

DenseVector dominant_hermitian_eigenvector(const DenseOperator& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(a));
  const auto& ev = solver.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    if (std::abs(ev(i)) > std::abs(ev(best))) best = i;
  }
  return from_eigen(solver.eigenvectors().col(best));
}

double spectral_norm(const DenseOperator& a) {
  const auto sv = singular_values(to_eigen(a));
  return sv.size() > 0 ? sv(0) : 0.0;
}

}  // namespace misolab::linalg
