#include "misolab/matrix.hpp"

#include <algorithm>
#include <string>

namespace misolab {

namespace {

Mode common_mode(std::span<const Scalar> entries) {
  if (entries.empty()) return Mode::Exact;
  const Mode mode = entries.front().mode();
  for (const auto& s : entries) {
    if (s.mode() != mode) throw ModeMismatch("entries mix exact and float scalars");
  }
  return mode;
}

bool real_greater(const Scalar& a, const Scalar& b) {
  if (a.is_exact()) return a.exact_value().re > b.exact_value().re;
  return a.real_double() > b.real_double();
}

}  // namespace

DenseVector::DenseVector(std::vector<Scalar> entries)
    : mode_(common_mode(entries)), entries_(std::move(entries)) {}

DenseVector DenseVector::zeros(std::size_t dim, Mode mode) {
  DenseVector v;
  v.mode_ = mode;
  v.entries_.assign(dim, Scalar::zero(mode));
  return v;
}

DenseVector DenseVector::basis(std::size_t dim, std::size_t index, Mode mode) {
  if (index >= dim) throw DimensionMismatch("basis index out of range");
  std::vector<Scalar> e(dim, Scalar::zero(mode));
  e[index] = Scalar::one(mode);
  DenseVector v(std::move(e));
  v.mode_ = mode;
  return v;
}

void DenseVector::check_compatible(const DenseVector& rhs) const {
  if (size() != rhs.size()) throw DimensionMismatch("vector sizes differ");
  if (!entries_.empty() && mode_ != rhs.mode_) {
    throw ModeMismatch("vectors have different modes");
  }
}

DenseVector DenseVector::operator+(const DenseVector& rhs) const {
  check_compatible(rhs);
  std::vector<Scalar> out(entries_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += rhs.entries_[i];
  return DenseVector(std::move(out));
}

DenseVector DenseVector::operator-(const DenseVector& rhs) const {
  check_compatible(rhs);
  std::vector<Scalar> out(entries_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= rhs.entries_[i];
  return DenseVector(std::move(out));
}

DenseVector DenseVector::operator-() const {
  std::vector<Scalar> out;
  out.reserve(entries_.size());
  for (const auto& s : entries_) out.push_back(-s);
  DenseVector v(std::move(out));
  v.mode_ = mode_;
  return v;
}

DenseVector DenseVector::scaled(const Scalar& factor) const {
  std::vector<Scalar> out;
  out.reserve(entries_.size());
  for (const auto& s : entries_) out.push_back(s * factor);
  return DenseVector(std::move(out));
}

Scalar DenseVector::norm2() const {
  Scalar total = Scalar::zero(mode_);
  for (const auto& s : entries_) total += s.abs2();
  return total;
}

double DenseVector::max_abs() const {
  double m = 0.0;
  for (const auto& s : entries_) m = std::max(m, s.abs());
  return m;
}

bool DenseVector::is_zero(double tol) const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [tol](const Scalar& s) { return s.is_zero(tol); });
}

DenseVector DenseVector::to_mode(Mode target) const {
  std::vector<Scalar> out;
  out.reserve(entries_.size());
  for (const auto& s : entries_) out.push_back(s.to_mode(target));
  DenseVector v(std::move(out));
  v.mode_ = target;
  return v;
}

bool operator==(const DenseVector& a, const DenseVector& b) {
  return a.mode_ == b.mode_ && a.entries_ == b.entries_;
}

Scalar inner(const DenseVector& u, const DenseVector& v) {
  if (u.size() != v.size()) throw DimensionMismatch("inner: sizes differ");
  if (u.mode() != v.mode()) throw ModeMismatch("inner: modes differ");
  Scalar total = Scalar::zero(u.mode());
  for (std::size_t i = 0; i < u.size(); ++i) total += u[i] * v[i].conj();
  return total;
}

DenseOperator::DenseOperator(std::size_t dim, std::vector<Scalar> entries)
    : dim_(dim), mode_(common_mode(entries)), entries_(std::move(entries)) {
  if (dim_ == 0) throw DimensionMismatch("operator dimension must be positive");
  if (entries_.size() != dim_ * dim_) {
    throw DimensionMismatch("operator needs " + std::to_string(dim_ * dim_) +
                            " entries, got " + std::to_string(entries_.size()));
  }
}

DenseOperator DenseOperator::from_rows(
    const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t n = rows.size();
  std::vector<Scalar> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw DimensionMismatch("matrix rows must be square");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return DenseOperator(n, std::move(entries));
}

DenseOperator DenseOperator::identity(std::size_t dim, Mode mode) {
  std::vector<Scalar> e(dim * dim, Scalar::zero(mode));
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = Scalar::one(mode);
  return DenseOperator(dim, std::move(e));
}

DenseOperator DenseOperator::zero(std::size_t dim, Mode mode) {
  return DenseOperator(dim, std::vector<Scalar>(dim * dim, Scalar::zero(mode)));
}

DenseOperator DenseOperator::diagonal(const std::vector<Scalar>& diag) {
  if (diag.empty()) throw DimensionMismatch("empty diagonal");
  const std::size_t n = diag.size();
  std::vector<Scalar> e(n * n, Scalar::zero(diag.front().mode()));
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return DenseOperator(n, std::move(e));
}

DenseOperator DenseOperator::from_columns(const std::vector<DenseVector>& cols) {
  const std::size_t n = cols.size();
  std::vector<Scalar> e;
  e.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (cols[c].size() != n) throw DimensionMismatch("columns must be square");
      e.push_back(cols[c][r]);
    }
  }
  return DenseOperator(n, std::move(e));
}

DenseVector DenseOperator::column(std::size_t col) const {
  std::vector<Scalar> out;
  out.reserve(dim_);
  for (std::size_t r = 0; r < dim_; ++r) out.push_back((*this)(r, col));
  return DenseVector(std::move(out));
}

void DenseOperator::check_compatible(const DenseOperator& rhs) const {
  if (dim_ != rhs.dim_) throw DimensionMismatch("operator dimensions differ");
  if (mode_ != rhs.mode_) throw ModeMismatch("operators have different modes");
}

DenseOperator DenseOperator::adjoint() const {
  std::vector<Scalar> e;
  e.reserve(entries_.size());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) e.push_back((*this)(c, r).conj());
  }
  return DenseOperator(dim_, std::move(e));
}

DenseOperator DenseOperator::operator*(const DenseOperator& rhs) const {
  check_compatible(rhs);
  std::vector<Scalar> e(dim_ * dim_, Scalar::zero(mode_));
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const Scalar& a = (*this)(r, k);
      if (a.exactly_zero()) continue;
      for (std::size_t c = 0; c < dim_; ++c) {
        const Scalar& b = rhs(k, c);
        if (b.exactly_zero()) continue;
        e[r * dim_ + c] += a * b;
      }
    }
  }
  return DenseOperator(dim_, std::move(e));
}

DenseOperator DenseOperator::operator+(const DenseOperator& rhs) const {
  check_compatible(rhs);
  std::vector<Scalar> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += rhs.entries_[i];
  return DenseOperator(dim_, std::move(e));
}

DenseOperator DenseOperator::operator-(const DenseOperator& rhs) const {
  check_compatible(rhs);
  std::vector<Scalar> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= rhs.entries_[i];
  return DenseOperator(dim_, std::move(e));
}

DenseOperator DenseOperator::scaled(const Scalar& factor) const {
  std::vector<Scalar> e;
  e.reserve(entries_.size());
  for (const auto& s : entries_) e.push_back(s * factor);
  return DenseOperator(dim_, std::move(e));
}

DenseVector DenseOperator::apply(const DenseVector& v) const {
  if (v.size() != dim_) throw DimensionMismatch("apply: vector size differs");
  if (v.mode() != mode_) throw ModeMismatch("apply: modes differ");
  std::vector<Scalar> out(dim_, Scalar::zero(mode_));
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (a.exactly_zero() || v[c].exactly_zero()) continue;
      out[r] += a * v[c];
    }
  }
  return DenseVector(std::move(out));
}

DenseOperator DenseOperator::power(unsigned k) const {
  DenseOperator result = identity(dim_, mode_);
  DenseOperator base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

DenseOperator DenseOperator::shifted(const Scalar& z) const {
  std::vector<Scalar> e(entries_);
  for (std::size_t i = 0; i < dim_; ++i) e[i * dim_ + i] -= z;
  return DenseOperator(dim_, std::move(e));
}

double DenseOperator::max_abs() const {
  double m = 0.0;
  for (const auto& s : entries_) m = std::max(m, s.abs());
  return m;
}

Scalar DenseOperator::max_abs2() const {
  Scalar best = Scalar::zero(mode_);
  for (const auto& s : entries_) {
    Scalar a = s.abs2();
    if (real_greater(a, best)) best = std::move(a);
  }
  return best;
}

bool DenseOperator::is_zero(double tol) const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [tol](const Scalar& s) { return s.is_zero(tol); });
}

bool DenseOperator::is_hermitian(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      if (!((*this)(r, c) - (*this)(c, r).conj()).is_zero(tol)) return false;
    }
  }
  return true;
}

DenseOperator DenseOperator::to_mode(Mode target) const {
  std::vector<Scalar> e;
  e.reserve(entries_.size());
  for (const auto& s : entries_) e.push_back(s.to_mode(target));
  return DenseOperator(dim_, std::move(e));
}

bool operator==(const DenseOperator& a, const DenseOperator& b) {
  return a.dim_ == b.dim_ && a.mode_ == b.mode_ && a.entries_ == b.entries_;
}

DenseOperator direct_sum(const DenseOperator& a, const DenseOperator& b) {
  if (a.mode() != b.mode()) throw ModeMismatch("direct_sum: modes differ");
  const std::size_t n = a.dim() + b.dim();
  std::vector<Scalar> e(n * n, Scalar::zero(a.mode()));
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) e[r * n + c] = a(r, c);
  }
  for (std::size_t r = 0; r < b.dim(); ++r) {
    for (std::size_t c = 0; c < b.dim(); ++c) {
      e[(a.dim() + r) * n + a.dim() + c] = b(r, c);
    }
  }
  return DenseOperator(n, std::move(e));
}

}  // namespace misolab
