#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "misolab/scalar.hpp"

namespace misolab {

/// Column vector of fixed dimension; all entries share one mode.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::vector<Scalar> entries);
  DenseVector(std::initializer_list<Scalar> entries)
      : DenseVector(std::vector<Scalar>(entries)) {}

  static DenseVector zeros(std::size_t dim, Mode mode);
  /// Standard basis vector e_index (zero-based).
  static DenseVector basis(std::size_t dim, std::size_t index, Mode mode);

  std::size_t size() const { return entries_.size(); }
  Mode mode() const { return mode_; }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Scalar> entries() const { return entries_; }

  DenseVector operator+(const DenseVector& rhs) const;
  DenseVector operator-(const DenseVector& rhs) const;
  DenseVector operator-() const;
  DenseVector scaled(const Scalar& factor) const;

  /// ||v||² as a real scalar.
  Scalar norm2() const;
  double max_abs() const;
  bool is_zero(double tol) const;
  DenseVector to_mode(Mode target) const;

  friend bool operator==(const DenseVector& a, const DenseVector& b);

 private:
  void check_compatible(const DenseVector& rhs) const;

  Mode mode_ = Mode::Exact;
  std::vector<Scalar> entries_;
};

/// ⟨u, v⟩ = Σ u_i · conj(v_i): linear in u, conjugate-linear in v.
Scalar inner(const DenseVector& u, const DenseVector& v);

/// Square matrix over Scalar, row-major, single arithmetic mode.
class DenseOperator {
 public:
  DenseOperator() = default;
  /// Row-major entries, dim·dim of them.
  DenseOperator(std::size_t dim, std::vector<Scalar> entries);
  static DenseOperator from_rows(const std::vector<std::vector<Scalar>>& rows);
  static DenseOperator identity(std::size_t dim, Mode mode);
  static DenseOperator zero(std::size_t dim, Mode mode);
  static DenseOperator diagonal(const std::vector<Scalar>& diag);
  /// Matrix whose columns are the given vectors (must be square).
  static DenseOperator from_columns(const std::vector<DenseVector>& cols);

  std::size_t dim() const { return dim_; }
  Mode mode() const { return mode_; }
  const Scalar& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  std::span<const Scalar> entries() const { return entries_; }
  DenseVector column(std::size_t col) const;

  DenseOperator adjoint() const;
  DenseOperator operator*(const DenseOperator& rhs) const;
  DenseOperator operator+(const DenseOperator& rhs) const;
  DenseOperator operator-(const DenseOperator& rhs) const;
  DenseOperator scaled(const Scalar& factor) const;
  DenseVector apply(const DenseVector& v) const;
  DenseOperator power(unsigned k) const;
  /// this − z·I
  DenseOperator shifted(const Scalar& z) const;

  double max_abs() const;
  bool is_zero(double tol) const;
  bool is_hermitian(double tol) const;
  /// Largest |entry|² as an exact-or-float real scalar.
  Scalar max_abs2() const;
  DenseOperator to_mode(Mode target) const;

  friend bool operator==(const DenseOperator& a, const DenseOperator& b);

 private:
  void check_compatible(const DenseOperator& rhs) const;

  std::size_t dim_ = 0;
  Mode mode_ = Mode::Exact;
  std::vector<Scalar> entries_;
};

/// Block-diagonal A ⊕ B.
DenseOperator direct_sum(const DenseOperator& a, const DenseOperator& b);

/// Standard matrix product; identical to a * b.
inline DenseOperator matmul(const DenseOperator& a, const DenseOperator& b) {
  return a * b;
}
inline DenseOperator adjoint(const DenseOperator& a) { return a.adjoint(); }

}  // namespace misolab
