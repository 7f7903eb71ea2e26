#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "misolab/scalar.hpp"

namespace misolab {

/// Univariate polynomial Σ c_j x^j over Scalar.
///
/// Trailing zero coefficients are stripped on construction, so the zero
/// polynomial has no coefficients and its degree is std::nullopt (−∞).
class Polynomial {
 public:
  explicit Polynomial(Mode mode = Mode::Exact) : mode_(mode) {}
  Polynomial(Mode mode, std::vector<Scalar> coeffs);

  static Polynomial constant(const Scalar& c);
  /// x^k
  static Polynomial monomial(std::size_t k, Mode mode);
  /// The falling factorial (x)_k = x(x−1)…(x−k+1).
  static Polynomial falling(std::size_t k, Mode mode);

  Mode mode() const { return mode_; }
  /// nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  /// Coefficient of x^k (zero past the degree).
  Scalar coeff(std::size_t k) const;

  Scalar operator()(const Scalar& x) const { return eval(x); }
  Scalar eval(const Scalar& x) const;
  Scalar eval(long n) const { return eval(Scalar::from_int(n, mode_)); }

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial scaled(const Scalar& factor) const;

  /// p*(x) = Σ conj(c_j) x^j
  Polynomial star() const;
  /// Σ Re(c_j) x^j
  Polynomial re_part() const;
  /// Σ Im(c_j) x^j
  Polynomial im_part() const;
  bool has_real_coeffs(double tol) const;

  Polynomial to_mode(Mode target) const;
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void check_mode(const Polynomial& rhs) const;

  Mode mode_;
  std::vector<Scalar> coeffs_;
};

}  // namespace misolab
