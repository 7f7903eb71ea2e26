#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "misolab/errors.hpp"

namespace misolab {

enum class Mode { Exact, Float };

std::string_view to_string(Mode mode);

/// Gaussian rational a + b·i with arbitrary-precision parts.
struct ExactComplex {
  mpq_class re;
  mpq_class im;
};

/// Complex scalar in one of two arithmetic modes.
///
/// Exact values are Gaussian rationals and every ring operation on them is
/// exact. Float values are pairs of doubles. Combining scalars of different
/// modes throws ModeMismatch; there is no implicit promotion. Zero tests in
/// Float mode always take the tolerance explicitly.
class Scalar {
 public:
  /// Exact zero.
  Scalar();

  static Scalar exact(mpq_class re, mpq_class im = 0);
  static Scalar floating(std::complex<double> value);
  static Scalar floating(double re, double im = 0.0) {
    return floating(std::complex<double>(re, im));
  }
  static Scalar from_int(long value, Mode mode);
  static Scalar zero(Mode mode) { return from_int(0, mode); }
  static Scalar one(Mode mode) { return from_int(1, mode); }
  static Scalar imag_unit(Mode mode);
  /// Exact integer of any size, converted to the requested mode.
  static Scalar from_mpz(const mpz_class& value, Mode mode);

  Mode mode() const {
    return std::holds_alternative<ExactComplex>(value_) ? Mode::Exact
                                                        : Mode::Float;
  }
  bool is_exact() const { return mode() == Mode::Exact; }

  /// Exact parts; throws ModeMismatch on a Float scalar.
  const ExactComplex& exact_value() const;
  /// Value as a double-precision complex number (lossy for Exact).
  std::complex<double> to_complex() const;
  double real_double() const { return to_complex().real(); }

  Scalar conj() const;
  Scalar real_part() const;
  Scalar imag_part() const;
  /// |z|² as a real scalar of the same mode.
  Scalar abs2() const;
  /// |z| as a double (lossy for Exact).
  double abs() const;

  /// Exact test in Exact mode; |z| ≤ tol in Float mode.
  bool is_zero(double tol) const;
  /// Structural zero: exact zero, or a Float value equal to 0.0.
  bool exactly_zero() const;
  bool is_real(double tol) const;

  /// Converts between modes. Float → Exact takes the binary value exactly.
  Scalar to_mode(Mode target) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  /// Division by a nonzero scalar; exact in Exact mode.
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  /// Same mode and identical value (no tolerance).
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);

  /// Exact: canonical rational literal "a/b+c/di". Float: "re+imi" with
  /// round-trip precision.
  std::string to_string() const;

 private:
  explicit Scalar(std::variant<ExactComplex, std::complex<double>> v)
      : value_(std::move(v)) {}
  void require_same_mode(const Scalar& other) const;

  std::variant<ExactComplex, std::complex<double>> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Parses a rational literal `[-]a[/b][(+|-)c[/d]i]`. Pure imaginary forms
/// such as `i`, `-i`, `3/4i` are also accepted. Decimal parts (`0.25`) are
/// read as exact rationals.
Scalar parse_scalar(std::string_view text, Mode mode);

/// Canonical rational text for a single mpq ("a" or "a/b").
std::string rational_string(const mpq_class& q);

/// Parses a decimal or fraction string ("-3", "2/5", "0.125", "1e-3") into an
/// exact rational.
mpq_class parse_rational(std::string_view text);

}  // namespace misolab
