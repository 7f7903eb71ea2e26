#include "misolab/scalar.hpp"

#include <cctype>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace misolab {

namespace {

// Nearest double; mpq_get_d truncates toward zero.
double nearest_double(const mpq_class& q) {
  const double d = q.get_d();
  if (!std::isfinite(d)) return d;
  double best = d;
  mpq_class best_err = abs(mpq_class(d) - q);
  for (double c : {std::nextafter(d, -HUGE_VAL), std::nextafter(d, HUGE_VAL)}) {
    if (!std::isfinite(c)) continue;
    const mpq_class err = abs(mpq_class(c) - q);
    if (err < best_err) {
      best = c;
      best_err = err;
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(Mode mode) {
  return mode == Mode::Exact ? "exact" : "float";
}

Scalar::Scalar() : value_(ExactComplex{0, 0}) {}

Scalar Scalar::exact(mpq_class re, mpq_class im) {
  re.canonicalize();
  im.canonicalize();
  return Scalar(ExactComplex{std::move(re), std::move(im)});
}

Scalar Scalar::floating(std::complex<double> value) { return Scalar(value); }

Scalar Scalar::from_int(long value, Mode mode) {
  if (mode == Mode::Exact) return exact(mpq_class(value), 0);
  return floating(static_cast<double>(value), 0.0);
}

Scalar Scalar::from_mpz(const mpz_class& value, Mode mode) {
  if (mode == Mode::Exact) return exact(mpq_class(value), 0);
  return floating(nearest_double(mpq_class(value)), 0.0);
}

Scalar Scalar::imag_unit(Mode mode) {
  if (mode == Mode::Exact) return exact(0, 1);
  return floating(0.0, 1.0);
}

const ExactComplex& Scalar::exact_value() const {
  if (const auto* e = std::get_if<ExactComplex>(&value_)) return *e;
  throw ModeMismatch("exact value requested from a float scalar");
}

std::complex<double> Scalar::to_complex() const {
  if (const auto* e = std::get_if<ExactComplex>(&value_)) {
    return {nearest_double(e->re), nearest_double(e->im)};
  }
  return std::get<std::complex<double>>(value_);
}

void Scalar::require_same_mode(const Scalar& other) const {
  if (mode() != other.mode()) {
    throw ModeMismatch("cannot combine exact and float scalars");
  }
}

Scalar Scalar::conj() const {
  if (const auto* e = std::get_if<ExactComplex>(&value_)) {
    return Scalar(ExactComplex{e->re, -e->im});
  }
  return Scalar(std::conj(std::get<std::complex<double>>(value_)));
}

Scalar Scalar::real_part() const {
  if (const auto* e = std::get_if<ExactComplex>(&value_)) {
    return Scalar(ExactComplex{e->re, 0});
  }
  return floating(std::get<std::complex<double>>(value_).real(), 0.0);
}

Scalar Scalar::imag_part() const {
  if (const auto* e = std::get_if<ExactComplex>(&value_)) {
    return Scalar(ExactComplex{e->im, 0});
  }
  return floating(std::get<std::complex<double>>(value_).imag(), 0.0);
}

Scalar Scalar::abs2() const {
  if (const auto* e = std::get_if<ExactComplex>(&value_)) {
    return Scalar(ExactComplex{e->re * e->re + e->im * e->im, 0});
  }
  return floating(std::norm(std::get<std::complex<double>>(value_)), 0.0);
}

double Scalar::abs() const { return std::abs(to_complex()); }

bool Scalar::is_zero(double tol) const {
  if (const auto* e = std::get_if<ExactComplex>(&value_)) {
    return sgn(e->re) == 0 && sgn(e->im) == 0;
  }
  return std::abs(std::get<std::complex<double>>(value_)) <= tol;
}

bool Scalar::exactly_zero() const {
  if (const auto* e = std::get_if<ExactComplex>(&value_)) {
    return sgn(e->re) == 0 && sgn(e->im) == 0;
  }
  return std::get<std::complex<double>>(value_) == std::complex<double>{};
}

bool Scalar::is_real(double tol) const {
  if (const auto* e = std::get_if<ExactComplex>(&value_)) {
    return sgn(e->im) == 0;
  }
  return std::abs(std::get<std::complex<double>>(value_).imag()) <= tol;
}

Scalar Scalar::to_mode(Mode target) const {
  if (target == mode()) return *this;
  if (target == Mode::Float) return floating(to_complex());
  const auto c = std::get<std::complex<double>>(value_);
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw PreconditionError("non-finite value cannot become exact");
  }
  return exact(mpq_class(c.real()), mpq_class(c.imag()));
}

Scalar Scalar::operator-() const {
  if (const auto* e = std::get_if<ExactComplex>(&value_)) {
    return Scalar(ExactComplex{-e->re, -e->im});
  }
  return Scalar(-std::get<std::complex<double>>(value_));
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  require_same_mode(rhs);
  if (auto* e = std::get_if<ExactComplex>(&value_)) {
    const auto& r = std::get<ExactComplex>(rhs.value_);
    e->re += r.re;
    e->im += r.im;
  } else {
    std::get<std::complex<double>>(value_) +=
        std::get<std::complex<double>>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  require_same_mode(rhs);
  if (auto* e = std::get_if<ExactComplex>(&value_)) {
    const auto& r = std::get<ExactComplex>(rhs.value_);
    e->re -= r.re;
    e->im -= r.im;
  } else {
    std::get<std::complex<double>>(value_) -=
        std::get<std::complex<double>>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  require_same_mode(rhs);
  if (auto* e = std::get_if<ExactComplex>(&value_)) {
    const auto& r = std::get<ExactComplex>(rhs.value_);
    if (sgn(e->im) == 0 && sgn(r.im) == 0) {
      e->re *= r.re;
      return *this;
    }
    mpq_class re = e->re * r.re - e->im * r.im;
    mpq_class im = e->re * r.im + e->im * r.re;
    e->re = std::move(re);
    e->im = std::move(im);
  } else {
    std::get<std::complex<double>>(value_) *=
        std::get<std::complex<double>>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  require_same_mode(rhs);
  if (auto* e = std::get_if<ExactComplex>(&value_)) {
    const auto& r = std::get<ExactComplex>(rhs.value_);
    mpq_class den = r.re * r.re + r.im * r.im;
    if (sgn(den) == 0) throw PreconditionError("division by exact zero");
    mpq_class re = (e->re * r.re + e->im * r.im) / den;
    mpq_class im = (e->im * r.re - e->re * r.im) / den;
    e->re = std::move(re);
    e->im = std::move(im);
  } else {
    std::get<std::complex<double>>(value_) /=
        std::get<std::complex<double>>(rhs.value_);
  }
  return *this;
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.mode() != rhs.mode()) return false;
  if (lhs.is_exact()) {
    const auto& a = lhs.exact_value();
    const auto& b = rhs.exact_value();
    return a.re == b.re && a.im == b.im;
  }
  return lhs.to_complex() == rhs.to_complex();
}

std::string rational_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Scalar::to_string() const {
  if (const auto* e = std::get_if<ExactComplex>(&value_)) {
    std::string out = rational_string(e->re);
    if (sgn(e->im) == 0) return out;
    if (sgn(e->im) > 0) out += '+';
    return out + rational_string(e->im) + "i";
  }
  const auto c = std::get<std::complex<double>>(value_);
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10)
     << c.real();
  if (c.imag() != 0.0) {
    if (!std::signbit(c.imag())) os << '+';
    os << c.imag() << 'i';
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Unsigned decimal with optional fraction and exponent: 12, 0.25, 3e-2.
mpq_class parse_decimal(std::string_view s, std::string_view whole) {
  std::string_view mantissa = s;
  long exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    mantissa = s.substr(0, epos);
    std::string_view exp_text = s.substr(epos + 1);
    bool neg = false;
    if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
      neg = exp_text[0] == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) {
      throw ParseError("bad exponent in '" + std::string(whole) + "'");
    }
    exponent = std::stol(std::string(exp_text));
    if (neg) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = mantissa.substr(0, dot);
    std::string_view frac_part = mantissa.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw ParseError("bad number '" + std::string(whole) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(mantissa)) {
      throw ParseError("bad number '" + std::string(whole) + "'");
    }
    digits = std::string(mantissa);
  }
  mpq_class value{mpz_class(digits, 10)};
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10,
                static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) {
    value *= scale;
  } else {
    value /= scale;
  }
  value.canonicalize();
  return value;
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError("empty rational in '" + std::string(text) + "'");
  mpq_class value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("bad fraction '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = mpq_class(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else {
    value = parse_decimal(s, text);
  }
  return negative ? mpq_class(-value) : value;
}

Scalar parse_scalar(std::string_view text, Mode mode) {
  if (text.empty()) throw ParseError("empty scalar literal");
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      throw ParseError("whitespace in scalar literal '" + std::string(text) + "'");
    }
  }
  mpq_class re = 0;
  mpq_class im = 0;
  if (text.back() == 'i') {
    std::string_view body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not the leading one or an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' &&
          body[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    std::string_view real_text;
    std::string_view imag_text = body;
    if (split != std::string_view::npos) {
      real_text = body.substr(0, split);
      imag_text = body.substr(split);
      re = parse_rational(real_text);
    }
    if (imag_text.empty() || imag_text == "+") {
      im = 1;
    } else if (imag_text == "-") {
      im = -1;
    } else {
      im = parse_rational(imag_text);
    }
  } else {
    re = parse_rational(text);
  }
  Scalar s = Scalar::exact(std::move(re), std::move(im));
  return s.to_mode(mode);
}

}  // namespace misolab
