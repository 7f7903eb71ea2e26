#include "misolab/polynomial.hpp"

#include <algorithm>

namespace misolab {

Polynomial::Polynomial(Mode mode, std::vector<Scalar> coeffs)
    : mode_(mode), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (c.mode() != mode_) throw ModeMismatch("polynomial coefficient mode");
  }
  while (!coeffs_.empty() && coeffs_.back().exactly_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const Scalar& c) {
  return Polynomial(c.mode(), {c});
}

Polynomial Polynomial::monomial(std::size_t k, Mode mode) {
  std::vector<Scalar> c(k + 1, Scalar::zero(mode));
  c[k] = Scalar::one(mode);
  return Polynomial(mode, std::move(c));
}

Polynomial Polynomial::falling(std::size_t k, Mode mode) {
  Polynomial out = constant(Scalar::one(mode));
  for (std::size_t j = 0; j < k; ++j) {
    out = out * Polynomial(mode, {Scalar::from_int(-static_cast<long>(j), mode),
                                  Scalar::one(mode)});
  }
  return out;
}

std::optional<std::size_t> Polynomial::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

Scalar Polynomial::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : Scalar::zero(mode_);
}

Scalar Polynomial::eval(const Scalar& x) const {
  if (x.mode() != mode_) throw ModeMismatch("poly_eval: modes differ");
  Scalar acc = Scalar::zero(mode_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

void Polynomial::check_mode(const Polynomial& rhs) const {
  if (mode_ != rhs.mode_) throw ModeMismatch("polynomials have different modes");
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  check_mode(rhs);
  std::vector<Scalar> out(std::max(coeffs_.size(), rhs.coeffs_.size()),
                          Scalar::zero(mode_));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) out[k] += rhs.coeffs_[k];
  return Polynomial(mode_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  return *this + rhs.scaled(-Scalar::one(mode_));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  check_mode(rhs);
  if (is_zero() || rhs.is_zero()) return Polynomial(mode_);
  std::vector<Scalar> out(coeffs_.size() + rhs.coeffs_.size() - 1,
                          Scalar::zero(mode_));
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    for (std::size_t b = 0; b < rhs.coeffs_.size(); ++b) {
      out[a + b] += coeffs_[a] * rhs.coeffs_[b];
    }
  }
  return Polynomial(mode_, std::move(out));
}

Polynomial Polynomial::scaled(const Scalar& factor) const {
  std::vector<Scalar> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c * factor);
  return Polynomial(mode_, std::move(out));
}

Polynomial Polynomial::star() const {
  std::vector<Scalar> out;
  for (const auto& c : coeffs_) out.push_back(c.conj());
  return Polynomial(mode_, std::move(out));
}

Polynomial Polynomial::re_part() const {
  std::vector<Scalar> out;
  for (const auto& c : coeffs_) out.push_back(c.real_part());
  return Polynomial(mode_, std::move(out));
}

Polynomial Polynomial::im_part() const {
  std::vector<Scalar> out;
  for (const auto& c : coeffs_) out.push_back(c.imag_part());
  return Polynomial(mode_, std::move(out));
}

bool Polynomial::has_real_coeffs(double tol) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [tol](const Scalar& c) { return c.is_real(tol); });
}

Polynomial Polynomial::to_mode(Mode target) const {
  std::vector<Scalar> out;
  for (const auto& c : coeffs_) out.push_back(c.to_mode(target));
  return Polynomial(target, std::move(out));
}

std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k].exactly_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + coeffs_[k].to_string() + ")";
    if (k >= 1) out += "x";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.mode_ == b.mode_ && a.coeffs_ == b.coeffs_;
}

}  // namespace misolab
