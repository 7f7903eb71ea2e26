#include "misolab/weighted_shift.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>

namespace misolab {

namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) ||
      !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return std::nullopt;
  }
  mpz_class num = sqrt(q.get_num());
  mpz_class den = sqrt(q.get_den());
  return mpq_class(num, den);
}

}  // namespace

WeightedShift WeightedShift::from_weights(Mode mode, std::vector<Scalar> prefix,
                                          Rule tail) {
  WeightedShift w;
  w.mode_ = mode;
  for (const auto& s : prefix) {
    if (s.mode() != mode) throw ModeMismatch("shift weight mode");
    w.squared_prefix_.push_back(s.abs2());
  }
  w.weight_prefix_ = std::move(prefix);
  w.weight_tail_ = tail;
  w.squared_tail_ = [tail](std::size_t n) { return tail(n).abs2(); };
  return w;
}

WeightedShift WeightedShift::from_squared_weights(Mode mode,
                                                  std::vector<Scalar> prefix,
                                                  Rule tail) {
  WeightedShift w;
  w.mode_ = mode;
  for (const auto& s : prefix) {
    if (s.mode() != mode) throw ModeMismatch("shift weight mode");
  }
  w.squared_prefix_ = std::move(prefix);
  w.squared_tail_ = std::move(tail);
  return w;
}

WeightedShift WeightedShift::unweighted(Mode mode) {
  return from_weights(mode, {}, [mode](std::size_t) { return Scalar::one(mode); });
}

Scalar WeightedShift::squared_weight(std::size_t n) const {
  if (n < squared_prefix_.size()) return squared_prefix_[n];
  Scalar s = squared_tail_(n);
  if (s.mode() != mode_) throw ModeMismatch("shift rule returned wrong mode");
  return s;
}

Scalar WeightedShift::weight(std::size_t n) const {
  if (weight_tail_) {
    return n < weight_prefix_.size() ? weight_prefix_[n] : weight_tail_(n);
  }
  const Scalar sq = squared_weight(n);
  if (mode_ == Mode::Float) {
    return Scalar::floating(std::sqrt(sq.real_double()));
  }
  auto root = rational_sqrt(sq.exact_value().re);
  if (!root) {
    throw PreconditionError("weight " + std::to_string(n) + " = sqrt(" +
                            sq.to_string() + ") is not rational");
  }
  return Scalar::exact(*root);
}

FiniteVector WeightedShift::apply(const FiniteVector& v) const {
  if (v.mode() != mode_) throw ModeMismatch("shift apply: modes differ");
  std::map<std::size_t, Scalar> out;
  for (const auto& [index, value] : v.support()) {
    out.emplace(index + 1, value * weight(index));
  }
  return FiniteVector(mode_, std::move(out));
}

FiniteVector WeightedShift::apply_power(const FiniteVector& v,
                                        std::size_t power) const {
  FiniteVector out = v;
  for (std::size_t k = 0; k < power; ++k) out = apply(out);
  return out;
}

Scalar WeightedShift::basis_orbit_norm2(std::size_t j, std::size_t n) const {
  Scalar out = Scalar::one(mode_);
  for (std::size_t t = j; t < j + n; ++t) out *= squared_weight(t);
  return out;
}

Scalar WeightedShift::orbit_inner(const FiniteVector& f, const FiniteVector& g,
                                  std::size_t n) const {
  if (f.mode() != mode_ || g.mode() != mode_) {
    throw ModeMismatch("orbit_inner: modes differ");
  }
  Scalar total = Scalar::zero(mode_);
  for (const auto& [index, value] : f.support()) {
    auto it = g.support().find(index);
    if (it == g.support().end()) continue;
    total += value * it->second.conj() * basis_orbit_norm2(index, n);
  }
  return total;
}

}  // namespace misolab
