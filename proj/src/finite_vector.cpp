#include "misolab/finite_vector.hpp"

namespace misolab {

FiniteVector::FiniteVector(Mode mode, std::map<std::size_t, Scalar> entries)
    : mode_(mode) {
  for (auto& [index, value] : entries) {
    if (value.mode() != mode_) throw ModeMismatch("finite vector entry mode");
    if (!value.exactly_zero()) entries_.emplace(index, std::move(value));
  }
}

FiniteVector FiniteVector::basis(std::size_t index, Mode mode) {
  return FiniteVector(mode, {{index, Scalar::one(mode)}});
}

Scalar FiniteVector::at(std::size_t index) const {
  auto it = entries_.find(index);
  return it == entries_.end() ? Scalar::zero(mode_) : it->second;
}

FiniteVector FiniteVector::operator+(const FiniteVector& rhs) const {
  if (mode_ != rhs.mode_) throw ModeMismatch("finite vectors: modes differ");
  std::map<std::size_t, Scalar> out = entries_;
  for (const auto& [index, value] : rhs.entries_) {
    auto [it, inserted] = out.emplace(index, value);
    if (!inserted) it->second += value;
  }
  return FiniteVector(mode_, std::move(out));
}

FiniteVector FiniteVector::operator-(const FiniteVector& rhs) const {
  return *this + rhs.scaled(-Scalar::one(mode_));
}

FiniteVector FiniteVector::scaled(const Scalar& factor) const {
  std::map<std::size_t, Scalar> out;
  for (const auto& [index, value] : entries_) out.emplace(index, value * factor);
  return FiniteVector(mode_, std::move(out));
}

FiniteVector FiniteVector::cleaned(double tol) const {
  if (mode_ == Mode::Exact) return *this;
  std::map<std::size_t, Scalar> out;
  for (const auto& [index, value] : entries_) {
    if (!value.is_zero(tol)) out.emplace(index, value);
  }
  return FiniteVector(mode_, std::move(out));
}

Scalar FiniteVector::norm2() const {
  Scalar total = Scalar::zero(mode_);
  for (const auto& [index, value] : entries_) total += value.abs2();
  return total;
}

bool operator==(const FiniteVector& a, const FiniteVector& b) {
  return a.mode_ == b.mode_ && a.entries_ == b.entries_;
}

Scalar inner(const FiniteVector& u, const FiniteVector& v) {
  if (u.mode() != v.mode()) throw ModeMismatch("inner: modes differ");
  Scalar total = Scalar::zero(u.mode());
  const auto& a = u.support();
  const auto& b = v.support();
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      total += ia->second * ib->second.conj();
      ++ia;
      ++ib;
    }
  }
  return total;
}

}  // namespace misolab
