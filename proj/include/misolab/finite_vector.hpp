#pragma once

#include <cstddef>
#include <map>

#include "misolab/scalar.hpp"

namespace misolab {

/// Finitely supported sequence (x_0, x_1, ...) over one arithmetic mode.
///
/// Entries that are structurally zero are never stored. Float values that
/// are merely tiny stay until cleaned() is called with a tolerance.
class FiniteVector {
 public:
  explicit FiniteVector(Mode mode = Mode::Exact) : mode_(mode) {}
  FiniteVector(Mode mode, std::map<std::size_t, Scalar> entries);

  static FiniteVector basis(std::size_t index, Mode mode);

  Mode mode() const { return mode_; }
  const std::map<std::size_t, Scalar>& support() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  /// Coefficient at index (zero outside the support).
  Scalar at(std::size_t index) const;

  FiniteVector operator+(const FiniteVector& rhs) const;
  FiniteVector operator-(const FiniteVector& rhs) const;
  FiniteVector scaled(const Scalar& factor) const;
  /// Drops entries with |x| ≤ tol (Float); identity in Exact mode.
  FiniteVector cleaned(double tol) const;

  Scalar norm2() const;

  friend bool operator==(const FiniteVector& a, const FiniteVector& b);

 private:
  Mode mode_;
  std::map<std::size_t, Scalar> entries_;
};

/// ⟨u, v⟩ = Σ u_n conj(v_n).
Scalar inner(const FiniteVector& u, const FiniteVector& v);

}  // namespace misolab
