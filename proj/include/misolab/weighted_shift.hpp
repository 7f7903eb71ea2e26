#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "misolab/finite_vector.hpp"

namespace misolab {

/// Unilateral weighted shift W e_n = λ_n e_{n+1} on finitely supported
/// sequences.
///
/// The weight sequence is total: an explicit prefix is cached at
/// construction and any later index is produced by the generating rule.
/// Exact shifts normally carry only the squared moduli |λ_n|², since every
/// norm and inner product of W-orbits depends on nothing else. Such shifts
/// can still be applied to vectors when a squared weight is a perfect
/// rational square.
class WeightedShift {
 public:
  using Rule = std::function<Scalar(std::size_t)>;

  /// Shift with explicit weights λ_n (prefix, then rule for n ≥ prefix.size()).
  static WeightedShift from_weights(Mode mode, std::vector<Scalar> prefix,
                                    Rule tail);
  /// Shift known through |λ_n|² only; Float mode takes λ_n = +√|λ_n|².
  static WeightedShift from_squared_weights(Mode mode, std::vector<Scalar> prefix,
                                            Rule tail);
  /// All weights equal to one.
  static WeightedShift unweighted(Mode mode);

  Mode mode() const { return mode_; }
  std::size_t prefix_len() const { return squared_prefix_.size(); }

  /// |λ_n|²
  Scalar squared_weight(std::size_t n) const;
  /// λ_n; throws PreconditionError for an exact shift whose squared weight has
  /// no rational square root.
  Scalar weight(std::size_t n) const;

  FiniteVector apply(const FiniteVector& v) const;
  /// W^power v
  FiniteVector apply_power(const FiniteVector& v, std::size_t power) const;

  /// ||W^n e_j||² = Π_{t=j}^{j+n−1} |λ_t|².
  Scalar basis_orbit_norm2(std::size_t j, std::size_t n) const;
  /// ⟨W^n f, W^n g⟩ computed from squared weights only.
  Scalar orbit_inner(const FiniteVector& f, const FiniteVector& g,
                     std::size_t n) const;

 private:
  WeightedShift() = default;

  Mode mode_ = Mode::Exact;
  std::vector<Scalar> squared_prefix_;
  std::vector<Scalar> weight_prefix_;  // empty when only squares are known
  Rule squared_tail_;
  Rule weight_tail_;
};

}  // namespace misolab
