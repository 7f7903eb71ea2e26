#pragma once

#include <cstddef>
#include <optional>

#include "misolab/difference.hpp"
#include "misolab/matrix.hpp"
#include "misolab/polynomial.hpp"
#include "misolab/weighted_shift.hpp"

namespace misolab {

/// Window used for shift orbit tests at order m: max(16, 2·(2m+1) + 2).
std::size_t default_shift_window(unsigned m);

/// Positivity of p on all of ℤ₊ from its Newton coefficients: p(0) > 0 and
/// every forward difference Δ^k p(0) ≥ 0 (a sufficient condition only).
bool newton_positivity_certificate(const Polynomial& p);

/// Shift with |λ_n|² = p(n+1)/p(n).
///
/// p must have real coefficients and p(n) > 0 for n = 0..prefix_len; indices
/// past the prefix are produced on demand and throw if p(n) ≤ 0 there.
/// Exact mode keeps squared weights; Float mode uses λ_n = +√(p(n+1)/p(n)).
WeightedShift shift_from_polynomial(const Polynomial& p, std::size_t prefix_len);

/// W_{T,h} with |λ_n|² = ||T^{n+1}h||² / ||Tⁿh||², so that
/// ||W_{T,h}ⁿ e₀||² = ||Tⁿh||² / ||h||².
WeightedShift localization_shift(const DenseOperator& t, const DenseVector& h,
                                 std::size_t prefix_len, double tol = 0.0);

/// Δ^m γ_{W,e_j} vanishes over the window for every j < basis_count.
bool shift_is_m_isometry(const WeightedShift& w, unsigned m,
                         std::size_t basis_count,
                         double tol = kDefaultDifferenceTol,
                         std::optional<std::size_t> window = std::nullopt);

}  // namespace misolab
