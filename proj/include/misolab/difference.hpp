#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "misolab/polynomial.hpp"
#include "misolab/scalar.hpp"

namespace misolab {

/// Default tolerance for Float-mode zero tests on difference rows.
inline constexpr double kDefaultDifferenceTol = 1e-9;

/// Samples γ_n = ||T^n h||², n = 0..N, of one orbit.
class OrbitSequence {
 public:
  /// Values must be real and nonnegative, at least two of them.
  explicit OrbitSequence(std::vector<Scalar> values, std::string source = {});

  const std::vector<Scalar>& values() const { return values_; }
  std::size_t window_len() const { return values_.size(); }
  Mode mode() const { return values_.front().mode(); }
  const std::string& source() const { return source_; }

 private:
  std::vector<Scalar> values_;
  std::string source_;
};

/// rows[k][n] = (Δ^k γ)_n for k = 0..depth.
struct DifferenceTable {
  std::vector<std::vector<Scalar>> rows;

  std::size_t depth() const { return rows.empty() ? 0 : rows.size() - 1; }
};

struct DegreeVerdict {
  enum class Kind { Polynomial, ZeroSequence, NotPolynomialWithinWindow };

  Kind kind = Kind::NotPolynomialWithinWindow;
  /// Set for Kind::Polynomial.
  std::optional<std::size_t> degree;
  /// max |Δ^{d+1}| over the window (the last row examined when not polynomial).
  double residual = 0.0;

  bool is_polynomial() const { return kind != Kind::NotPolynomialWithinWindow; }
  /// Degree with the zero sequence mapped to nullopt; nullopt if not polynomial.
  std::optional<std::size_t> degree_or_none() const { return degree; }
  std::string describe() const;
};

/// Forward-difference table by iterated subtraction; depth < window length.
DifferenceTable difference_table(std::span<const Scalar> values, std::size_t depth);
DifferenceTable difference_table(const OrbitSequence& gamma, std::size_t depth);

/// (Δ^m γ)_n through the binomial sum (−1)^m Σ_k (−1)^k C(m,k) γ_{n+k}.
Scalar binomial_difference(std::span<const Scalar> values, std::size_t m,
                           std::size_t n);

/// Float-mode zero threshold for the row Δ^depth:
/// tol · max(1, max|γ|) · C(depth, ⌊depth/2⌋).
double difference_row_threshold(std::span<const Scalar> values, std::size_t depth,
                                double tol);

/// True when every entry of Δ^depth over the window vanishes.
bool difference_row_vanishes(std::span<const Scalar> values, std::size_t depth,
                             double tol);

/// Smallest d with Δ^{d+1} ≡ 0 over the window (d ≤ window − 2).
DegreeVerdict detect_degree(std::span<const Scalar> values,
                            double tol = kDefaultDifferenceTol);
DegreeVerdict detect_degree(const OrbitSequence& gamma,
                            double tol = kDefaultDifferenceTol);

/// Newton forward interpolation p(x) = Σ_k (Δ^k γ)_0 / k! · (x)_k through the
/// detected degree. Throws PreconditionError when the window shows no
/// polynomial.
Polynomial newton_reconstruct(std::span<const Scalar> values,
                              double tol = kDefaultDifferenceTol);
Polynomial newton_reconstruct(const OrbitSequence& gamma,
                              double tol = kDefaultDifferenceTol);

/// Window length that certifies every degree an operator of this
/// dimension can produce: 2·(2·dim + 1) + 2.
std::size_t default_window(std::size_t dim);

}  // namespace misolab
