#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "misolab/matrix.hpp"
#include "misolab/polynomial.hpp"
#include "misolab/spectral.hpp"

namespace misolab::gen {

using Rng = std::mt19937_64;

/// a/b + (c/d)i with |a|, |c| ≤ bound and 1 ≤ b, d ≤ den_max.
Scalar random_rational(Rng& rng, long bound = 5, long den_max = 4);
DenseOperator random_exact_matrix(Rng& rng, std::size_t dim, long bound = 3,
                                  long den_max = 3);
DenseVector random_exact_vector(Rng& rng, std::size_t dim, long bound = 5,
                                long den_max = 4);
/// Exact polynomial of degree exactly `degree`.
Polynomial random_exact_polynomial(Rng& rng, std::size_t degree);

/// Unimodular Gaussian rationals: 1, −1, ±i, (3±4i)/5, (5±12i)/13, (−5+12i)/13.
const std::vector<Scalar>& exact_unimodular_pool();

/// Exact unitary built from Pythagorean Givens rotations, unimodular phases
/// and a permutation.
DenseOperator random_exact_unitary(Rng& rng, std::size_t dim);
/// Haar-like Float unitary from the QR factor of a complex Gaussian matrix.
DenseOperator random_unitary(Rng& rng, std::size_t dim);
/// U T U*
DenseOperator conjugate(const DenseOperator& t, const DenseOperator& u);

struct CorpusEntry {
  enum class Kind { Certified, Sheared, OffCircle };

  Kind kind = Kind::Certified;
  DenseOperator t;
  std::vector<Scalar> hints;
  std::string label;
};

std::string_view to_string(CorpusEntry::Kind kind);

/// per_kind certified orthogonal Jordan sums, per_kind sheared couplings of
/// blocks with distinct unimodular eigenvalues, per_kind block sums with an
/// eigenvalue off the circle. Exact mode; Jordan sizes ≤ 3, dimension ≤ 6.
std::vector<CorpusEntry> decomposition_corpus(Rng& rng, std::size_t per_kind);

struct PerturbationPair {
  DenseOperator a;
  DenseOperator n;
  std::string label;
};

/// Commuting pairs: A an orthogonal sum of z_j + P_j(S_j), N = ⊕ Q_j(S_j) for
/// nilpotent shifts S_j and polynomials with P_j(0) = Q_j(0) = 0, plus pairs
/// that couple equal-eigenvalue chains.
std::vector<PerturbationPair> perturbation_corpus(Rng& rng, std::size_t count);

struct StrictIsometry {
  DenseOperator t;
  unsigned order = 0;
};

/// Exactly conjugated Jordan block sums whose strict order is one of `orders`.
std::vector<StrictIsometry> strict_isometry_corpus(Rng& rng, std::size_t count,
                                                   const std::vector<unsigned>& orders);

}  // namespace misolab::gen
