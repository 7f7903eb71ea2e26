#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "misolab/isometry.hpp"
#include "misolab/matrix.hpp"

namespace misolab {

/// Jordan block z·I + (ones on the superdiagonal) of size k.
struct JordanSpec {
  Scalar z;
  std::size_t size = 1;
};

DenseOperator jordan_matrix(const JordanSpec& spec);

/// Orthogonal direct sum of Jordan blocks (block-diagonal matrix).
DenseOperator jordan_sum(const std::vector<JordanSpec>& blocks);

struct NilpotentInfo {
  std::size_t index = 0;  ///< ν: smallest k with N^k = 0
  DenseVector witness;    ///< N^{ν−1} witness ≠ 0
};

/// ν(N) and a witness, or nullopt when N^dim ≠ 0. Float mode treats N^k as
/// zero when max|N^k| ≤ tol · max(1, max|N|)^k.
std::optional<NilpotentInfo> nilpotency_index(const DenseOperator& n, double tol);

/// E_T(z) = ∪ ker((T − zI)^k).
struct GeneralizedEigenspace {
  Scalar z;
  /// Rational basis (Exact) or orthonormal basis (Float).
  std::vector<DenseVector> basis;
  /// Smallest k with ker((T − zI)^k) = E_T(z); equals ν of T − zI on E_T(z).
  std::size_t chain_depth = 0;

  std::size_t dim() const { return basis.size(); }
};

/// Float-mode eigenvalue cluster: centroid of eigenvalues judged equal.
struct EigenCluster {
  std::complex<double> centroid;
  std::size_t multiplicity = 0;
};

struct SpectrumClustering {
  std::vector<EigenCluster> clusters;
  std::vector<std::string> warnings;
};

/// Groups computed eigenvalues. Values closer than 1e−6·max(1, spectral
/// scale) merge; clusters then merge when their centroids lie within the
/// splitting radius (c·ε·‖T‖)^{1/s} of a defective eigenvalue of total
/// multiplicity s. Distances within a factor 10 of either radius are flagged.
SpectrumClustering cluster_spectrum(const DenseOperator& t);

struct EigenspaceSearch {
  std::vector<GeneralizedEigenspace> spaces;
  std::vector<std::string> warnings;
};

/// One generalized eigenspace per distinct eigenvalue.
///
/// Exact mode requires eigen_hints; each hint is verified by kernel rank and a
/// dimension deficit (missing eigenvalue) throws PreconditionError. Float mode
/// clusters the computed spectrum; hints are ignored there.
EigenspaceSearch generalized_eigenspaces(const DenseOperator& t,
                                         const std::vector<Scalar>& eigen_hints,
                                         double tol);

struct DecompositionBlock {
  GeneralizedEigenspace space;
  NilpotentInfo nilpotent;  ///< N_j = (T − z_j I) restricted to the block
};

struct AlgebraicDecomposition {
  std::vector<DecompositionBlock> blocks;
  /// max |⟨u, v⟩|² over basis vectors of distinct blocks (unit vectors in
  /// Float mode, so this is a squared cosine there).
  Scalar pairwise_gram;
  /// max_j (2ν(N_j) − 1); meaningful when certified.
  unsigned predicted_strict_order = 0;
  bool all_unimodular = false;
  bool blocks_orthogonal = false;
  bool certified = false;
  /// Why certification failed (empty when certified).
  std::vector<std::string> refusal;
  /// max |Σ_j P_j T P_j − T| for the spectral projections P_j.
  double reassembly_residual = 0.0;
  /// Exact mode: max |entry|² of the same residual.
  std::optional<Scalar> reassembly_residual_exact;
  std::vector<std::string> warnings;
};

/// Unimodular-plus-nilpotent decomposition over the generalized eigenspaces.
/// Certifies m-isometricity iff every |z_j| = 1 and the blocks are mutually
/// orthogonal. A refusal is returned as a value.
AlgebraicDecomposition algebraic_decompose(const DenseOperator& t,
                                           const std::vector<Scalar>& eigen_hints,
                                           double tol = kDefaultDefectTol);

struct PerturbationReport {
  unsigned m_a = 0;          ///< order used for A
  std::size_t nu = 0;        ///< ν(N)
  unsigned m_n_bound = 0;    ///< m_A + 2(ν − 1)
  bool bound_verified = false;  ///< β_{m_N}(A + N) = 0
  bool strict = false;       ///< strictness criterion fired
  std::optional<DenseVector> witness;
  std::optional<Scalar> witness_value;
};

/// Order bound and strictness criterion for A + N with AN = NA.
///
/// m_A defaults to the strict order of A; passing m_a_override treats A as an
/// m-isometry of that (possibly non-strict) order. Strictness fires when
/// Σ_{l<m_A} (−1)^l C(m_A − 1, l) ||A^l N^{ν−1} f₀||² ≠ 0 for some f₀, searched
/// over basis vectors and their polarization combinations.
PerturbationReport perturbation_analysis(const DenseOperator& a,
                                         const DenseOperator& n,
                                         double tol = kDefaultDefectTol,
                                         std::optional<unsigned> m_a_override = std::nullopt);

/// Basis h, Th, …, T^{d−1}h of the cyclic subspace C_T(h).
std::vector<DenseVector> cyclic_subspace(const DenseOperator& t, const DenseVector& h,
                                         double tol);

/// The unimodular pairs 𝕌 = {−1, 1} × {−i, i}.
std::array<std::pair<Scalar, Scalar>, 4> unimodular_pairs(Mode mode);

struct OrthoReport {
  enum class Case { Opposite, Generic };

  Case which = Case::Generic;
  /// ||Tⁿ(h₁ + h₂)||² polynomial over the window.
  bool sum_orbit_polynomial = false;
  /// Opposite case: ||Tⁿ(ε_k h₁ + h₂)||² polynomial for k = 1, 2.
  bool eps_orbits_polynomial = false;
  std::pair<Scalar, Scalar> eps;
  /// ⟨Tⁿh₁, Tⁿh₂⟩ = 0 for every n in the window.
  bool mixed_inner_vanishes = false;
  /// Re⟨Tⁿh₁, Tⁿh₂⟩ = 0 for every n in the window.
  bool real_part_vanishes = false;
  /// Real parts vanish while full inner products do not.
  bool re_only = false;
  /// Every applicable implication of the orthogonality theorem held.
  bool theorem_consistent = false;
  double max_mixed_inner = 0.0;
  std::vector<std::string> diagnostics;
};

/// Orthogonality criteria for generalized eigenvectors h_j ∈ E_T(z_j),
/// |z_j| = 1, z₁ ≠ z₂, evaluated over n < window.
OrthoReport ortho_test_generalized(const DenseOperator& t, const DenseVector& h1,
                                   const DenseVector& h2, const Scalar& z1,
                                   const Scalar& z2, std::size_t window, double tol,
                                   std::optional<std::pair<Scalar, Scalar>> eps = std::nullopt);

struct EquivalenceReport {
  /// Conditions (i)–(v) of the Jordan-pair characterization, in order:
  /// orthogonal cyclic spaces; translate orbits polynomial; g₁ + h₂ orbits
  /// polynomial; g₁ + g₂ orbits polynomial; restriction is an m-isometry.
  std::array<bool, 5> conditions{};
  bool all_agree = false;
  std::size_t dim1 = 0;
  std::size_t dim2 = 0;
  /// Strict order of T on C_T(h₁) + C_T(h₂) when condition (v) holds.
  std::optional<unsigned> restricted_order;
  /// Largest cross inner product magnitude between the cyclic spaces.
  double cross_gram = 0.0;
};

/// Finite-scale evaluation of the equivalent conditions for two Jordan
/// blocks of T at h₁, h₂ with distinct unimodular eigenvalues.
EquivalenceReport jordan_pair_equivalences(const DenseOperator& t,
                                           const DenseVector& h1,
                                           const DenseVector& h2, const Scalar& z1,
                                           const Scalar& z2, double tol,
                                           std::optional<std::size_t> window = std::nullopt,
                                           std::uint64_t seed = 0,
                                           std::size_t samples = 16);

/// Strict order of T restricted to span(spanning_set) (a T-invariant
/// subspace), searched up to m_max.
std::optional<unsigned> restricted_strict_order(const DenseOperator& t,
                                                const std::vector<DenseVector>& spanning_set,
                                                unsigned m_max, double tol);

struct SpectrumCheck {
  bool all_on_circle = false;
  std::vector<std::complex<double>> spectrum;
  std::vector<double> moduli;
};

/// Necessary-condition filter σ(T) ⊆ 𝕋. Exact operators with hints are
/// checked exactly on the hints; otherwise clustered double-precision
/// eigenvalues are compared with tolerance.
SpectrumCheck unimodular_spectrum_check(const DenseOperator& t, double tol,
                                        const std::vector<Scalar>& eigen_hints = {});

/// |z| = 1 exactly (Exact) or within tol (Float).
bool is_unimodular(const Scalar& z, double tol);

}  // namespace misolab
