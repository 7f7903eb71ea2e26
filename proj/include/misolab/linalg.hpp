#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "misolab/matrix.hpp"

namespace misolab::linalg {

/// Basis of ker(A). Exact mode: rational basis from reduced row echelon form.
/// Float mode: orthonormal right singular vectors with σ ≤ tol·max(1, σ_max).
std::vector<DenseVector> kernel_basis(const DenseOperator& a, double tol);

/// Dimension of span(vectors); same rank rule as kernel_basis.
std::size_t rank(const std::vector<DenseVector>& vectors, double tol);

/// True when v lies in span(basis) (exactly, or with relative residual ≤ tol).
bool in_span(const std::vector<DenseVector>& basis, const DenseVector& v,
             double tol);

/// Gauss–Jordan inverse; nullopt for a singular matrix.
std::optional<DenseOperator> inverse(const DenseOperator& a, double tol);

/// Orthonormal basis of span(vectors), Float mode only.
std::vector<DenseVector> orthonormalize(const std::vector<DenseVector>& vectors,
                                        double tol);

/// Q*·T·Q for an orthonormal list Q spanning a T-invariant subspace.
DenseOperator compress(const DenseOperator& t, const std::vector<DenseVector>& q);

/// Eigenvalues of a Float- or Exact-mode matrix computed in double precision.
std::vector<std::complex<double>> eigenvalues(const DenseOperator& a);

/// Unit eigenvector of a Hermitian matrix for its largest-magnitude eigenvalue.
DenseVector dominant_hermitian_eigenvector(const DenseOperator& a);

/// Largest singular value (double precision).
double spectral_norm(const DenseOperator& a);

}  // namespace misolab::linalg
