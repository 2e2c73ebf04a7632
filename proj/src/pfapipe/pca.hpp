#pragma once

#include <array>

#include "pfapipe/plane.hpp"

namespace pfapipe {

// Orthonormal 4-channel decorrelating transform. Rows of `a` are unit
// eigenvectors of the inter-channel covariance, ordered by descending
// eigenvalue, with a deterministic sign and degenerate-subspace convention.
struct PcaTransform {
  std::array<std::array<double, 4>, 4> a;
  std::array<double, 4> mean;
  std::array<double, 4> eigenvalues;

  // max-norm of A^T A - I; the orthonormality invariant requires <= 1e-9.
  double orthonormality_error() const;
};

// Covariance is computed over all pixels with means subtracted. Degenerate
// eigenvalue groups (ties and the null space) are re-spanned from canonical
// basis vectors so the result is deterministic; each row's first
// non-negligible entry is made positive.
PcaTransform compute_pca_transform(const std::array<Plane, 4>& channels);

// sigma_out_i = sqrt(sum_j a_ij^2 sigma_in_j^2)  (the element-squared matrix
// applied to variances).
std::array<double, 4> propagate_noise_sigma(const PcaTransform& t,
                                            const std::array<double, 4>& sigma);

std::array<Plane, 4> pca_forward(const PcaTransform& t, const std::array<Plane, 4>& channels);
std::array<Plane, 4> pca_inverse(const PcaTransform& t, const std::array<Plane, 4>& components);

}  // namespace pfapipe
