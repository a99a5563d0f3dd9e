#pragma once

#include <Eigen/Core>

namespace traj_manifold {

/// Full eigendecomposition of a real symmetric matrix.
struct SpectralResult {
    Eigen::VectorXd eigenvalues;  // nonincreasing
    Eigen::MatrixXd eigenvectors; // matching orthonormal columns
    int iterations = 0;           // QL sweeps used
};

/**
 * Dense symmetric eigensolver: Householder tridiagonalization followed by
 * the implicit-shift QL iteration.
 *
 * Eigenvalues are returned in nonincreasing order with matching orthonormal
 * eigenvectors; each eigenvector is oriented so its entry of largest
 * magnitude is positive. Deterministic and single-threaded. Throws
 * NumericalError if a QL sweep fails to converge.
 */
SpectralResult symmetric_eigendecomposition(const Eigen::MatrixXd& matrix);

} // namespace traj_manifold
