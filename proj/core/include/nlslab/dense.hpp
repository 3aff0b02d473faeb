#pragma once

#include <Eigen/Dense>

namespace nlslab {

/// Eigenvalues in ascending order with matching eigenvector columns.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Lowest `count` eigenpairs of a dense symmetric matrix (LAPACK dsyevr).
/// Only the lower triangle of `a` is referenced.
SymmetricEigen lowest_eigenpairs(const Eigen::MatrixXd& a, int count, bool want_vectors = true);

/// Full eigendecomposition of a dense symmetric matrix (LAPACK dsyevd).
SymmetricEigen all_eigenpairs(const Eigen::MatrixXd& a);

/// Smallest eigenvalue only.
double min_eigenvalue(const Eigen::MatrixXd& a);

/// Largest |a_ij - a_ji| / max|a_ij|.
double asymmetry(const Eigen::MatrixXd& a);

}  // namespace nlslab
