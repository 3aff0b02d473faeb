#include "nlslab/dense.hpp"

#include <string>
#include <vector>

#include <lapacke.h>

#include "nlslab/error.hpp"

namespace nlslab {

SymmetricEigen lowest_eigenpairs(const Eigen::MatrixXd& a, int count, bool want_vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  if (a.cols() != a.rows()) throw Error(ErrorKind::dimension, "lowest_eigenpairs: matrix not square");
  if (count < 1 || count > n) throw Error(ErrorKind::argument, "lowest_eigenpairs: bad count");
  Eigen::MatrixXd work = a;
  Eigen::VectorXd w(n);
  Eigen::MatrixXd z(n, want_vectors ? count : 1);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(count));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', 'L', n,
                                         work.data(), n, 0.0, 0.0, 1, count, 0.0, &found, w.data(),
                                         z.data(), n, support.data());
  if (info != 0 || found != count) {
    throw Error(ErrorKind::numerical_singularity,
                "dsyevr failed (info " + std::to_string(info) + ")");
  }
  SymmetricEigen out;
  out.values = w.head(count);
  if (want_vectors) out.vectors = std::move(z);
  return out;
}

SymmetricEigen all_eigenpairs(const Eigen::MatrixXd& a) {
  const auto n = static_cast<lapack_int>(a.rows());
  if (a.cols() != a.rows()) throw Error(ErrorKind::dimension, "all_eigenpairs: matrix not square");
  SymmetricEigen out;
  out.vectors = a;
  out.values.resize(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(), n, out.values.data());
  if (info != 0) {
    throw Error(ErrorKind::numerical_singularity, "dsyevd failed (info " + std::to_string(info) + ")");
  }
  return out;
}

double min_eigenvalue(const Eigen::MatrixXd& a) { return lowest_eigenpairs(a, 1, false).values[0]; }

double asymmetry(const Eigen::MatrixXd& a) {
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace nlslab
