#include "nlslab/branch.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlslab/error.hpp"

namespace nlslab {

namespace {

constexpr double kPhiFloor = 1e-14;

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

SymmetricGrid2D::SymmetricGrid2D(Grid2D grid)
    : grid_(std::move(grid)), mx_(grid_.nx() / 2 + 1), my_(grid_.ny() / 2 + 1) {
  if (grid_.nx() % 2 != 0 || grid_.ny() % 2 != 0 || grid_.ny() < 4) {
    throw Error(ErrorKind::argument, "SymmetricGrid2D: nx and ny must be even, ny >= 4");
  }
  const EvenBasis ex(grid_.nx());
  const EvenBasis ey(grid_.ny());
  mult_.resize(static_cast<Eigen::Index>(size()));
  for (std::size_t j = 0; j < my_; ++j) {
    for (std::size_t i = 0; i < mx_; ++i) {
      mult_[static_cast<Eigen::Index>(j * mx_ + i)] = ex.multiplicity(i) * ey.multiplicity(j);
    }
  }
  weights_ = mult_ * grid_.weight();
  const Eigen::MatrixXd dx = ex.restrict_nodal(spectral_laplacian_matrix(grid_.x()));
  const Eigen::MatrixXd dy = ey.restrict_nodal(spectral_laplacian_matrix_y(grid_));
  const auto mx = static_cast<Eigen::Index>(mx_);
  const auto my = static_cast<Eigen::Index>(my_);
  laplacian_ = kron(Eigen::MatrixXd::Identity(my, my), dx) + kron(dy, Eigen::MatrixXd::Identity(mx, mx));
}

RealVector SymmetricGrid2D::extrude(const RealVector& profile) const { return extrude_cos(profile, 0); }

RealVector SymmetricGrid2D::extrude_cos(const RealVector& profile, int n) const {
  if (static_cast<std::size_t>(profile.size()) != grid_.nx()) {
    throw Error(ErrorKind::dimension, "SymmetricGrid2D: profile does not match the x grid");
  }
  RealVector out(static_cast<Eigen::Index>(size()));
  for (std::size_t j = 0; j < my_; ++j) {
    const double c = std::cos(n * grid_.y_nodes()[static_cast<Eigen::Index>(j)] / grid_.period_param());
    for (std::size_t i = 0; i < mx_; ++i) {
      out[static_cast<Eigen::Index>(j * mx_ + i)] = profile[static_cast<Eigen::Index>(i)] * c;
    }
  }
  return out;
}

RealVector SymmetricGrid2D::to_full(const RealVector& reduced) const {
  const std::size_t nx = grid_.nx();
  const std::size_t ny = grid_.ny();
  RealVector out(static_cast<Eigen::Index>(nx * ny));
  for (std::size_t j = 0; j < ny; ++j) {
    const std::size_t rj = j < my_ ? j : ny - j;
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t ri = i < mx_ ? i : nx - i;
      out[static_cast<Eigen::Index>(grid_.index(i, j))] = reduced[static_cast<Eigen::Index>(rj * mx_ + ri)];
    }
  }
  return out;
}

RealVector SymmetricGrid2D::to_reduced(const RealVector& full) const {
  if (static_cast<std::size_t>(full.size()) != grid_.size()) {
    throw Error(ErrorKind::dimension, "SymmetricGrid2D: field does not match the grid");
  }
  RealVector out(static_cast<Eigen::Index>(size()));
  for (std::size_t j = 0; j < my_; ++j) {
    for (std::size_t i = 0; i < mx_; ++i) {
      out[static_cast<Eigen::Index>(j * mx_ + i)] = full[static_cast<Eigen::Index>(grid_.index(i, j))];
    }
  }
  return out;
}

double SymmetricGrid2D::inner(const RealVector& f, const RealVector& g) const {
  return (f.array() * g.array() * weights_.array()).sum();
}

double SymmetricGrid2D::norm(const RealVector& f) const { return std::sqrt(inner(f, f)); }

Eigen::VectorXd SymmetricGrid2D::lowest_eigenvalues(const Eigen::MatrixXd& a, int count) const {
  const RealVector s = mult_.cwiseSqrt();
  Eigen::MatrixXd sym = s.asDiagonal() * a * s.cwiseInverse().asDiagonal();
  sym = 0.5 * (sym + sym.transpose()).eval();
  return lowest_eigenpairs(sym, count, false).values;
}

// ---------------------------------------------------------------------------

double omega_pp0_direct(const GroundState& gs, const InternalMode& mode, double dlambda,
                        const LineProblem& problem, std::size_t ny) {
  const double period = mode.critical_period();
  const SymmetricGrid2D sg(Grid2D(problem.grid(), ny, period));
  const double p = gs.p;
  const RealVector phi = sg.extrude(gs.phi).cwiseMax(kPhiFloor);
  const RealVector k = sg.extrude_cos(mode.psi_omega, 1);
  const RealVector v = sg.extrude(problem.potential());

  Eigen::MatrixXd op = -sg.laplacian();
  op.diagonal() += (gs.omega + v.array() - p * phi.array().pow(p - 1.0)).matrix();
  const auto n = static_cast<Eigen::Index>(sg.size());
  Eigen::MatrixXd bordered = Eigen::MatrixXd::Zero(n + 1, n + 1);
  bordered.topLeftCorner(n, n) = op;
  bordered.block(0, n, n, 1) = k;
  bordered.block(n, 0, 1, n) = (k.array() * sg.weights().array()).matrix().transpose();

  const RealVector k2 = k.array().square();
  const RealVector g = phi.array().pow(p - 2.0) * k2.array();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs.head(n) = g;
  const RealVector u = bordered.partialPivLu().solve(rhs).head(n);

  const double i1 = sg.inner(g, u);
  const double i2 = p == 2.0 ? 0.0 : sg.inner(k2, phi.array().pow(p - 3.0) * k2.array());
  const double denom = dlambda * sg.inner(k, k);
  return -p * p * (p - 1.0) * (p - 1.0) * i1 / denom - p * (p - 1.0) * (p - 2.0) * i2 / (3.0 * denom);
}

std::vector<double> default_branch_amplitudes(const GroundState& gs, const InternalMode& mode, int count,
                                              double step) {
  const double scale = gs.linf() / mode.psi_omega.cwiseAbs().maxCoeff();
  std::vector<double> a;
  for (int k = 0; k <= count; ++k) a.push_back(k * step * scale);
  return a;
}

std::vector<BranchPoint> branch_continue(const GroundState& gs, const InternalMode& mode,
                                         const LineProblem& problem, const std::vector<double>& a_values,
                                         const BranchOptions& options) {
  if (a_values.empty() || a_values.front() != 0.0) {
    throw Error(ErrorKind::argument, "branch_continue: amplitudes must start at 0");
  }
  for (std::size_t i = 1; i < a_values.size(); ++i) {
    if (!(a_values[i] > a_values[i - 1])) {
      throw Error(ErrorKind::argument, "branch_continue: amplitudes must ascend");
    }
  }
  const double period = mode.critical_period();
  const double pi_l = std::numbers::pi * period;
  const SymmetricGrid2D sg(Grid2D(problem.grid(), options.ny, period));
  const double p = gs.p;
  const RealVector line = sg.extrude(gs.phi);
  const RealVector k = sg.extrude_cos(mode.psi_omega, 1);
  const RealVector wk = k.array() * sg.weights().array();
  const RealVector v = sg.extrude(problem.potential());
  const Eigen::MatrixXd neg_lap = -sg.laplacian();
  const auto n = static_cast<Eigen::Index>(sg.size());

  auto residual = [&](const RealVector& phi, double omega) {
    RealVector r = neg_lap * phi;
    r.array() += (omega + v.array()) * phi.array() - phi.array().abs().pow(p - 1.0) * phi.array();
    return r;
  };
  auto linearized = [&](const RealVector& phi, double omega) {
    Eigen::MatrixXd j = neg_lap;
    j.diagonal() += (omega + v.array() - p * phi.array().abs().pow(p - 1.0)).matrix();
    return j;
  };

  std::vector<BranchPoint> points;
  RealVector phi = line;
  double omega = gs.omega;
  double prev_a = 0.0;
  for (std::size_t idx = 0; idx < a_values.size(); ++idx) {
    const double a = a_values[idx];
    phi += (a - prev_a) * k;
    prev_a = a;

    BranchPoint bp;
    bp.a = a;
    double res = 0.0;
    bool converged = false;
    for (int it = 0; it <= options.max_iterations; ++it) {
      const RealVector f = residual(phi, omega);
      const double c = wk.dot(phi - line) - a * pi_l;
      res = std::sqrt(sg.inner(f, f) + c * c);
      if (res <= options.tol) {
        converged = true;
        bp.iterations = it;
        break;
      }
      Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n + 1, n + 1);
      jac.topLeftCorner(n, n) = linearized(phi, omega);
      jac.block(0, n, n, 1) = phi;
      jac.block(n, 0, 1, n) = wk.transpose();
      Eigen::VectorXd rhs(n + 1);
      rhs.head(n) = -f;
      rhs[n] = -c;
      const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
      bp.rcond = lu.rcond();
      if (!(bp.rcond > options.fold_rcond)) {
        throw BranchLost("branch_continue: bordered Jacobian singular at point " + std::to_string(idx) +
                             " (fold suspected)",
                         static_cast<int>(idx), true);
      }
      const Eigen::VectorXd step = lu.solve(rhs);
      phi += step.head(n);
      omega += step[n];
    }
    if (!converged) {
      throw BranchLost("branch_continue: Newton failed at point " + std::to_string(idx) +
                           ", residual " + std::to_string(res),
                       static_cast<int>(idx), false);
    }
    if (bp.rcond == 0.0) {
      Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n + 1, n + 1);
      jac.topLeftCorner(n, n) = linearized(phi, omega);
      jac.block(0, n, n, 1) = phi;
      jac.block(n, 0, 1, n) = wk.transpose();
      bp.rcond = jac.partialPivLu().rcond();
    }
    bp.omega_a = omega;
    bp.residual = res;
    bp.q2 = sg.inner(phi, phi);
    bp.lambda2 = sg.lowest_eigenvalues(linearized(phi, omega), 2)[1];
    bp.phi2d = Field::from_real(sg.to_full(phi), sg.grid().nx(), sg.grid().ny());
    points.push_back(std::move(bp));
  }
  return points;
}

double quadratic_slope(const std::vector<double>& a, const std::vector<double>& y) {
  if (a.size() != y.size() || a.size() < 3) {
    throw Error(ErrorKind::argument, "quadratic_slope: need at least three matching samples");
  }
  std::size_t zero = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) zero = i;
  }
  if (zero == a.size()) throw Error(ErrorKind::argument, "quadratic_slope: the samples must include a = 0");
  const auto m = static_cast<Eigen::Index>(a.size() - 1);
  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd rhs(m);
  Eigen::Index r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == zero) continue;
    const double a2 = a[i] * a[i];
    design(r, 0) = a2;
    design(r, 1) = a2 * a2;
    rhs[r] = y[i] - y[zero];
    ++r;
  }
  return design.colPivHouseholderQr().solve(rhs)[0];
}

BranchSlopes branch_slopes(const std::vector<BranchPoint>& points) {
  std::vector<double> a, omega, q2, l2;
  for (const auto& bp : points) {
    a.push_back(bp.a);
    omega.push_back(bp.omega_a);
    q2.push_back(bp.q2);
    l2.push_back(bp.lambda2);
  }
  return {quadratic_slope(a, omega), quadratic_slope(a, q2), quadratic_slope(a, l2)};
}

}  // namespace nlslab
