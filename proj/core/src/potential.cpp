#include "nlslab/potential.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nlslab/dense.hpp"
#include "nlslab/error.hpp"

namespace nlslab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sech2(double x) {
  const double c = std::cosh(x);
  return std::isinf(c) ? 0.0 : 1.0 / (c * c);
}

void check_tabulated(const Tabulated& t, bool require_even) {
  if (t.x.size() != t.v.size() || t.x.size() < 2) {
    throw Error(ErrorKind::argument, "tabulated potential: x and v must have equal length >= 2");
  }
  if (!require_even) return;
  // Every sample with a mirrored partner in the table must match it.
  const double h = t.x[1] - t.x[0];
  const double scale = std::max(1.0, t.v.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < t.x.size(); ++i) {
    const double target = -t.x[i];
    const double pos = (target - t.x[0]) / h;
    const auto k = static_cast<Eigen::Index>(std::llround(pos));
    if (k < 0 || k >= t.x.size() || std::abs(t.x[k] - target) > 1e-9 * std::max(1.0, std::abs(target))) {
      continue;
    }
    if (std::abs(t.v[i] - t.v[k]) > 1e-10 * scale) {
      throw Error(ErrorKind::argument, "tabulated potential is not even in x");
    }
  }
}

Eigen::MatrixXd neg_laplacian_matrix(const Grid1D& grid, LaplacianScheme scheme) {
  return scheme == LaplacianScheme::spectral ? Eigen::MatrixXd(-spectral_laplacian_matrix(grid))
                                             : Eigen::MatrixXd(-fd_laplacian_matrix(grid));
}

LinearGround lowest_state(const Eigen::MatrixXd& hamiltonian, const Grid1D& grid) {
  const SymmetricEigen eig = lowest_eigenpairs(hamiltonian, 2);
  const double e0 = eig.values[0];
  if (!(e0 < -1e-10)) {
    throw Error(ErrorKind::no_bound_state,
                "-d^2/dx^2 + V has no negative eigenvalue (lowest " + std::to_string(e0) + ")");
  }
  LinearGround lg;
  lg.lambda_star = -e0;
  lg.gap = eig.values[1] - e0;
  lg.psi_star = eig.vectors.col(0);
  if (lg.psi_star.sum() < 0.0) lg.psi_star = -lg.psi_star;
  lg.psi_star /= l2_norm(lg.psi_star, grid);
  const RealVector r = hamiltonian * lg.psi_star + lg.lambda_star * lg.psi_star;
  lg.residual = l2_norm(r, grid);
  return lg;
}

}  // namespace

PotentialSpec::PotentialSpec(Family family, bool require_even) : family_(std::move(family)) {
  std::visit(overloaded{
                 [](const PoschlTeller& pt) {
                   if (!(pt.depth > 0.0)) throw Error(ErrorKind::argument, "poschl_teller: depth must be > 0");
                 },
                 [](const Gaussian& g) {
                   if (!(g.width > 0.0)) throw Error(ErrorKind::argument, "gaussian: width must be > 0");
                 },
                 [&](const Tabulated& t) { check_tabulated(t, require_even); },
             },
             family_);
  even_ = !std::holds_alternative<Tabulated>(family_) || require_even;
}

std::string_view PotentialSpec::family_name() const {
  return std::visit(overloaded{
                        [](const PoschlTeller&) { return std::string_view("poschl_teller"); },
                        [](const Gaussian&) { return std::string_view("gaussian"); },
                        [](const Tabulated&) { return std::string_view("tabulated"); },
                    },
                    family_);
}

double PotentialSpec::operator()(double x) const {
  return std::visit(overloaded{
                        [&](const PoschlTeller& pt) { return -pt.depth * sech2(x); },
                        [&](const Gaussian& g) {
                          const double s = x / g.width;
                          return g.amplitude * std::exp(-s * s);
                        },
                        [](const Tabulated&) -> double {
                          throw Error(ErrorKind::argument, "tabulated potential has no point evaluation");
                        },
                    },
                    family_);
}

std::string PotentialSpec::to_json() const {
  nlohmann::ordered_json j;
  j["family"] = std::string(family_name());
  std::visit(overloaded{
                 [&](const PoschlTeller& pt) { j["depth"] = pt.depth; },
                 [&](const Gaussian& g) {
                   j["amplitude"] = g.amplitude;
                   j["width"] = g.width;
                 },
                 [&](const Tabulated& t) {
                   j["x"] = std::vector<double>(t.x.begin(), t.x.end());
                   j["v"] = std::vector<double>(t.v.begin(), t.v.end());
                 },
             },
             family_);
  return j.dump();
}

PotentialSpec PotentialSpec::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::argument, std::string("potential JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("family")) {
    throw Error(ErrorKind::argument, "potential JSON: missing \"family\"");
  }
  const std::string family = j["family"].get<std::string>();
  try {
    if (family == "poschl_teller") return poschl_teller(j.value("depth", 2.0));
    if (family == "gaussian") return gaussian(j.value("amplitude", -1.0), j.value("width", 1.0));
    if (family == "tabulated") {
      const auto x = j.at("x").get<std::vector<double>>();
      const auto v = j.at("v").get<std::vector<double>>();
      Tabulated t{Eigen::Map<const RealVector>(x.data(), static_cast<Eigen::Index>(x.size())),
                  Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size()))};
      return PotentialSpec(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::argument, std::string("potential JSON: ") + e.what());
  }
  throw Error(ErrorKind::argument, "potential JSON: unknown family \"" + family + "\"");
}

PotentialSpec PotentialSpec::load_csv(const std::filesystem::path& path, bool require_even) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open potential table " + path.string());
  std::vector<double> xs;
  std::vector<double> vs;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    }
    std::istringstream row(line);
    double x = 0.0;
    double v = 0.0;
    if (!(row >> x >> v)) {
      if (first) {
        first = false;
        continue;
      }
      throw Error(ErrorKind::io, "potential table: malformed row \"" + line + "\"");
    }
    first = false;
    xs.push_back(x);
    vs.push_back(v);
  }
  Tabulated t{Eigen::Map<const RealVector>(xs.data(), static_cast<Eigen::Index>(xs.size())),
              Eigen::Map<const RealVector>(vs.data(), static_cast<Eigen::Index>(vs.size()))};
  return PotentialSpec(std::move(t), require_even);
}

RealVector eval_potential(const PotentialSpec& spec, const Grid1D& grid) {
  if (const auto* t = std::get_if<Tabulated>(&spec.family())) {
    if (static_cast<std::size_t>(t->x.size()) != grid.size() ||
        (t->x - grid.nodes()).cwiseAbs().maxCoeff() > 1e-9 * grid.half_width()) {
      throw Error(ErrorKind::dimension, "tabulated potential does not match the grid nodes");
    }
    return t->v;
  }
  RealVector v(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t j = 0; j < grid.size(); ++j) v[static_cast<Eigen::Index>(j)] = spec(grid.node(j));
  if (spec.is_even()) v = even_part(v, grid);
  return v;
}

double boundary_magnitude(const PotentialSpec& spec, const Grid1D& grid) {
  if (std::holds_alternative<Tabulated>(spec.family())) {
    const RealVector v = eval_potential(spec, grid);
    return std::max(std::abs(v[0]), std::abs(v[v.size() - 1]));
  }
  return std::max(std::abs(spec(-grid.half_width())), std::abs(spec(grid.half_width())));
}

void check_decay(const PotentialSpec& spec, const Grid1D& grid, double threshold) {
  const double b = boundary_magnitude(spec, grid);
  if (!(b < threshold)) {
    throw Error(ErrorKind::decay_violation,
                "|V(+-X)| = " + std::to_string(b) + " is not below " + std::to_string(threshold));
  }
}

double estimate_decay_rate(const PotentialSpec& spec, const Grid1D& grid) {
  const RealVector v = eval_potential(spec, grid);
  // Least-squares slope of log|V| against x on [X/4, 3X/4].
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    const double a = std::abs(v[static_cast<Eigen::Index>(j)]);
    if (x < 0.25 * grid.half_width() || x > 0.75 * grid.half_width() || !(a > 1e-300)) continue;
    const double y = std::log(a);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return std::numeric_limits<double>::infinity();
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return -slope;
}

LinearGround linear_ground(const PotentialSpec& spec, const Grid1D& grid, LaplacianScheme scheme) {
  Eigen::MatrixXd h = neg_laplacian_matrix(grid, scheme);
  h.diagonal() += eval_potential(spec, grid);
  return lowest_state(h, grid);
}

LineProblem::LineProblem(PotentialSpec spec, Grid1D grid, LaplacianScheme scheme)
    : spec_(std::move(spec)),
      grid_(std::move(grid)),
      potential_(eval_potential(spec_, grid_)),
      neg_laplacian_(neg_laplacian_matrix(grid_, scheme)) {
  check_decay(spec_, grid_);
  linear_ = lowest_state(schrodinger(0.0), grid_);
}

Eigen::MatrixXd LineProblem::schrodinger(double shift, const RealVector& multiplier) const {
  Eigen::MatrixXd h = neg_laplacian_;
  h.diagonal() += potential_ - multiplier;
  h.diagonal().array() += shift;
  return h;
}

Eigen::MatrixXd LineProblem::schrodinger(double shift) const {
  Eigen::MatrixXd h = neg_laplacian_;
  h.diagonal() += potential_;
  h.diagonal().array() += shift;
  return h;
}

}  // namespace nlslab
