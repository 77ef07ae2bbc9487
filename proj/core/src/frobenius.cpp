#include "aitlab/frobenius.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "aitlab/errors.hpp"
#include "aitlab/linalg.hpp"

namespace aitlab {
namespace {

Symbol q_power(double t) {
  return [t](Complex s) { return std::exp(t * s); };
}

FrobeniusOperator assemble(Matrix P, Matrix F_full, const SpectralWindow& w) {
  FrobeniusOperator F;
  F.two_g = w.dimension();
  F.basis = orthonormal_range(P, F.two_g);
  F.F_window = F.basis.adjoint() * F_full * F.basis;
  F.P = std::move(P);
  F.F_full = std::move(F_full);
  F.ext_f = 1.0;
  F.ext_g = w.q;
  return F;
}

}  // namespace

int SpectralWindow::dimension() const {
  int d = 0;
  for (const auto& b : sigma_Y) d += b.jordan_size;
  return d;
}

SpectralWindow spectral_window(const OperatorSpec& spec, double Y, double q) {
  if (!std::isfinite(q) || q <= 0.0 || q == 1.0) {
    throw InvalidQ("q must lie in (0,1) or (1,inf), got " + std::to_string(q));
  }
  if (!in_parameter_space(spec, Y)) {
    std::ostringstream os;
    os << "Y=" << Y
       << " is not admissible: need Y > 0, at least one eigenvalue with |Im(s)| < Y, "
          "and Y distinct from every |Im(s)|";
    throw InvalidWindow(os.str());
  }
  SpectralWindow w;
  w.Y = Y;
  w.q = q;
  w.t = std::log(q);
  for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
    if (std::abs(spec.blocks[i].s.imag()) < Y) {
      w.sigma_Y.push_back(spec.blocks[i]);
      w.block_indices.push_back(i);
    }
  }
  return w;
}

Matrix orthonormal_range(const Matrix& P, int rank) {
  const Eigen::Index n = P.rows();
  if (rank < 0 || rank > n) throw InvalidArgument("orthonormal_range: bad rank");
  Eigen::ColPivHouseholderQR<Matrix> qr(P);
  Matrix Q = qr.householderQ();
  return Q.leftCols(rank);
}

FrobeniusOperator frobenius_via_contour(const RealizedOperator& op, const SpectralWindow& w,
                                        const Contour& contour, double min_gap) {
  const std::array<Symbol, 2> symbols{[](Complex) { return Complex{1.0, 0.0}; }, q_power(w.t)};
  auto mats = contour_integrate(op, contour, symbols, min_gap);
  const double residual = projection_residual(mats[0], op.matrix);
  FrobeniusOperator F = assemble(std::move(mats[0]), std::move(mats[1]), w);
  F.quadrature_residual = residual;
  F.nodes_used = 4 * contour.nodes_per_side;
  return F;
}

FrobeniusOperator frobenius_via_adaptive_contour(const RealizedOperator& op,
                                                 const SpectralWindow& w,
                                                 const ContourSettings& settings) {
  const std::array<Symbol, 1> symbols{q_power(w.t)};
  auto integral = adaptive_integrate(op, w.Y, symbols, settings);
  FrobeniusOperator F =
      assemble(std::move(integral.matrices[0]), std::move(integral.matrices[1]), w);
  F.quadrature_residual = integral.residual;
  F.nodes_used = 4 * integral.contour.nodes_per_side;
  return F;
}

Matrix jordan_exponential_block(Complex s_i, int m, double t) {
  if (m <= 0) throw InvalidArgument("jordan_exponential_block: m must be >= 1");
  Matrix N = Matrix::Zero(m, m);
  const Complex lead = std::exp(t * s_i);
  double coeff = 1.0;  // t^k / k!
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i + k < m; ++i) N(i, i + k) = coeff * lead;
    coeff *= t / static_cast<double>(k + 1);
  }
  return N;
}

FrobeniusOperator frobenius_via_exponential(const RealizedOperator& op, const SpectralWindow& w) {
  const int n = op.dimension();
  Matrix D = Matrix::Zero(n, n);
  Matrix E = Matrix::Zero(n, n);
  for (std::size_t idx : w.block_indices) {
    const auto& b = op.truth.blocks.at(idx);
    const int offset = op.block_offset(idx);
    D.block(offset, offset, b.jordan_size, b.jordan_size) =
        jordan_exponential_block(b.s, b.jordan_size, w.t);
    E.block(offset, offset, b.jordan_size, b.jordan_size).setIdentity();
  }
  Matrix P = op.basis_change * E * op.basis_change_inverse;
  Matrix F_full = op.basis_change * D * op.basis_change_inverse;
  return assemble(std::move(P), std::move(F_full), w);
}

Report check_frob_axioms(const FrobeniusOperator& F, const SpectralWindow& w, double tol,
                         double eig_tol) {
  Report r;
  r.title = "Frobenius axioms";
  const Eigen::Index n = F.F_full.rows();
  const double scale = std::max(1.0, F.F_full.norm());
  const Matrix complement = Matrix::Identity(n, n) - F.P;

  r.add(make_check("F-vanishes-off-window", (F.F_full * F.P - F.F_full).norm() / scale, tol,
                   "||F P - F|| / max(1, ||F||)"));
  r.add(make_check("FROB-a", (complement * F.F_full * F.P).norm() / scale, tol,
                   "||(I - P) F P|| / max(1, ||F||)"));

  // FROB-b: eigenvalues of F_window against {q^s} with multiplicity. Eigenvalues of a
  // Jordan block of size m scatter like eps^(1/m) around q^s, so each target is compared
  // with the centroid of the computed eigenvalues the optimal pairing assigns to it.
  {
    std::vector<Complex> targets;
    std::vector<int> owner;
    for (std::size_t k = 0; k < w.sigma_Y.size(); ++k) {
      for (int j = 0; j < w.sigma_Y[k].jordan_size; ++j) {
        targets.push_back(std::exp(w.t * w.sigma_Y[k].s));
        owner.push_back(static_cast<int>(k));
      }
    }
    Check c;
    c.name = "FROB-b";
    c.tolerance = eig_tol;
    if (static_cast<Eigen::Index>(targets.size()) != F.F_window.rows()) {
      c.pass = false;
      c.worst_residual = std::numeric_limits<double>::infinity();
      c.note = "window dimension " + std::to_string(F.F_window.rows()) +
               " differs from sum of multiplicities " + std::to_string(targets.size());
    } else if (!targets.empty()) {
      Eigen::ComplexEigenSolver<Matrix> solver(F.F_window, false);
      const Vector computed = solver.eigenvalues();
      const auto m = static_cast<Eigen::Index>(targets.size());
      Eigen::MatrixXd cost(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) cost(i, j) = std::abs(computed(i) - targets[j]);
      }
      const auto assignment = optimal_assignment(cost);
      std::vector<Complex> sum(w.sigma_Y.size(), 0.0);
      std::vector<int> count(w.sigma_Y.size(), 0);
      double worst_pair = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        const int j = assignment[i];
        sum[owner[j]] += computed(i);
        ++count[owner[j]];
        worst_pair = std::max(worst_pair, cost(i, j));
      }
      double worst = 0.0;
      for (std::size_t k = 0; k < w.sigma_Y.size(); ++k) {
        const Complex target = std::exp(w.t * w.sigma_Y[k].s);
        const double d = std::abs(sum[k] / static_cast<double>(count[k]) - target);
        if (d > worst) {
          worst = d;
          c.witness = {target, sum[k] / static_cast<double>(count[k])};
        }
      }
      c.worst_residual = worst;
      c.pass = worst <= eig_tol;
      std::ostringstream os;
      os << "centroid distance per eigenvalue cluster; worst individual pairing " << worst_pair;
      c.note = os.str();
      if (c.pass) c.witness.clear();
    }
    r.add(std::move(c));
  }

  // Zero is an eigenvalue of F on the complement whenever it is nontrivial.
  {
    const Eigen::Index extra = n - F.F_window.rows();
    double worst = 0.0;
    if (extra > 0) {
      Eigen::ComplexEigenSolver<Matrix> solver(F.F_full, false);
      std::vector<double> moduli;
      for (Eigen::Index i = 0; i < n; ++i) moduli.push_back(std::abs(solver.eigenvalues()(i)));
      std::sort(moduli.begin(), moduli.end());
      worst = moduli[static_cast<std::size_t>(extra - 1)] / scale;
    }
    r.add(make_check("FROB-b-full", worst, eig_tol,
                     "largest of the dim(H) - dim(H_m) smallest |eigenvalues| of F_full"));
  }
  return r;
}

PowerIterator::PowerIterator(const Matrix& F, const Vector& x) : F_(&F) {
  const double nrm = x.norm();
  if (nrm > 0.0) {
    state_.direction = x / nrm;
    state_.log_magnitude = std::log(nrm);
  } else {
    state_.direction = Vector::Zero(x.size());
  }
}

void PowerIterator::step() {
  ++n_;
  if (!std::isfinite(state_.log_magnitude)) return;
  Vector y = (*F_) * state_.direction;
  const double nrm = y.norm();
  if (nrm == 0.0) {
    state_.direction.setZero();
    state_.log_magnitude = -std::numeric_limits<double>::infinity();
    return;
  }
  state_.direction = y / nrm;
  state_.log_magnitude += std::log(nrm);
}

PowerResult power_apply(const Matrix& F, const Vector& x, int n) {
  if (n < 0) throw InvalidArgument("power_apply: n must be >= 0");
  if (F.rows() != F.cols() || F.cols() != x.size()) {
    throw InvalidArgument("power_apply: shape mismatch");
  }
  PowerIterator it(F, x);
  for (int k = 0; k < n; ++k) it.step();
  return it.state();
}

PowerResult power_apply(const FrobeniusOperator& F, const Vector& x, int n) {
  return power_apply(F.F_window, x, n);
}

}  // namespace aitlab
