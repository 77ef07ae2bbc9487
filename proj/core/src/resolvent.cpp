#include "aitlab/resolvent.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "aitlab/errors.hpp"
#include "aitlab/linalg.hpp"

namespace aitlab {
namespace {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

template <unsigned Order>
Rule make_rule() {
  using G = boost::math::quadrature::gauss<double, Order>;
  const auto& a = G::abscissa();
  const auto& wt = G::weights();
  Rule r;
  // Boost stores the non-negative half; mirror it into ascending order.
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] == 0.0) continue;
    r.x.push_back(-a[k]);
    r.w.push_back(wt[k]);
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    r.x.push_back(a[k]);
    r.w.push_back(wt[k]);
  }
  return r;
}

const Rule& rule_for(int order) {
  static const Rule r8 = make_rule<8>();
  static const Rule r16 = make_rule<16>();
  return order == 16 ? r16 : r8;
}

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  double t = len2 > 0.0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

std::array<Complex, 4> corners(const Contour& c) {
  return {Complex{c.re_min, c.im_min()}, Complex{c.re_max, c.im_min()},
          Complex{c.re_max, c.im_max()}, Complex{c.re_min, c.im_max()}};
}

double spectrum_distance(const OperatorSpec& spec, Complex s) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& b : spec.blocks) d = std::min(d, std::abs(s - b.s));
  return d;
}

double relative_delta(const Matrix& now, const Matrix& before) {
  return (now - before).norm() / std::max(1.0, now.norm());
}

}  // namespace

std::vector<ContourNode> contour_nodes(const Contour& contour) {
  const int per_side = contour.nodes_per_side;
  if (per_side < 8 || per_side % 8 != 0) {
    throw InvalidArgument("nodes_per_side must be a multiple of 8 and >= 8, got " +
                          std::to_string(per_side));
  }
  if (!(contour.Y > 0.0) || !(contour.re_max > contour.re_min)) {
    throw InvalidArgument("degenerate contour rectangle");
  }
  const int order = per_side % 16 == 0 ? 16 : 8;
  const int panels = per_side / order;
  const Rule& rule = rule_for(order);
  const auto c = corners(contour);

  std::vector<ContourNode> nodes;
  nodes.reserve(static_cast<std::size_t>(4 * per_side));
  for (int side = 0; side < 4; ++side) {
    const Complex z0 = c[side];
    const Complex z1 = c[(side + 1) % 4];
    const Complex step = (z1 - z0) / static_cast<double>(panels);
    for (int p = 0; p < panels; ++p) {
      const Complex mid = z0 + (p + 0.5) * step;
      const Complex half = 0.5 * step;
      for (std::size_t k = 0; k < rule.x.size(); ++k) {
        nodes.push_back({mid + half * rule.x[k], half * rule.w[k]});
      }
    }
  }
  return nodes;
}

double boundary_gap(const Contour& contour, const OperatorSpec& spec) {
  const auto c = corners(contour);
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& b : spec.blocks) {
    for (int side = 0; side < 4; ++side) {
      gap = std::min(gap, segment_distance(b.s, c[side], c[(side + 1) % 4]));
    }
  }
  return gap;
}

Contour make_contour(const RealizedOperator& op, double Y, const ContourSettings& settings) {
  if (!(Y > 0.0)) throw InvalidArgument("contour height Y must be positive");
  Contour contour;
  contour.Y = Y;
  contour.nodes_per_side = settings.nodes_per_side;
  const double gap = boundary_gap(contour, op.truth);
  if (gap < settings.min_gap) {
    throw NearSingular("contour boundary at Y=" + std::to_string(Y) +
                           " passes within " + std::to_string(gap) +
                           " of the spectrum (min_gap " + std::to_string(settings.min_gap) + ")",
                       gap);
  }
  return contour;
}

Matrix resolvent(const RealizedOperator& op, Complex s, double min_gap) {
  const double d = spectrum_distance(op.truth, s);
  if (d < min_gap) {
    throw NearSingular("resolvent point within " + std::to_string(d) + " of an eigenvalue", d);
  }
  const int n = op.dimension();
  const Matrix shifted = s * Matrix::Identity(n, n) - op.matrix;
  const Matrix X = shifted.partialPivLu().solve(Matrix::Identity(n, n));
  const double residual = (shifted * X - Matrix::Identity(n, n)).norm();
  if (residual > 1e-10 * X.norm()) {
    throw NearSingular("resolvent solve residual " + std::to_string(residual) + " too large", d);
  }
  return X;
}

Matrix jordan_resolvent_closed_form(Complex s_i, int m, Complex s) {
  if (m < 1) throw InvalidArgument("Jordan block size must be >= 1");
  const Complex gap = s - s_i;
  if (gap == Complex{0.0, 0.0}) throw Singular("resolvent of a Jordan block at its eigenvalue");
  Matrix R = Matrix::Zero(m, m);
  Complex power = 1.0 / gap;
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i + k < m; ++i) R(i, i + k) = power;
    power /= gap;
  }
  return R;
}

std::vector<Matrix> contour_integrate(const RealizedOperator& op, const Contour& contour,
                                      std::span<const Symbol> symbols, double min_gap) {
  const int n = op.dimension();
  const auto nodes = contour_nodes(contour);
  for (const auto& node : nodes) {
    const double d = spectrum_distance(op.truth, node.s);
    if (d < min_gap) {
      throw NearSingular("quadrature node within " + std::to_string(d) + " of the spectrum", d);
    }
  }
  std::vector<Matrix> acc(symbols.size(), Matrix::Zero(n, n));
  const Matrix identity = Matrix::Identity(n, n);
  // Fixed node order keeps the sums bitwise reproducible.
  for (const auto& node : nodes) {
    const Matrix X = (node.s * identity - op.matrix).partialPivLu().solve(identity);
    for (std::size_t k = 0; k < symbols.size(); ++k) {
      acc[k] += (node.weight * symbols[k](node.s)) * X;
    }
  }
  const Complex scale = 1.0 / Complex{0.0, 2.0 * std::numbers::pi};
  for (auto& m : acc) m *= scale;
  return acc;
}

double projection_residual(const Matrix& P, const Matrix& A) {
  const double idempotency = (P * P - P).norm();
  const double commutation = (P * A - A * P).norm() / std::max(A.norm(), 1e-300);
  return std::max(idempotency, commutation);
}

QuadratureResult riesz_projection(const RealizedOperator& op, const Contour& contour,
                                  const ContourSettings& settings) {
  const std::array<Symbol, 1> one{[](Complex) { return Complex{1.0, 0.0}; }};
  QuadratureResult result;
  result.matrix = std::move(contour_integrate(op, contour, one, settings.min_gap).front());
  result.residual = projection_residual(result.matrix, op.matrix);
  result.nodes_used = 4 * contour.nodes_per_side;
  if (result.residual > settings.tol && contour.nodes_per_side >= settings.node_cap) {
    throw NoConvergence("Riesz projection residual " + std::to_string(result.residual) +
                            " above tol at the node cap",
                        result.residual, contour.nodes_per_side);
  }
  return result;
}

AdaptiveIntegral adaptive_integrate(const RealizedOperator& op, double Y,
                                    std::span<const Symbol> symbols,
                                    const ContourSettings& settings) {
  Contour contour = make_contour(op, Y, settings);
  std::vector<Symbol> all;
  all.reserve(symbols.size() + 1);
  all.emplace_back([](Complex) { return Complex{1.0, 0.0}; });
  all.insert(all.end(), symbols.begin(), symbols.end());

  std::vector<Matrix> previous;
  double best = std::numeric_limits<double>::infinity();
  int best_nodes = contour.nodes_per_side;
  for (int per_side = settings.nodes_per_side; per_side <= settings.node_cap; per_side *= 2) {
    contour.nodes_per_side = per_side;
    auto current = contour_integrate(op, contour, all, settings.min_gap);
    double residual = projection_residual(current.front(), op.matrix);
    if (previous.empty()) {
      residual = std::max(residual, 1.0);  // no refinement delta yet
    } else {
      for (std::size_t k = 0; k < current.size(); ++k) {
        residual = std::max(residual, relative_delta(current[k], previous[k]));
      }
    }
    if (residual < best) {
      best = residual;
      best_nodes = per_side;
    }
    if (residual <= settings.tol) {
      return {contour, std::move(current), residual};
    }
    previous = std::move(current);
  }
  throw NoConvergence("contour quadrature did not reach tol " + std::to_string(settings.tol) +
                          " by " + std::to_string(settings.node_cap) +
                          " nodes per side (best residual " + std::to_string(best) + ")",
                      best, best_nodes);
}

Contour adaptive_contour(const RealizedOperator& op, double Y, const ContourSettings& settings) {
  return adaptive_integrate(op, Y, {}, settings).contour;
}

Matrix functional_calculus(const RealizedOperator& op, const Symbol& phi, const Contour& contour,
                           double min_gap) {
  const std::array<Symbol, 1> one{phi};
  return std::move(contour_integrate(op, contour, one, min_gap).front());
}

int riesz_index(const RealizedOperator& op, Complex s_i, const Matrix& P_i) {
  const int n = op.dimension();
  if (P_i.rows() != n || P_i.cols() != n) throw InvalidArgument("projection has wrong shape");
  const double p_norm = std::max(1.0, P_i.norm());
  const double idempotency = (P_i * P_i - P_i).norm();
  if (idempotency > 1e-8 * p_norm * p_norm) {
    throw InvalidProjection("matrix is not a projection (||P^2 - P|| = " +
                                std::to_string(idempotency) + ")",
                            idempotency);
  }
  Eigen::JacobiSVD<Matrix> svd(op.matrix);
  const double a_norm = std::max(1.0, svd.singularValues()(0));
  const Matrix shifted = s_i * Matrix::Identity(n, n) - op.matrix;
  Matrix power = P_i;
  double scale = 1.0;
  for (int k = 1; k <= n; ++k) {
    power = shifted * power;
    scale *= a_norm;
    if (numerical_rank(power, 1e-8 * scale * p_norm) == 0) return k;
  }
  throw InvalidProjection("(s_i I - A)^k P never vanishes; P is not the Riesz projection of s_i",
                          idempotency);
}

}  // namespace aitlab
