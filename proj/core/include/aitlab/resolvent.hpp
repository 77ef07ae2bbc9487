#pragma once

#include <functional>
#include <span>
#include <vector>

#include "aitlab/operator_lab.hpp"
#include "aitlab/types.hpp"

namespace aitlab {

/// Tunables shared by the contour routines. Key names match the CLI/config keys.
struct ContourSettings {
  int nodes_per_side = 8;
  double tol = 1e-8;
  double min_gap = 1e-3;
  int node_cap = 4096;
};

/// Counterclockwise boundary of {re_min < Re s < re_max, |Im s| < Y}.
struct Contour {
  double re_min = 0.0;
  double re_max = 1.0;
  double Y = 1.0;
  int nodes_per_side = 8;

  double im_min() const { return -Y; }
  double im_max() const { return Y; }
};

/// Quadrature node s_k with weight w_k such that sum_k w_k f(s_k) ~ oint f(s) ds.
struct ContourNode {
  Complex s;
  Complex weight;
};

struct QuadratureResult {
  Matrix matrix;
  double residual = 0.0;
  int nodes_used = 0;
};

using Symbol = std::function<Complex(Complex)>;

/// Composite Gauss-Legendre nodes, sides ordered bottom, right, top, left.
std::vector<ContourNode> contour_nodes(const Contour& contour);

/// Distance from the rectangle boundary to the nearest eigenvalue of `spec`.
double boundary_gap(const Contour& contour, const OperatorSpec& spec);

/// Contour for window Y; throws NearSingular when the boundary is within min_gap of sigma(A).
Contour make_contour(const RealizedOperator& op, double Y, const ContourSettings& settings = {});

/// (sI - A)^{-1}. Throws NearSingular within `min_gap` of an eigenvalue.
Matrix resolvent(const RealizedOperator& op, Complex s, double min_gap = 1e-3);

/// Closed-form (sI - M(s_i))^{-1} for an m x m Jordan block.
Matrix jordan_resolvent_closed_form(Complex s_i, int m, Complex s);

/// (1/2 pi i) oint phi_k(s) (sI - A)^{-1} ds for every symbol, sharing one set of resolvents.
std::vector<Matrix> contour_integrate(const RealizedOperator& op, const Contour& contour,
                                      std::span<const Symbol> symbols, double min_gap = 1e-3);

/// Idempotency and commutation residuals of P, the larger of the two.
double projection_residual(const Matrix& P, const Matrix& A);

QuadratureResult riesz_projection(const RealizedOperator& op, const Contour& contour,
                                  const ContourSettings& settings = {});

/// Doubles nodes_per_side from settings.nodes_per_side until the projection residual
/// (idempotency, commutation, refinement delta) is <= tol. Throws NoConvergence at node_cap.
Contour adaptive_contour(const RealizedOperator& op, double Y, const ContourSettings& settings = {});

/// Adaptive integration of several symbols at once. The first returned matrix is the
/// Riesz projection; convergence also requires the refinement delta of each symbol.
struct AdaptiveIntegral {
  Contour contour;
  std::vector<Matrix> matrices;  // [0] = P, then one per symbol
  double residual = 0.0;
};
AdaptiveIntegral adaptive_integrate(const RealizedOperator& op, double Y,
                                    std::span<const Symbol> symbols,
                                    const ContourSettings& settings = {});

Matrix functional_calculus(const RealizedOperator& op, const Symbol& phi, const Contour& contour,
                           double min_gap = 1e-3);

/// Smallest k with (s_i I - A)^k P_i numerically zero.
int riesz_index(const RealizedOperator& op, Complex s_i, const Matrix& P_i);

}  // namespace aitlab
