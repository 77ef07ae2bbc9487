#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "aitlab/operator_lab.hpp"
#include "aitlab/report.hpp"
#include "aitlab/resolvent.hpp"
#include "aitlab/types.hpp"

namespace aitlab {

/// A choice of Y with the eigenvalues it captures and q(Y), t(Y) = log q(Y).
struct SpectralWindow {
  double Y = 0.0;
  std::vector<EigenvalueSpec> sigma_Y;
  std::vector<std::size_t> block_indices;  // positions of sigma_Y inside the spec
  double q = 2.0;
  double t = 0.0;

  /// dim of the spectral subspace (sum of Jordan sizes inside the window).
  int dimension() const;
};

/// F_{A,m}(Y) on H together with its restriction to the spectral subspace.
struct FrobeniusOperator {
  Matrix P;         // Riesz projection onto the window
  Matrix basis;     // orthonormal columns spanning Image(P)
  Matrix F_full;    // on H
  Matrix F_window;  // basis^H F_full basis
  Complex ext_f{1.0, 0.0};  // action on H^0
  Complex ext_g{1.0, 0.0};  // action on H^2 (q)
  int two_g = 0;
  double quadrature_residual = 0.0;  // 0 for the closed-form path
  int nodes_used = 0;
};

SpectralWindow spectral_window(const OperatorSpec& spec, double Y, double q);

/// Quadrature path: integrates q^s (sI - A)^{-1} on the given contour.
FrobeniusOperator frobenius_via_contour(const RealizedOperator& op, const SpectralWindow& w,
                                        const Contour& contour, double min_gap = 1e-3);

/// Quadrature path with adaptive node doubling on both P and F.
FrobeniusOperator frobenius_via_adaptive_contour(const RealizedOperator& op,
                                                 const SpectralWindow& w,
                                                 const ContourSettings& settings = {});

/// Closed-form path: W diag(N(s_i) for s_i in the window, 0 elsewhere) W^{-1}.
FrobeniusOperator frobenius_via_exponential(const RealizedOperator& op, const SpectralWindow& w);

/// N(s_i): upper-triangular Toeplitz with t^k e^{t s_i} / k! on the k-th superdiagonal.
Matrix jordan_exponential_block(Complex s_i, int m, double t);

/// Orthonormal basis of the column space of P (column-pivoted Householder QR).
Matrix orthonormal_range(const Matrix& P, int rank);

/// F-vanishes-off-window, FROB-a, FROB-b (window) and FROB-b-full checks.
Report check_frob_axioms(const FrobeniusOperator& F, const SpectralWindow& w, double tol = 1e-8,
                         double eig_tol = 1e-6);

struct PowerResult {
  Vector direction;
  double log_magnitude = -std::numeric_limits<double>::infinity();
};

/// Steps x -> F x with renormalization, tracking log ||F^n x||.
class PowerIterator {
 public:
  PowerIterator(const Matrix& F, const Vector& x);
  void step();
  int n() const { return n_; }
  const PowerResult& state() const { return state_; }

 private:
  const Matrix* F_;
  PowerResult state_;
  int n_ = 0;
};

PowerResult power_apply(const Matrix& F, const Vector& x, int n);

/// Works in window coordinates (F_window).
PowerResult power_apply(const FrobeniusOperator& F, const Vector& x, int n);

}  // namespace aitlab
