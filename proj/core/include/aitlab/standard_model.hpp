#pragma once

#include <cstdint>
#include <span>

#include "aitlab/frobenius.hpp"
#include "aitlab/report.hpp"
#include "aitlab/types.hpp"

namespace aitlab {

/// The active part of the standard model V_m:
/// (H_m (x) H_m) + C f(x)g + C g(x)f, in the canonical coordinates
/// e_1(x)e_1, e_1(x)e_2, ..., e_2g(x)e_2g, f(x)g, g(x)f.
struct StandardModel {
  int two_g = 0;
  int dim_V = 2;
  Matrix F_window;
  double q = 2.0;
  Complex ext_f{1.0, 0.0};
  Complex ext_g{2.0, 0.0};
  Vector v01;
  Vector v10;
  Vector v_delta;
  Vector h_a;

  int tensor_index(int i, int j) const { return i * two_g + j; }
  int fg_index() const { return two_g * two_g; }
  int gf_index() const { return two_g * two_g + 1; }
};

/// Coordinates scaled by exp(log_scale); used once |Phi^n x| leaves double range.
struct ScaledCoordinates {
  Vector coords;
  double log_scale = 0.0;

  Vector value() const;
};

StandardModel build_standard_model(const FrobeniusOperator& F, const SpectralWindow& w);

/// Iterates x, Phi x, Phi^2 x, ... with Phi = I (x) F, F f = ext_f f, F g = ext_g g.
/// The iterate is carried in extended precision and rounded into `state()` after each step.
class PhiOrbit {
 public:
  PhiOrbit(const StandardModel& model, const Vector& x);
  void step();
  int n() const { return n_; }
  const ScaledCoordinates& state() const { return state_; }

 private:
  const StandardModel* model_;
  MatrixL step_matrix_;  // F^T
  VectorL exact_;
  ScaledCoordinates state_;
  int n_ = 0;
};

/// Phi^n x. Throws InvalidArgument for n < 0.
ScaledCoordinates apply_phi(const StandardModel& model, const Vector& x, int n);

/// <x, y>: conjugate-linear in y, vanishes on f(x)g and g(x)f.
Complex inner_product(const StandardModel& model, const Vector& x, const Vector& y);

/// beta_m(x, y) evaluated from the basis table
/// beta(v01,v10) = 1, beta(v01,v01) = beta(v10,v10) = 0, beta = -<.,.> on the tensor block.
Complex beta_form(const StandardModel& model, const Vector& x, const Vector& y);

/// Gram matrix of beta in canonical coordinates: beta(x,y) = x^T B conj(y).
Matrix beta_gram(const StandardModel& model);

/// True when the max of `ratios` (indexed n = 0..n_max) stays within `margin` times the
/// max over n <= n_max/4. A quadratic n^2 law already gives a factor 16 over that span.
bool looks_bounded(std::span<const double> ratios, double margin = 4.0);

Report verify_AIT1(const StandardModel& model, int n_max);
Report verify_AIT2_hodge(const StandardModel& model, int sample_count, std::uint64_t seed);
Report verify_AIT3_trace(const StandardModel& model, int n_max);
Report verify_IP(const StandardModel& model, int n_max, std::uint64_t seed = 1);

/// Castelnuovo-Severi inequality beta(x,x) <= 2 beta(x,v01) beta(x,v10) for real x.
Check check_castelnuovo_severi(const StandardModel& model, const Vector& x);
/// |<x,y>| <= sqrt(<x,x><y,y>), with <x,y> = 0 required when <x,x> = 0.
Check check_cauchy_schwarz(const StandardModel& model, const Vector& x, const Vector& y);

/// Seeded sweeps over random real x (and pairs including null directions).
Report castelnuovo_severi_sweep(const StandardModel& model, int count, std::uint64_t seed);
Report cauchy_schwarz_sweep(const StandardModel& model, int count, std::uint64_t seed);

/// Positive semidefiniteness of <.,.>, Hermitian beta and the compatibility identity
/// <x,y> = beta(x,v01) beta(v10,y) + beta(x,v10) beta(v01,y) - beta(x,y) on random pairs.
Report verify_forms(const StandardModel& model, int count, std::uint64_t seed);

/// tr|H0 - tr|H1 + tr|H2 = beta(Phi^n v_delta, v_delta) together with the two product
/// identities for the H0 and H2 traces.
Report lefschetz_decomposition(const StandardModel& model, int n);

}  // namespace aitlab
