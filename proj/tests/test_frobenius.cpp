#include <gtest/gtest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "aitlab/errors.hpp"
#include "aitlab/frobenius.hpp"
#include "aitlab/linalg.hpp"

using namespace aitlab;

namespace {

const Complex I{0.0, 1.0};

// q^s through the polar form, independent of std::exp(t * s).
Complex complex_power(double q, Complex s) {
  const double mod = std::pow(q, s.real());
  const double arg = s.imag() * std::log(q);
  return {mod * std::cos(arg), mod * std::sin(arg)};
}

}  // namespace

TEST(SpectralWindow, SelectsEigenvaluesBelowY) {
  const OperatorSpec spec{{{0.5 + 1.0 * I, 1}, {0.5 - 1.0 * I, 1}, {0.5 + 3.0 * I, 1}}, 0, 1e3};
  const auto w = spectral_window(spec, 2.0, 2.0);
  ASSERT_EQ(w.sigma_Y.size(), 2u);
  EXPECT_EQ(w.sigma_Y[0].s, 0.5 + 1.0 * I);
  EXPECT_EQ(w.sigma_Y[1].s, 0.5 - 1.0 * I);
  EXPECT_NEAR(w.t, 0.693147, 1e-6);
  EXPECT_EQ(w.dimension(), 2);
}

TEST(SpectralWindow, Errors) {
  const OperatorSpec spec{{{0.5 + 1.0 * I, 1}}, 0, 1e3};
  EXPECT_THROW(spectral_window(spec, 0.5, 2.0), InvalidWindow);
  EXPECT_THROW(spectral_window(spec, 1.0, 2.0), InvalidWindow);
  EXPECT_THROW(spectral_window(spec, 2.0, 1.0), InvalidQ);
  EXPECT_THROW(spectral_window(spec, 2.0, 0.0), InvalidQ);
  EXPECT_THROW(spectral_window(spec, 2.0, -3.0), InvalidQ);
}

TEST(JordanExponentialBlock, Examples) {
  const double t = std::log(4.0);
  EXPECT_NEAR(std::abs(jordan_exponential_block(0.5, 1, t)(0, 0) - 2.0), 0.0, 1e-14);
  const Matrix N2 = jordan_exponential_block(0.5, 2, t);
  EXPECT_NEAR(std::abs(N2(0, 0) - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(N2(0, 1) - 2.77259), 0.0, 1e-5);
  EXPECT_EQ(N2(1, 0), Complex{});
  Matrix expected(3, 3);
  expected << 1.0, 1.0, 0.5, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0;
  EXPECT_LT((jordan_exponential_block(0.0, 3, 1.0) - expected).norm(), 1e-15);
  EXPECT_THROW(jordan_exponential_block(0.5, 0, 1.0), InvalidArgument);
}

TEST(JordanExponentialBlock, MatchesMatrixExponential) {
  for (int m = 1; m <= 5; ++m) {
    for (Complex s : {Complex{0.5, 1.0}, Complex{0.3, -2.0}}) {
      for (double t : {std::log(2.0), std::log(0.5), 1.7}) {
        Matrix M = s * Matrix::Identity(m, m);
        for (int k = 0; k + 1 < m; ++k) M(k, k + 1) = 1.0;
        const Matrix oracle = (t * M).exp();
        const Matrix N = jordan_exponential_block(s, m, t);
        EXPECT_LT((N - oracle).norm(), 1e-12 * oracle.norm()) << "m=" << m;
      }
    }
  }
}

TEST(FrobeniusContour, ScalarOracle) {
  const OperatorSpec spec{{{0.5, 1}}, 0, 1e3};
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 1.0, 4.0);
  const auto F = frobenius_via_adaptive_contour(op, w);
  EXPECT_NEAR(std::abs(F.F_full(0, 0) - 2.0), 0.0, 1e-8);
}

TEST(FrobeniusContour, DiagonalOracle) {
  const OperatorSpec spec{{{0.5 + 1.0 * I, 1}, {0.5 + 5.0 * I, 1}}, 0, 1e3};
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 2.0, 2.0);
  const auto F = frobenius_via_adaptive_contour(op, w);
  const Complex expected = complex_power(2.0, 0.5 + 1.0 * I);
  EXPECT_NEAR(expected.real(), 1.08787, 1e-5);
  EXPECT_NEAR(expected.imag(), 0.90363, 1e-5);
  EXPECT_NEAR(std::abs(F.F_full(0, 0) - expected), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(F.F_full(1, 1)), 0.0, 1e-8);
  EXPECT_EQ(F.two_g, 1);
  EXPECT_EQ(F.ext_f, Complex(1.0));
  EXPECT_EQ(F.ext_g, Complex(2.0));
}

TEST(FrobeniusContour, JordanBlockWithUnitT) {
  const OperatorSpec spec{{{0.5, 2}}, 0, 1e3};
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 1.0, std::exp(1.0));
  const auto F = frobenius_via_adaptive_contour(op, w);
  const double e = std::exp(0.5);
  Matrix expected(2, 2);
  expected << e, e, 0.0, e;
  EXPECT_LT((F.F_full - expected).norm(), 1e-8);
}

TEST(FrobeniusExponential, ScalarAndJordan) {
  {
    const OperatorSpec spec{{{0.5 + 1.0 * I, 1}}, 0, 1e3};
    const auto F = frobenius_via_exponential(build_jordan_operator(spec), spectral_window(spec, 2.0, 2.0));
    EXPECT_NEAR(std::abs(F.F_full(0, 0) - complex_power(2.0, 0.5 + 1.0 * I)), 0.0, 1e-14);
  }
  {
    const OperatorSpec spec{{{0.5 + 1.0 * I, 2}}, 0, 1e3};
    const auto F = frobenius_via_exponential(build_jordan_operator(spec), spectral_window(spec, 2.0, 2.0));
    const Complex lead = complex_power(2.0, 0.5 + 1.0 * I);
    EXPECT_NEAR(std::abs(F.F_full(0, 0) - lead), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(F.F_full(0, 1) - std::log(2.0) * lead), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(F.F_full(1, 1) - lead), 0.0, 1e-14);
  }
}

TEST(FrobeniusExponential, ConjugatedMatchesContour) {
  const OperatorSpec spec{{{0.5 + 1.0 * I, 2}, {0.5 - 0.7 * I, 1}, {0.5 + 4.0 * I, 1}}, 7, 1e3};
  const auto op = build_jordan_operator(spec);
  for (double q : {2.0, 0.5}) {
    const auto w = spectral_window(spec, 2.0, q);
    const auto closed = frobenius_via_exponential(op, w);
    const auto contour = frobenius_via_adaptive_contour(op, w);
    EXPECT_LT((closed.F_full - contour.F_full).norm(), 1e-8 * closed.F_full.norm());
    EXPECT_LT((closed.P - contour.P).norm(), 1e-8 * closed.P.norm());
    EXPECT_EQ(closed.two_g, 3);
  }
}

TEST(FrobeniusContour, ExplicitContourMatchesFunctionalCalculus) {
  const OperatorSpec spec{{{0.5 + 1.0 * I, 1}, {0.5 + 3.0 * I, 1}}, 3, 1e3};
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 2.0, 2.0);
  const Contour c = adaptive_contour(op, 2.0);
  const auto F = frobenius_via_contour(op, w, c);
  const double t = w.t;
  const Matrix phi = functional_calculus(op, [t](Complex s) { return std::exp(t * s); }, c);
  EXPECT_LT((F.F_full - phi).norm(), 1e-14 * phi.norm());
}

TEST(CheckFrobAxioms, ClosedFormPasses) {
  const OperatorSpec spec{{{0.5 + 1.0 * I, 1}, {0.5 + 5.0 * I, 1}}, 0, 1e3};
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 2.0, 2.0);
  const auto r = check_frob_axioms(frobenius_via_exponential(op, w), w);
  EXPECT_TRUE(r.all_pass());
  for (const char* n : {"F-vanishes-off-window", "FROB-a", "FROB-b", "FROB-b-full"}) {
    EXPECT_TRUE(r.has(n)) << n;
  }
}

TEST(CheckFrobAxioms, PlantedOffBlockEntryFailsFrobA) {
  const OperatorSpec spec{{{0.5 + 1.0 * I, 1}, {0.5 + 5.0 * I, 1}}, 0, 1e3};
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 2.0, 2.0);
  auto F = frobenius_via_exponential(op, w);
  F.F_full(1, 0) = 0.1;
  const auto r = check_frob_axioms(F, w);
  EXPECT_FALSE(r.at("FROB-a").pass);
}

TEST(CheckFrobAxioms, CoarseContourFailsThenRefinementPasses) {
  const OperatorSpec spec{{{0.5 + 1.0 * I, 2}, {0.5 + 1.05 * I, 1}, {0.5 + 1.2 * I, 1}}, 5, 1e3};
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 1.1, 2.0);
  Contour coarse;
  coarse.Y = 1.1;
  coarse.nodes_per_side = 8;
  const auto rough = check_frob_axioms(frobenius_via_contour(op, w, coarse), w);
  EXPECT_FALSE(rough.all_pass());
  const auto fine = check_frob_axioms(frobenius_via_adaptive_contour(op, w), w);
  EXPECT_TRUE(fine.all_pass());
}

TEST(CheckFrobAxioms, DefectiveEigenvaluesMatchAsMultiset) {
  const OperatorSpec spec{{{0.5 + 1.0 * I, 4}, {0.5 - 2.0 * I, 3}}, 17, 1e3};
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 3.0, 2.0);
  const auto r = check_frob_axioms(frobenius_via_exponential(op, w), w);
  EXPECT_TRUE(r.at("FROB-b").pass) << r.at("FROB-b").note;
}

TEST(CheckFrobAxioms, WrongSpectrumFailsFrobB) {
  const OperatorSpec spec{{{0.5 + 1.0 * I, 1}, {0.5 + 5.0 * I, 1}}, 0, 1e3};
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 2.0, 2.0);
  auto F = frobenius_via_exponential(op, w);
  F.F_window *= 1.01;
  EXPECT_FALSE(check_frob_axioms(F, w).at("FROB-b").pass);
}

TEST(WindowTrace, PowerSumsOfClosedForm) {
  const OperatorSpec spec{{{0.5 + 1.0 * I, 3}, {0.5 - 0.5 * I, 1}, {0.5 + 4.0 * I, 1}}, 23, 1e3};
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 2.0, 2.0);
  const auto F = frobenius_via_exponential(op, w);
  Matrix power = Matrix::Identity(F.two_g, F.two_g);
  for (int n = 1; n <= 30; ++n) {
    power = power * F.F_window;
    const Complex expected = 3.0 * complex_power(2.0, double(n) * (0.5 + 1.0 * I)) +
                             complex_power(2.0, double(n) * (0.5 - 0.5 * I));
    EXPECT_LT(std::abs(power.trace() - expected), 1e-9 * std::abs(expected)) << "n=" << n;
  }
}

TEST(PowerApply, ScalarGrowth) {
  Matrix F(1, 1);
  F << 2.0;
  Vector x(1);
  x << 1.0;
  const auto r = power_apply(F, x, 10);
  EXPECT_NEAR(r.log_magnitude, 6.93147, 1e-5);
  EXPECT_NEAR(r.log_magnitude, 10.0 * std::log(2.0), 1e-13);
}

TEST(PowerApply, ZeroPowerNormalizes) {
  SeededRng rng(2);
  Matrix F = Matrix::Random(3, 3);
  Vector x(3);
  x << 3.0, 4.0, 0.0;
  const auto r = power_apply(F, x, 0);
  EXPECT_NEAR(r.log_magnitude, std::log(5.0), 1e-15);
  EXPECT_LT((r.direction - x / 5.0).norm(), 1e-15);
}

TEST(PowerApply, ZeroVectorMarker) {
  const Matrix F = Matrix::Identity(2, 2);
  const auto r = power_apply(F, Vector::Zero(2), 5);
  EXPECT_TRUE(std::isinf(r.log_magnitude));
  EXPECT_LT(r.log_magnitude, 0.0);
}

TEST(PowerApply, JordanGrowthLaw) {
  const double t = std::log(2.0);
  const Matrix N = jordan_exponential_block(0.5 + 1.0 * I, 2, t);
  const Vector e2 = Vector::Unit(2, 1);
  for (int n : {100, 1000, 4000}) {
    const auto r = power_apply(N, e2, n);
    // F^n e2 = q^{n s} (n t, 1): log norm = n/2 ln 2 + ln sqrt((n t)^2 + 1).
    const double exact = 0.5 * n * t + 0.5 * std::log((n * t) * (n * t) + 1.0);
    EXPECT_NEAR(r.log_magnitude, exact, 1e-9 * exact);
    EXPECT_NEAR(r.log_magnitude - 0.5 * n * t - std::log(n * t), 0.0, 1.0 / (n * t * n * t));
  }
}

TEST(PowerApply, AgreesWithDirectPowers) {
  const OperatorSpec spec{{{0.5 + 1.0 * I, 2}, {0.5 + 2.0 * I, 1}, {0.3 + 3.0 * I, 1}, {0.7 + 3.0 * I, 1}}, 4, 1e3};
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 4.0, 2.0);
  const auto F = frobenius_via_exponential(op, w);
  SeededRng rng(8);
  Vector x(F.two_g);
  for (int i = 0; i < F.two_g; ++i) x(i) = rng.complex_uniform();
  for (int n = 0; n <= 40; ++n) {
    const Vector direct = matrix_power(F.F_window, n) * x;
    const auto r = power_apply(F, x, n);
    EXPECT_NEAR(r.log_magnitude, std::log(direct.norm()), 1e-10 * std::max(1.0, std::log(direct.norm())));
    EXPECT_LT((r.direction * std::exp(r.log_magnitude) - direct).norm(), 1e-10 * direct.norm());
  }
}

TEST(OrthonormalRange, SpansProjectionImage) {
  const OperatorSpec spec{{{0.5 + 1.0 * I, 2}, {0.5 + 3.0 * I, 1}}, 6, 1e3};
  const auto op = build_jordan_operator(spec);
  const Matrix P = spectral_projection_exact(op, 0);
  const Matrix B = orthonormal_range(P, 2);
  EXPECT_LT((B.adjoint() * B - Matrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LT((P * B - B).norm(), 1e-10);
}
