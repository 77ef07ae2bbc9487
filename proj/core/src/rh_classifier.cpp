#include "aitlab/rh_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "aitlab/errors.hpp"

namespace aitlab {
namespace {

double log_sum_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::RhAndSemisimple:
      return "rh_and_semisimple";
    case Verdict::RhViolated:
      return "rh_violated";
    case Verdict::NotSemisimple:
      return "not_semisimple";
  }
  return "unknown";
}

std::vector<Complex> trace_power_sums(const SpectralWindow& w, int n_max) {
  if (n_max < 1) throw InvalidArgument("trace_power_sums: n_max must be >= 1");
  std::vector<Complex> sums(static_cast<std::size_t>(n_max), Complex{});
  for (const auto& b : w.sigma_Y) {
    for (int n = 1; n <= n_max; ++n) {
      // q^{n s} evaluated directly, not by repeated multiplication.
      sums[n - 1] += static_cast<double>(b.jordan_size) * std::exp(w.t * static_cast<double>(n) * b.s);
    }
  }
  return sums;
}

PowerWitnesses dominant_power_witnesses(std::vector<Complex> lambdas, int n_max) {
  if (lambdas.empty()) throw InvalidArgument("dominant_power_witnesses: empty eigenvalue list");
  if (n_max < 1) throw InvalidArgument("dominant_power_witnesses: n_max must be >= 1");
  std::stable_sort(lambdas.begin(), lambdas.end(),
                   [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
  PowerWitnesses out;
  out.lambda_1 = lambdas.front();
  const double r1 = std::abs(out.lambda_1);
  if (r1 == 0.0) {
    for (int n = 1; n <= n_max; ++n) out.witnesses.push_back(n);
    out.density = 1.0;
    return out;
  }
  // Compare |sum (lambda_i / lambda_1)^n| against 1, which stays in range for large n.
  std::vector<Complex> ratios;
  for (Complex l : lambdas) ratios.push_back(l / r1);
  std::vector<Complex> powers(ratios.size(), Complex{1.0, 0.0});
  for (int n = 1; n <= n_max; ++n) {
    Complex sum{};
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      powers[i] *= ratios[i];
      sum += powers[i];
    }
    if (1.0 <= std::abs(sum) + 1e-12) out.witnesses.push_back(n);
  }
  out.density = static_cast<double>(out.witnesses.size()) / n_max;
  return out;
}

GrowthSequence growth_sequence(const StandardModel& model, int n_max) {
  if (n_max < 1) throw InvalidArgument("growth_sequence: n_max must be >= 1");
  GrowthSequence seq;
  seq.log_q = std::log(model.q);
  const int dim = model.two_g;
  std::vector<PowerIterator> orbits;
  orbits.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) orbits.emplace_back(model.F_window, Vector::Unit(dim, i));
  for (int n = 1; n <= n_max; ++n) {
    double log_g = -std::numeric_limits<double>::infinity();
    for (auto& orbit : orbits) {
      orbit.step();
      log_g = log_sum_exp(log_g, 2.0 * orbit.state().log_magnitude);
    }
    seq.n_values.push_back(n);
    seq.log_g.push_back(log_g);
  }
  return seq;
}

GrowthFit fit_growth(const GrowthSequence& seq) {
  if (seq.n_values.empty() || seq.n_values.size() != seq.log_g.size()) {
    throw InvalidArgument("fit_growth: malformed sequence");
  }
  const int n_max = seq.n_values.back();
  if (n_max < 64) throw InvalidArgument("fit_growth: n_max must be >= 64");
  GrowthFit fit;
  fit.n_lo = n_max / 2;
  fit.n_hi = n_max;
  std::vector<std::size_t> rows;
  for (std::size_t k = 0; k < seq.n_values.size(); ++k) {
    const int n = seq.n_values[k];
    if (n >= fit.n_lo && n <= fit.n_hi) rows.push_back(k);
  }
  Eigen::MatrixXd design(static_cast<Eigen::Index>(rows.size()), 3);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double n = seq.n_values[rows[r]];
    design(r, 0) = n;
    design(r, 1) = std::log(n);
    design(r, 2) = 1.0;
    rhs(r) = seq.log_g[rows[r]] - n * seq.log_q;
  }
  if (!rhs.allFinite()) throw InvalidArgument("fit_growth: sequence has non-finite entries");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 3) throw InvalidArgument("fit_growth: degenerate design matrix");
  const Eigen::Vector3d coef = qr.solve(rhs);
  fit.a_hat = coef(0);
  fit.b_hat = coef(1);
  fit.c_hat = coef(2);
  fit.residual = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(rows.size()));
  return fit;
}

GrowthClassification classify(const GrowthFit& fit, const GrowthThresholds& thresholds) {
  GrowthClassification c;
  c.fit = fit;
  c.thresholds = thresholds;
  if (fit.a_hat > thresholds.a) {
    c.verdict = Verdict::RhViolated;
  } else if (fit.b_hat > thresholds.b) {
    c.verdict = Verdict::NotSemisimple;
    c.m_N_estimate = static_cast<int>(std::lround(fit.b_hat / 2.0 + 1.0));
  } else {
    c.verdict = Verdict::RhAndSemisimple;
  }
  c.standard_model_exists = c.verdict == Verdict::RhAndSemisimple;
  return c;
}

GrowthSequence smooth_growth(const GrowthSequence& seq) {
  if (seq.n_values.size() != seq.log_g.size()) {
    throw InvalidArgument("smooth_growth: malformed sequence");
  }
  GrowthSequence out;
  out.log_q = seq.log_q;
  out.n_values = seq.n_values;
  // Entries are assumed to be n = n_values.front() + k with unit spacing.
  const int first = seq.n_values.empty() ? 0 : seq.n_values.front();
  std::vector<double> excess(seq.log_g.size());
  for (std::size_t k = 0; k < excess.size(); ++k) {
    excess[k] = seq.log_g[k] - seq.n_values[k] * seq.log_q;
  }
  for (std::size_t k = 0; k < excess.size(); ++k) {
    const int n = seq.n_values[k];
    const int lo = std::max(first, (n + 1) / 2);
    const auto begin = static_cast<std::size_t>(lo - first);
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t j = begin; j <= k; ++j) peak = std::max(peak, excess[j]);
    double mean = -std::numeric_limits<double>::infinity();
    if (std::isfinite(peak)) {
      double acc = 0.0;
      for (std::size_t j = begin; j <= k; ++j) acc += std::exp(excess[j] - peak);
      mean = peak + std::log(acc / static_cast<double>(k - begin + 1));
    }
    out.log_g.push_back(mean + n * seq.log_q);
  }
  return out;
}

GrowthClassification classify_growth(const GrowthSequence& seq,
                                     const GrowthThresholds& thresholds) {
  GrowthClassification c = classify(fit_growth(smooth_growth(seq)), thresholds);
  c.raw_fit = fit_growth(seq);
  return c;
}

}  // namespace aitlab
