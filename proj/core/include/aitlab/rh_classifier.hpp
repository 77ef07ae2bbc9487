#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aitlab/frobenius.hpp"
#include "aitlab/operator_lab.hpp"
#include "aitlab/report.hpp"
#include "aitlab/resolvent.hpp"
#include "aitlab/standard_model.hpp"

namespace aitlab {

/// log g_n for g_n = <Phi^n v_delta, Phi^n v_delta>, n = 1..n_max.
struct GrowthSequence {
  std::vector<int> n_values;
  std::vector<double> log_g;
  double log_q = 0.0;
};

/// Least-squares readout of log g_n - n log q ~ a n + b log n + c.
struct GrowthFit {
  double a_hat = 0.0;
  double b_hat = 0.0;
  double c_hat = 0.0;
  double residual = 0.0;
  int n_lo = 0;
  int n_hi = 0;
};

struct GrowthThresholds {
  double a = 0.01;
  double b = 0.5;
};

enum class Verdict { RhAndSemisimple, RhViolated, NotSemisimple };

struct GrowthClassification {
  GrowthFit fit;      // fit of the window-averaged sequence, drives the verdict
  GrowthFit raw_fit;  // same fit on the raw sequence, for reference
  Verdict verdict = Verdict::RhAndSemisimple;
  std::optional<int> m_N_estimate;
  bool standard_model_exists = false;
  GrowthThresholds thresholds;
};

const char* to_string(Verdict v);

/// nu_n = sum over sigma_Y (with multiplicity) of q^{n s_i}, n = 1..n_max.
std::vector<Complex> trace_power_sums(const SpectralWindow& w, int n_max);

struct PowerWitnesses {
  std::vector<int> witnesses;
  double density = 0.0;
  Complex lambda_1;  // max-modulus element used as the reference
};

/// All n <= n_max with |lambda_1|^n <= |sum lambda_i^n| (relative slack 1e-12), where
/// lambda_1 has maximal modulus. Throws InvalidArgument for an empty list or n_max < 1.
PowerWitnesses dominant_power_witnesses(std::vector<Complex> lambdas, int n_max);

GrowthSequence growth_sequence(const StandardModel& model, int n_max);

/// Fit over n in [n_max/2, n_max]. Throws InvalidArgument when n_max < 64.
GrowthFit fit_growth(const GrowthSequence& seq);

GrowthClassification classify(const GrowthFit& fit, const GrowthThresholds& thresholds = {});

/// Replaces g_n / q^n by its mean over k in [ceil(n/2), n], in the log domain. Bounded
/// quasi-periodic factors (non-orthogonal eigenvectors) average out while the polynomial
/// and geometric laws keep their exponents.
GrowthSequence smooth_growth(const GrowthSequence& seq);

/// classify(fit_growth(smooth_growth(seq))) with the raw fit attached.
GrowthClassification classify_growth(const GrowthSequence& seq,
                                     const GrowthThresholds& thresholds = {});

struct EndToEndConfig {
  std::vector<double> Y;  // empty: automatic placement
  int auto_Y_count = 1;
  double q = 2.0;
  int n_max = 512;
  int axiom_n_max = 30;
  int sample_count = 10000;
  std::uint64_t sample_seed = 1;
  ContourSettings contour;
  GrowthThresholds thresholds;
  bool run_contour_path = true;
};

struct WindowReport {
  double Y = 0.0;
  SpectralWindow window;
  Report axioms;  // FROB, AIT, IP, forms, inequalities, Lefschetz, cross-oracle
  GrowthSequence growth;
  GrowthClassification classification;
  PowerWitnesses witnesses;
  double cross_oracle_residual = 0.0;  // ||F_contour - F_exp|| / ||F_exp||
  int contour_nodes_per_side = 0;
  bool ig_bounded = true;  // (IP-g)/(AIT1-g) view of the same boundedness question
};

struct EndToEndReport {
  Report op_axioms;
  std::vector<WindowReport> windows;
  Verdict verdict = Verdict::RhAndSemisimple;
  std::optional<int> m_N_estimate;
  bool consistent = true;  // boundedness checks and classifier agree on the deciding window
  std::string note;
};

/// Full pipeline. Errors are rethrown with the failing stage prefixed to the message.
EndToEndReport end_to_end_report(const OperatorSpec& spec, const EndToEndConfig& config);

}  // namespace aitlab
