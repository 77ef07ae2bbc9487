#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "aitlab/errors.hpp"
#include "aitlab/rh_classifier.hpp"

namespace aitlab {
namespace {

template <typename Fn>
auto in_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e);
  }
}

std::vector<Complex> window_eigenvalues(const SpectralWindow& w) {
  std::vector<Complex> out;
  for (const auto& b : w.sigma_Y) {
    for (int k = 0; k < b.jordan_size; ++k) out.push_back(std::exp(w.t * b.s));
  }
  return out;
}

Check trace_identity(const RealizedOperator& op, const SpectralWindow& w, const Contour& contour,
                     const Symbol& phi, std::string name, double min_gap) {
  const Complex computed = functional_calculus(op, phi, contour, min_gap).trace();
  Complex expected{};
  for (const auto& b : w.sigma_Y) expected += static_cast<double>(b.jordan_size) * phi(b.s);
  return make_check(std::move(name), std::abs(computed - expected) / (1.0 + std::abs(expected)),
                    1e-9, "tr(phi(A) P) = sum of mult * phi(s) over the window");
}

WindowReport run_window(const RealizedOperator& op, const OperatorSpec& spec, double Y,
                        const EndToEndConfig& config) {
  WindowReport out;
  out.Y = Y;
  std::ostringstream tag;
  tag << "Y=" << Y;
  out.axioms.title = "window axioms " + tag.str();
  const std::string at = " [" + tag.str() + "]";

  out.window = in_stage("window" + at, [&] { return spectral_window(spec, Y, config.q); });
  const SpectralWindow& w = out.window;
  const FrobeniusOperator closed =
      in_stage("frobenius (closed form)" + at, [&] { return frobenius_via_exponential(op, w); });

  if (config.run_contour_path) {
    const FrobeniusOperator contour_F = in_stage(
        "frobenius (contour)" + at,
        [&] { return frobenius_via_adaptive_contour(op, w, config.contour); });
    out.contour_nodes_per_side = contour_F.nodes_used / 4;
    const double scale = std::max(1.0, closed.F_full.norm());
    out.cross_oracle_residual = (contour_F.F_full - closed.F_full).norm() / scale;
    std::ostringstream note;
    note << "||F_contour - F_closed|| / ||F||, " << out.contour_nodes_per_side
         << " nodes per side, quadrature residual " << contour_F.quadrature_residual;
    out.axioms.add(make_check("cross-oracle", out.cross_oracle_residual, 1e-8, note.str()));
    out.axioms.merge(check_frob_axioms(contour_F, w), "contour/");

    in_stage("functional calculus" + at, [&] {
      Contour c = make_contour(op, w.Y, config.contour);
      c.nodes_per_side = std::max(out.contour_nodes_per_side, config.contour.nodes_per_side);
      out.axioms.add(trace_identity(op, w, c, [](Complex s) { return s; }, "trace-identity-s",
                                    config.contour.min_gap));
      const double t = w.t;
      out.axioms.add(trace_identity(op, w, c, [t](Complex s) { return std::exp(t * s); },
                                    "trace-identity-q^s", config.contour.min_gap));
      return 0;
    });
  }

  in_stage("frobenius axioms" + at, [&] {
    out.axioms.merge(check_frob_axioms(closed, w));
    return 0;
  });

  const StandardModel model = build_standard_model(closed, w);
  in_stage("standard model" + at, [&] {
    const int horizon = std::max(config.n_max, config.axiom_n_max);
    out.axioms.merge(verify_AIT1(model, horizon));
    out.axioms.merge(verify_AIT2_hodge(model, config.sample_count, config.sample_seed));
    out.axioms.merge(verify_AIT3_trace(model, config.axiom_n_max));
    out.axioms.merge(verify_IP(model, horizon, config.sample_seed));
    out.axioms.merge(verify_forms(model, std::min(config.sample_count, 1000), config.sample_seed));
    out.axioms.merge(castelnuovo_severi_sweep(model, config.sample_count, config.sample_seed));
    out.axioms.merge(cauchy_schwarz_sweep(model, config.sample_count, config.sample_seed));
    Check lef;
    lef.name = "lefschetz";
    lef.tolerance = 1e-9;
    lef.note = "1 - tr(F^n) + q^n = beta(Phi^n v_delta, v_delta) for n = 0..";
    lef.note += std::to_string(config.axiom_n_max);
    for (int n = 0; n <= config.axiom_n_max; ++n) {
      const Report r = lefschetz_decomposition(model, n);
      for (const auto& c : r.checks) {
        lef.worst_residual = std::max(lef.worst_residual, c.worst_residual);
        if (!c.pass) {
          lef.pass = false;
          lef.note += "; " + c.name + " fails at n=" + std::to_string(n);
        }
      }
    }
    out.axioms.add(std::move(lef));
    return 0;
  });

  out.ig_bounded = out.axioms.at("AIT1-g").pass && out.axioms.at("IP-g").pass;

  in_stage("classifier" + at, [&] {
    out.growth = growth_sequence(model, config.n_max);
    out.classification = classify_growth(out.growth, config.thresholds);
    out.witnesses = dominant_power_witnesses(window_eigenvalues(w), config.n_max);
    return 0;
  });
  return out;
}

}  // namespace

EndToEndReport end_to_end_report(const OperatorSpec& spec, const EndToEndConfig& config) {
  EndToEndReport report;
  report.op_axioms = validate_op_axioms(spec);
  in_stage("operator axioms", [&] {
    require_op_axioms(spec);
    return 0;
  });
  const RealizedOperator op = in_stage("realize", [&] { return build_jordan_operator(spec); });

  std::vector<double> Ys = config.Y;
  if (Ys.empty()) {
    Ys = in_stage("parameter space",
                  [&] { return parameter_space(spec, std::max(1, config.auto_Y_count)).admissible_Y; });
  }
  std::sort(Ys.begin(), Ys.end());
  for (double Y : Ys) report.windows.push_back(run_window(op, spec, Y, config));

  const WindowReport& deciding = report.windows.back();
  report.verdict = deciding.classification.verdict;
  report.m_N_estimate = deciding.classification.m_N_estimate;
  report.consistent = deciding.ig_bounded == deciding.classification.standard_model_exists;

  std::ostringstream note;
  note << "verdict from Y=" << deciding.Y << " (largest window)";
  int jordan_blocks = 0;
  for (const auto& b : deciding.window.sigma_Y) jordan_blocks += b.jordan_size > 1 ? 1 : 0;
  if (jordan_blocks > 1) {
    note << "; " << jordan_blocks
         << " Jordan blocks in the window, the estimate reflects only the largest size";
  }
  if (!report.consistent) {
    note << "; boundedness checks (g) and the growth classifier disagree";
  }
  report.note = note.str();
  return report;
}

}  // namespace aitlab
