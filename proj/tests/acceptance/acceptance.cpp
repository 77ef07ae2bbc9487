// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "aitlab/frobenius.hpp"
#include "aitlab/linalg.hpp"
#include "aitlab/resolvent.hpp"
#include "aitlab/rh_classifier.hpp"
#include "aitlab/standard_model.hpp"
#include "support/generated_specs.hpp"

#ifdef AITLAB_HAVE_RUNNER
#include "runner.hpp"
#endif

using namespace aitlab;
using aitlab::testing::full_window_Y;
using aitlab::testing::LabeledSpec;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Collects failures for one criterion and prints the verdict line.
class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)), start_(Clock::now()) {}

  void fail(const std::string& what) {
    if (failures_ < 5) std::printf("    detail: %s\n", what.c_str());
    ++failures_;
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void cases(int n) { cases_ += n; }

  bool finish(double time_limit = 0.0, const std::string& summary = {}) {
    const double elapsed = seconds_since(start_);
    if (time_limit > 0.0 && elapsed > time_limit) {
      fail("runtime " + std::to_string(elapsed) + " s exceeds " + std::to_string(time_limit) + " s");
    }
    std::printf("%s criterion %d: %s [%d cases, %d failures, %.1f s]%s%s\n",
                failures_ == 0 ? "PASS" : "FAIL", id_, title_.c_str(), cases_, failures_, elapsed,
                summary.empty() ? "" : " ", summary.c_str());
    std::fflush(stdout);
    return failures_ == 0;
  }

 private:
  int id_;
  std::string title_;
  Clock::time_point start_;
  int failures_ = 0;
  int cases_ = 0;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

/// tr(F^n) for n = 0..n_max from an extended-precision product chain.
std::vector<Complex> power_traces(const Matrix& F, int n_max) {
  const MatrixL base = F.cast<ComplexL>();
  MatrixL power = MatrixL::Identity(F.rows(), F.cols());
  std::vector<Complex> out;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) power = power * base;
    const ComplexL tr = power.trace();
    out.emplace_back(static_cast<double>(tr.real()), static_cast<double>(tr.imag()));
  }
  return out;
}

/// The 50 seeded specs: rotating through the three families.
std::vector<LabeledSpec> seeded_specs() {
  std::vector<LabeledSpec> out;
  const FamilyKind kinds[] = {FamilyKind::RhSemisimple, FamilyKind::RhJordan, FamilyKind::NonRh};
  for (int k = 0; k < 50; ++k) out.push_back(testing::generated_spec(1 + k, kinds[k % 3]));
  return out;
}

struct Case {
  const LabeledSpec* spec;
  double q;
  RealizedOperator op;
  SpectralWindow window;
  FrobeniusOperator closed;
  StandardModel model;
  std::string label;
};

std::vector<Case> build_cases(const std::vector<LabeledSpec>& specs) {
  std::vector<Case> cases;
  for (const auto& s : specs) {
    for (double q : {2.0, 0.5}) {
      Case c{&s, q, build_jordan_operator(s.spec), {}, {}, {}, s.label + "/q" + fmt(q)};
      c.window = spectral_window(s.spec, full_window_Y(s.spec), q);
      c.closed = frobenius_via_exponential(c.op, c.window);
      c.model = build_standard_model(c.closed, c.window);
      cases.push_back(std::move(c));
    }
  }
  return cases;
}

bool oracle_agreement(std::vector<Case>& cases) {
  Criterion crit(1, "contour vs closed-form Frobenius operator within 1e-8 ||F||, <= 60 s");
  double worst = 0.0;
  int max_nodes = 0;
  for (auto& c : cases) {
    const auto quad = frobenius_via_adaptive_contour(c.op, c.window);
    const double rel = (quad.F_full - c.closed.F_full).norm() / std::max(1.0, c.closed.F_full.norm());
    worst = std::max(worst, rel);
    max_nodes = std::max(max_nodes, quad.nodes_used);
    crit.cases(1);
    crit.expect(rel <= 1e-8, c.label + " relative difference " + fmt(rel));
    const auto frob = check_frob_axioms(quad, c.window);
    crit.expect(frob.at("FROB-b").pass, c.label + " contour FROB-b");
  }
  return crit.finish(60.0, "worst " + fmt(worst) + ", max total nodes " + std::to_string(max_nodes));
}

bool frob_spectrum(const std::vector<Case>& cases) {
  Criterion crit(2, "eigenvalues of F_window match {q^s} as multisets within 1e-6");
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto r = check_frob_axioms(c.closed, c.window, 1e-8, 1e-6);
    const auto& b = r.at("FROB-b");
    worst = std::max(worst, b.worst_residual);
    crit.cases(1);
    crit.expect(b.pass, c.label + " FROB-b residual " + fmt(b.worst_residual));
  }
  return crit.finish(0.0, "worst " + fmt(worst));
}

bool trace_identity(const std::vector<Case>& cases) {
  Criterion crit(3, "tr(F_window^n) = <Phi^n v_delta, v_delta> within 1e-9 (1+|tr|), n <= 30");
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto traces = power_traces(c.model.F_window, 30);
    PhiOrbit orbit(c.model, c.model.v_delta);
    for (int n = 0; n <= 30; ++n) {
      if (n > 0) orbit.step();
      const Complex tr = traces[n];
      const Complex pairing = inner_product(c.model, orbit.state().value(), c.model.v_delta);
      const double rel = std::abs(tr - pairing) / (1.0 + std::abs(tr));
      worst = std::max(worst, rel);
      crit.cases(1);
      crit.expect(rel <= 1e-9, c.label + " n=" + std::to_string(n) + " residual " + fmt(rel));
    }
    crit.expect(verify_AIT3_trace(c.model, 30).all_pass(), c.label + " AIT3 check");
  }
  return crit.finish(0.0, "worst " + fmt(worst));
}

bool axiom_suite(const std::vector<Case>& cases) {
  Criterion crit(4, "axiom suite with 1e4 seeded samples: zero failures");
  for (const auto& c : cases) {
    const std::uint64_t seed = c.spec->params.seed;
    std::vector<Report> reports;
    reports.push_back(verify_AIT1(c.model, 30));
    reports.push_back(verify_IP(c.model, 30, seed));
    reports.push_back(verify_AIT2_hodge(c.model, 10000, seed));
    reports.push_back(castelnuovo_severi_sweep(c.model, 10000, seed));
    reports.push_back(cauchy_schwarz_sweep(c.model, 10000, seed));
    for (const auto& r : reports) {
      for (const auto& ch : r.checks) {
        if (ch.name == "AIT1-g" || ch.name == "IP-g") continue;
        crit.cases(1);
        crit.expect(ch.pass, c.label + " " + r.title + ": " + ch.name + " residual " +
                                 fmt(ch.worst_residual) + " " + ch.note);
      }
    }
  }
  return crit.finish();
}

bool classifier_grid() {
  Criterion crit(5, "classifier grid, q in {2, 1/2}, n_max = 512: verdicts, a_hat, b_hat, <= 5 min");
  struct Cell {
    FamilyKind kind;
    int m;
    double delta;
  };
  const std::vector<Cell> grid{{FamilyKind::RhSemisimple, 1, 0.0}, {FamilyKind::RhJordan, 2, 0.0},
                               {FamilyKind::RhJordan, 3, 0.0},     {FamilyKind::RhJordan, 4, 0.0},
                               {FamilyKind::NonRh, 1, 0.05},       {FamilyKind::NonRh, 1, 0.1},
                               {FamilyKind::NonRh, 1, 0.2}};
  std::ostringstream table;
  for (const auto& cell : grid) {
    for (double q : {2.0, 0.5}) {
      FamilyParams p{{1.3, 2.9, 4.7}, cell.m < 2 ? 2 : cell.m, cell.delta > 0 ? cell.delta : 0.1, 1, 1e3};
      const OperatorSpec spec = generate_family(cell.kind, p);
      EndToEndConfig cfg;
      cfg.q = q;
      cfg.n_max = 512;
      const auto r = end_to_end_report(spec, cfg);
      const auto& fit = r.windows.back().classification.fit;
      std::string label = std::string(to_string(cell.kind)) + " m=" + std::to_string(cell.m) +
                          " delta=" + fmt(cell.delta) + " q=" + fmt(q);
      crit.cases(1);
      Verdict want = Verdict::RhAndSemisimple;
      if (cell.kind == FamilyKind::RhJordan) want = Verdict::NotSemisimple;
      if (cell.kind == FamilyKind::NonRh) want = Verdict::RhViolated;
      crit.expect(r.verdict == want, label + " verdict " + to_string(r.verdict));
      crit.expect(r.consistent, label + " boundedness and classifier disagree");
      if (cell.kind == FamilyKind::NonRh) {
        const double target = 2.0 * cell.delta * std::abs(std::log(q));
        crit.expect(std::abs(fit.a_hat - target) <= 0.1 * target,
                    label + " a_hat " + fmt(fit.a_hat) + " vs " + fmt(target));
      }
      if (cell.kind == FamilyKind::RhJordan) {
        const double target = 2.0 * (cell.m - 1);
        crit.expect(std::abs(fit.b_hat - target) <= 0.3,
                    label + " b_hat " + fmt(fit.b_hat) + " vs " + fmt(target));
        crit.expect(r.m_N_estimate == cell.m, label + " m_N estimate");
      }
      table << "    " << label << ": " << to_string(r.verdict) << " a_hat=" << fmt(fit.a_hat)
            << " b_hat=" << fmt(fit.b_hat) << "\n";
    }
  }
  std::printf("%s", table.str().c_str());
  return crit.finish(300.0);
}

bool power_witnesses() {
  Criterion crit(6, "power-sum witnesses: nonempty on 100 seeded multisets, evens for {1,-1}");
  SeededRng rng(2024);
  for (int k = 0; k < 100; ++k) {
    std::vector<Complex> lambdas;
    const int size = 1 + static_cast<int>(rng.uniform() * 10);
    for (int i = 0; i < size; ++i) {
      if (i > 0 && rng.uniform() < 0.2) {
        lambdas.push_back(lambdas[static_cast<std::size_t>(rng.uniform() * i)]);
      } else {
        const double modulus = rng.uniform(0.1, 3.0);
        const double angle = rng.uniform(-M_PI, M_PI);
        lambdas.push_back(std::polar(modulus, angle));
      }
    }
    const auto r = dominant_power_witnesses(lambdas, 200);
    crit.cases(1);
    crit.expect(!r.witnesses.empty(), "multiset " + std::to_string(k) + " has no witness");
  }
  const auto alt = dominant_power_witnesses({1.0, -1.0}, 200);
  std::vector<int> evens;
  for (int n = 2; n <= 200; n += 2) evens.push_back(n);
  crit.cases(1);
  crit.expect(alt.witnesses == evens, "{1,-1} witness set is not the even integers");
  return crit.finish();
}

bool decomposition(const std::vector<Case>& cases) {
  Criterion crit(7, "1 - tr + q^n = beta(Phi^n v_delta, v_delta) for n <= 30; tr(phi(A)) for phi = s, q^s");
  double worst_l = 0.0;
  double worst_t = 0.0;
  for (const auto& c : cases) {
    const auto traces = power_traces(c.model.F_window, 30);
    for (int n = 0; n <= 30; ++n) {
      const Complex tr = traces[n];
      const Complex lhs = 1.0 - tr + std::pow(c.q, n);
      const Complex rhs =
          beta_form(c.model, apply_phi(c.model, c.model.v_delta, n).value(), c.model.v_delta);
      const double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
      worst_l = std::max(worst_l, rel);
      crit.cases(1);
      crit.expect(rel <= 1e-9, c.label + " n=" + std::to_string(n) + " residual " + fmt(rel));
      crit.expect(lefschetz_decomposition(c.model, n).all_pass(),
                  c.label + " decomposition check n=" + std::to_string(n));
    }
    if (c.spec->kind != FamilyKind::RhSemisimple) continue;
    const double t = std::log(c.q);
    const Contour contour = adaptive_contour(c.op, full_window_Y(c.spec->spec));
    const std::vector<std::pair<std::string, Symbol>> symbols{
        {"s", [](Complex s) { return s; }}, {"q^s", [t](Complex s) { return std::exp(t * s); }}};
    for (const auto& [name, phi] : symbols) {
      Complex expected{};
      for (const auto& b : c.spec->spec.blocks) expected += double(b.jordan_size) * phi(b.s);
      const Complex got = functional_calculus(c.op, phi, contour).trace();
      const double rel = std::abs(got - expected) / std::max(1.0, std::abs(expected));
      worst_t = std::max(worst_t, rel);
      crit.cases(1);
      crit.expect(rel <= 1e-9, c.label + " tr(" + name + "(A)) residual " + fmt(rel));
    }
  }
  return crit.finish(0.0, "worst decomposition " + fmt(worst_l) + ", worst trace " + fmt(worst_t));
}

#ifdef AITLAB_HAVE_RUNNER
std::map<std::string, std::string> artifacts(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().filename() == "meta.json") continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    out[std::filesystem::relative(e.path(), dir).string()] = os.str();
  }
  return out;
}
#endif

bool determinism() {
  Criterion crit(8, "repeated seeded runs give byte-identical report and CSV artifacts");
#ifdef AITLAB_HAVE_RUNNER
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "aitlab_acceptance_determinism";
  for (auto command : {cli::Command::Verify, cli::Command::Classify, cli::Command::Sweep}) {
    std::map<std::string, std::string> first;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path dir = root / std::to_string(rep);
      fs::remove_all(dir);
      cli::RunConfig cfg;
      cfg.command = command;
      cfg.family = "rh_jordan";
      cfg.family_params.seed = 7;
      cfg.q = {2.0, 0.5};
      cfg.sample_count = 2000;
      cfg.jobs = 2;
      if (command == cli::Command::Sweep) {
        FamilyParams off = cfg.family_params;
        off.delta = 0.2;
        cfg.sweep_families = {{"rh_semisimple", cfg.family_params},
                              {"rh_jordan", cfg.family_params},
                              {"non_rh", off}};
      }
      cfg.out_dir = dir;
      std::ostringstream out, err;
      cli::run(cfg, out, err);
      auto files = artifacts(dir);
      crit.cases(1);
      crit.expect(!files.empty(), "no artifacts written");
      if (rep == 0) {
        first = std::move(files);
      } else {
        crit.expect(first == files, "artifacts differ between runs");
      }
    }
  }
  fs::remove_all(root);
#else
  crit.fail("built without the command-line runner");
#endif
  return crit.finish();
}

}  // namespace

int main() {
  const auto specs = seeded_specs();
  auto cases = build_cases(specs);
  bool ok = true;
  ok = oracle_agreement(cases) && ok;
  ok = frob_spectrum(cases) && ok;
  ok = trace_identity(cases) && ok;
  ok = axiom_suite(cases) && ok;
  ok = classifier_grid() && ok;
  ok = power_witnesses() && ok;
  ok = decomposition(cases) && ok;
  ok = determinism() && ok;
  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
