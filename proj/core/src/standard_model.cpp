#include "aitlab/standard_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "aitlab/errors.hpp"
#include "aitlab/linalg.hpp"

namespace aitlab {
namespace {

using RowMajorL = Eigen::Matrix<ComplexL, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kExact = 1e-12;
constexpr double kRescaleHigh = 1e150;
constexpr double kRescaleLow = 1e-150;

Vector unit(int dim, int index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

Vector random_real(SeededRng& rng, int dim) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.uniform(-1.0, 1.0);
  return v;
}

Vector random_complex(SeededRng& rng, int dim) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_uniform();
  return v;
}

std::vector<Complex> to_witness(const Vector& v) {
  return {v.data(), v.data() + v.size()};
}

void note_failure(Check& c, double residual, const Vector& witness) {
  if (std::isnan(residual) || residual > c.worst_residual) {
    c.worst_residual = residual;
    if (std::isnan(residual) || residual > c.tolerance) {
      c.pass = false;
      c.witness = to_witness(witness);
    }
  }
}

Check open_check(std::string name, double tol, std::string note = {}) {
  Check c;
  c.name = std::move(name);
  c.tolerance = tol;
  c.note = std::move(note);
  return c;
}

}  // namespace

Vector ScaledCoordinates::value() const {
  if (log_scale == 0.0) return coords;
  return coords * std::exp(log_scale);
}

StandardModel build_standard_model(const FrobeniusOperator& F, const SpectralWindow& w) {
  StandardModel m;
  m.two_g = static_cast<int>(F.F_window.rows());
  m.dim_V = m.two_g * m.two_g + 2;
  m.F_window = F.F_window;
  m.q = w.q;
  m.ext_f = F.ext_f;
  m.ext_g = F.ext_g;
  m.v01 = unit(m.dim_V, m.fg_index());
  m.v10 = unit(m.dim_V, m.gf_index());
  m.h_a = m.v01 + m.v10;
  m.v_delta = m.h_a;
  for (int i = 0; i < m.two_g; ++i) m.v_delta(m.tensor_index(i, i)) = 1.0;
  return m;
}

PhiOrbit::PhiOrbit(const StandardModel& model, const Vector& x) : model_(&model) {
  if (x.size() != model.dim_V) throw InvalidArgument("PhiOrbit: coordinate vector has wrong size");
  state_.coords = x;
  step_matrix_ = model.F_window.transpose().cast<ComplexL>();
  exact_ = x.cast<ComplexL>();
}

void PhiOrbit::step() {
  const int g2 = model_->two_g;
  VectorL& c = exact_;
  if (g2 > 0) {
    Eigen::Map<RowMajorL> X(c.data(), g2, g2);
    RowMajorL next = X * step_matrix_;
    X = next;
  }
  c(model_->fg_index()) *= ComplexL(model_->ext_g);
  c(model_->gf_index()) *= ComplexL(model_->ext_f);
  ++n_;
  const long double peak = c.cwiseAbs().maxCoeff();
  if (peak > kRescaleHigh || (peak > 0.0L && peak < kRescaleLow)) {
    c /= peak;
    state_.log_scale += std::log(static_cast<double>(peak));
  }
  state_.coords = c.cast<Complex>();
}

ScaledCoordinates apply_phi(const StandardModel& model, const Vector& x, int n) {
  if (n < 0) throw InvalidArgument("apply_phi: n must be >= 0");
  PhiOrbit orbit(model, x);
  for (int k = 0; k < n; ++k) orbit.step();
  ScaledCoordinates out = orbit.state();
  if (out.log_scale != 0.0) {
    const double peak = out.coords.cwiseAbs().maxCoeff();
    if (peak > 0.0 && std::abs(out.log_scale + std::log(peak)) < 600.0) {
      out.coords *= std::exp(out.log_scale);
      out.log_scale = 0.0;
    }
  }
  return out;
}

Complex inner_product(const StandardModel& model, const Vector& x, const Vector& y) {
  const int t = model.two_g * model.two_g;
  return y.head(t).dot(x.head(t));
}

Complex beta_form(const StandardModel& model, const Vector& x, const Vector& y) {
  const int fg = model.fg_index();
  const int gf = model.gf_index();
  return x(fg) * std::conj(y(gf)) + x(gf) * std::conj(y(fg)) - inner_product(model, x, y);
}

Matrix beta_gram(const StandardModel& model) {
  Matrix B = Matrix::Zero(model.dim_V, model.dim_V);
  for (int k = 0; k < model.two_g * model.two_g; ++k) B(k, k) = -1.0;
  B(model.fg_index(), model.gf_index()) = 1.0;
  B(model.gf_index(), model.fg_index()) = 1.0;
  return B;
}

bool looks_bounded(std::span<const double> ratios, double margin) {
  if (ratios.size() < 2) return true;
  const std::size_t half = (ratios.size() - 1) / 4;
  double prefix = 0.0;
  double tail = 0.0;
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    if (!std::isfinite(ratios[k])) return false;
    if (k <= half) {
      prefix = std::max(prefix, ratios[k]);
    } else {
      tail = std::max(tail, ratios[k]);
    }
  }
  return tail <= margin * std::max(prefix, std::numeric_limits<double>::min());
}

Report verify_AIT1(const StandardModel& model, int n_max) {
  if (n_max < 1) throw InvalidArgument("verify_AIT1: n_max must be >= 1");
  Report r;
  r.title = "AIT1";
  const int dim = model.dim_V;

  // (a) Hermitian symmetry on canonical basis vectors (all pairs up to 64 of them plus the
  // f(x)g and g(x)f directions), realness and symmetry for real vectors, plus random pairs.
  {
    Check c = open_check("AIT1-a", kExact, "beta(y,x) = conj(beta(x,y)); real on real vectors");
    std::vector<int> probe;
    for (int k = 0; k < std::min(dim - 2, 64); ++k) probe.push_back(k);
    probe.push_back(model.fg_index());
    probe.push_back(model.gf_index());
    for (int a : probe) {
      for (int b : probe) {
        const Vector x = unit(dim, a);
        const Vector y = unit(dim, b);
        const Complex bxy = beta_form(model, x, y);
        const Complex byx = beta_form(model, y, x);
        note_failure(c, std::max(std::abs(byx - std::conj(bxy)), std::abs(bxy.imag())), x);
      }
    }
    SeededRng rng(0xA171);
    for (int k = 0; k < 32; ++k) {
      const Vector x = random_complex(rng, dim);
      const Vector y = random_complex(rng, dim);
      const Complex bxy = beta_form(model, x, y);
      const double scale = 1.0 + std::abs(bxy);
      note_failure(c, std::abs(beta_form(model, y, x) - std::conj(bxy)) / scale, x);
      const Vector xr = random_real(rng, dim);
      const Vector yr = random_real(rng, dim);
      const Complex rxy = beta_form(model, xr, yr);
      const Complex ryx = beta_form(model, yr, xr);
      note_failure(c, std::max(std::abs(rxy.imag()), std::abs(rxy - ryx)) / (1.0 + std::abs(rxy)),
                   xr);
    }
    r.add(std::move(c));
  }
  r.add(make_check("AIT1-b", std::abs(beta_form(model, model.v01, model.v01)), kExact,
                   "beta(v01, v01) = 0"));
  r.add(make_check("AIT1-c", std::abs(beta_form(model, model.v10, model.v10)), kExact,
                   "beta(v10, v10) = 0"));
  r.add(make_check("AIT1-d", std::abs(beta_form(model, model.v01, model.v10) - 1.0), kExact,
                   "beta(v01, v10) = 1"));

  Check e = open_check("AIT1-e", kExact, "beta(Phi^n v_delta, v01) = 1 for n = 0..n_max");
  Check f = open_check("AIT1-f", kExact,
                       "beta(Phi^n v_delta, v10) / q^n = 1 (O(q^n) with constant exactly 1)");
  std::vector<SeriesPoint> series;
  std::vector<double> ratios;
  const double log_q = std::log(model.q);
  PhiOrbit orbit(model, model.v_delta);
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) orbit.step();
    const auto& st = orbit.state();
    const Vector& x = st.coords;
    const Complex pair01 = beta_form(model, x, model.v01) * std::exp(st.log_scale);
    note_failure(e, std::abs(pair01 - 1.0), x);
    const Complex pair10 = beta_form(model, x, model.v10) * std::exp(st.log_scale - n * log_q);
    note_failure(f, std::abs(pair10 - 1.0), x);
    const Complex self = beta_form(model, x, x);
    const double over_qn = std::abs(self) * std::exp(2.0 * st.log_scale - n * log_q);
    series.push_back({n, self * std::exp(2.0 * st.log_scale), over_qn});
    ratios.push_back(over_qn);
  }
  r.add(std::move(e));
  r.add(std::move(f));
  {
    Check g = open_check("AIT1-g", 4.0,
                         "|beta(Phi^n v_delta, Phi^n v_delta)| / q^n: max within 4x of the "
                         "max over n <= n_max/4");
    const double prefix =
        *std::max_element(ratios.begin(), ratios.begin() + (ratios.size() - 1) / 4 + 1);
    const double tail = *std::max_element(ratios.begin(), ratios.end());
    g.worst_residual = tail / std::max(prefix, std::numeric_limits<double>::min());
    g.pass = looks_bounded(ratios);
    std::ostringstream os;
    os << g.note << "; sup over n <= " << n_max << " is " << tail;
    g.note = os.str();
    r.add(std::move(g));
  }
  r.series["AIT1-g"] = std::move(series);
  return r;
}

Report verify_AIT2_hodge(const StandardModel& model, int sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw InvalidArgument("verify_AIT2_hodge: sample_count must be >= 1");
  Report r;
  r.title = "AIT2";
  const int dim = model.dim_V;
  const int fg = model.fg_index();
  const int gf = model.gf_index();
  Check hodge = open_check("AIT2", kExact, "beta(x, h_a) = 0 implies beta(x, x) <= 0");
  Check closed = open_check("AIT2-closed-form", kExact,
                            "beta(x,x) = -2 beta(x,v01)^2 - <x,x> on the constraint set");
  Check constraint = open_check("AIT2-constraint", kExact, "|beta(x, h_a)| after projection");

  auto probe = [&](const Vector& x) {
    const double b_h = std::abs(beta_form(model, x, model.h_a));
    const double bxx = beta_form(model, x, x).real();
    const double b01 = beta_form(model, x, model.v01).real();
    const double ip = inner_product(model, x, x).real();
    const double expected = -2.0 * b01 * b01 - ip;
    const double scale = 1.0 + std::abs(expected);
    note_failure(constraint, b_h / scale, x);
    note_failure(hodge, bxx / scale, x);
    note_failure(closed, std::abs(bxx - expected) / scale, x);
  };

  probe(model.v01 - model.v10);
  if (model.two_g > 0) probe(unit(dim, model.tensor_index(0, 0)));
  SeededRng rng(seed);
  for (int k = 0; k < sample_count; ++k) {
    Vector x = random_real(rng, dim);
    // Orthogonal projection onto the hyperplane x_fg + x_gf = 0, i.e. beta(x, h_a) = 0.
    const Complex mean = 0.5 * (x(fg) + x(gf));
    x(fg) -= mean;
    x(gf) -= mean;
    probe(x);
  }
  std::ostringstream os;
  os << sample_count << " seeded samples (seed " << seed
     << ") plus v01 - v10 and e_1(x)e_1; h_a itself is excluded (beta(h_a, h_a) = 2)";
  hodge.note += "; " + os.str();
  r.add(std::move(hodge));
  r.add(std::move(closed));
  r.add(std::move(constraint));
  return r;
}

Report verify_AIT3_trace(const StandardModel& model, int n_max) {
  if (n_max < 1) throw InvalidArgument("verify_AIT3_trace: n_max must be >= 1");
  Report r;
  r.title = "AIT3";
  Check c = open_check("AIT3", 1e-9, "|tr(F^n) - <Phi^n v_delta, v_delta>| / (1 + |tr|)");
  std::vector<SeriesPoint> series;
  const MatrixL base = model.F_window.cast<ComplexL>();
  MatrixL power = MatrixL::Identity(model.two_g, model.two_g);
  PhiOrbit orbit(model, model.v_delta);
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      power = power * base;
      orbit.step();
    }
    const ComplexL trace = power.trace();
    const Complex tr(static_cast<double>(trace.real()), static_cast<double>(trace.imag()));
    const auto& st = orbit.state();
    const Complex lefschetz = inner_product(model, st.coords, model.v_delta) * std::exp(st.log_scale);
    note_failure(c, std::abs(tr - lefschetz) / (1.0 + std::abs(tr)), st.coords);
    series.push_back({n, lefschetz, std::abs(lefschetz) / std::pow(model.q, n)});
  }
  r.add(std::move(c));
  r.series["AIT3"] = std::move(series);
  return r;
}

Report verify_IP(const StandardModel& model, int n_max, std::uint64_t seed) {
  if (n_max < 1) throw InvalidArgument("verify_IP: n_max must be >= 1");
  Report r;
  r.title = "IP";
  const int dim = model.dim_V;
  {
    Check c = open_check("IP-a", kExact, "<y,x> = conj(<x,y>); real and symmetric on real vectors");
    SeededRng rng(seed);
    for (int k = 0; k < 64; ++k) {
      const Vector x = random_complex(rng, dim);
      const Vector y = random_complex(rng, dim);
      const Complex xy = inner_product(model, x, y);
      note_failure(c, std::abs(inner_product(model, y, x) - std::conj(xy)) / (1.0 + std::abs(xy)),
                   x);
      const Vector xr = random_real(rng, dim);
      const Vector yr = random_real(rng, dim);
      const Complex rxy = inner_product(model, xr, yr);
      const Complex ryx = inner_product(model, yr, xr);
      note_failure(c, std::max(std::abs(rxy.imag()), std::abs(rxy - ryx)) / (1.0 + std::abs(rxy)),
                   xr);
    }
    r.add(std::move(c));
  }
  r.add(make_check("IP-b", std::abs(inner_product(model, model.v01, model.v01)), kExact,
                   "<v01, v01> = 0"));
  r.add(make_check("IP-c", std::abs(inner_product(model, model.v10, model.v10)), kExact,
                   "<v10, v10> = 0"));
  r.add(make_check("IP-d", std::abs(inner_product(model, model.v01, model.v10)), kExact,
                   "<v01, v10> = 0"));

  Check e = open_check("IP-e", kExact, "<Phi^n v_delta, v01> = 0 for n = 0..n_max");
  Check f = open_check("IP-f", kExact, "<Phi^n v_delta, v10> = 0 for n = 0..n_max");
  std::vector<SeriesPoint> series;
  std::vector<double> ratios;
  const double log_q = std::log(model.q);
  PhiOrbit orbit(model, model.v_delta);
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) orbit.step();
    const auto& st = orbit.state();
    note_failure(e, std::abs(inner_product(model, st.coords, model.v01)), st.coords);
    note_failure(f, std::abs(inner_product(model, st.coords, model.v10)), st.coords);
    const Complex self = inner_product(model, st.coords, st.coords);
    const double over_qn = self.real() * std::exp(2.0 * st.log_scale - n * log_q);
    series.push_back({n, self * std::exp(2.0 * st.log_scale), over_qn});
    ratios.push_back(over_qn);
  }
  r.add(std::move(e));
  r.add(std::move(f));
  {
    Check g = open_check("IP-g", 4.0,
                         "<Phi^n v_delta, Phi^n v_delta> / q^n: max within 4x of the "
                         "max over n <= n_max/4");
    const double prefix =
        *std::max_element(ratios.begin(), ratios.begin() + (ratios.size() - 1) / 4 + 1);
    const double tail = *std::max_element(ratios.begin(), ratios.end());
    g.worst_residual = tail / std::max(prefix, std::numeric_limits<double>::min());
    g.pass = looks_bounded(ratios);
    std::ostringstream os;
    os << g.note << "; sup over n <= " << n_max << " is " << tail;
    g.note = os.str();
    r.add(std::move(g));
  }
  r.series["IP-g"] = std::move(series);
  return r;
}

Check check_castelnuovo_severi(const StandardModel& model, const Vector& x) {
  const double lhs = beta_form(model, x, x).real();
  const double rhs =
      2.0 * beta_form(model, x, model.v01).real() * beta_form(model, x, model.v10).real();
  const double slack = kExact * (1.0 + std::abs(lhs) + std::abs(rhs));
  Check c;
  c.name = "Castelnuovo-Severi";
  c.tolerance = slack;
  c.worst_residual = std::max(0.0, lhs - rhs);
  c.pass = lhs <= rhs + slack;
  std::ostringstream os;
  os << "beta(x,x) = " << lhs << " <= 2 beta(x,v01) beta(x,v10) = " << rhs;
  c.note = os.str();
  if (!c.pass) c.witness = to_witness(x);
  return c;
}

Check check_cauchy_schwarz(const StandardModel& model, const Vector& x, const Vector& y) {
  const double xx = inner_product(model, x, x).real();
  const double yy = inner_product(model, y, y).real();
  const double xy = std::abs(inner_product(model, x, y));
  const double bound = std::sqrt(std::max(xx, 0.0) * std::max(yy, 0.0));
  Check c;
  c.name = "Cauchy-Schwarz";
  const double scale = std::sqrt((1.0 + x.squaredNorm()) * (1.0 + y.squaredNorm()));
  c.tolerance = kExact * scale;
  if (std::abs(xx) <= kExact * (1.0 + x.squaredNorm())) {
    c.worst_residual = xy;
    c.note = "null direction: <x,y> must vanish";
  } else {
    c.worst_residual = std::max(0.0, xy - bound);
    c.note = "|<x,y>| <= sqrt(<x,x><y,y>)";
  }
  c.pass = c.worst_residual <= c.tolerance;
  if (!c.pass) c.witness = to_witness(x);
  return c;
}

Report castelnuovo_severi_sweep(const StandardModel& model, int count, std::uint64_t seed) {
  Report r;
  r.title = "Castelnuovo-Severi sweep";
  Check agg = open_check("Castelnuovo-Severi", kExact, "beta(x,x) <= 2 beta(x,v01) beta(x,v10)");
  SeededRng rng(seed);
  auto run = [&](const Vector& x) {
    const Check c = check_castelnuovo_severi(model, x);
    const double rel = c.worst_residual / (c.tolerance / kExact);
    if (!c.pass) {
      agg.pass = false;
      agg.witness = c.witness;
    }
    agg.worst_residual = std::max(agg.worst_residual, rel);
  };
  run(model.h_a);
  run(model.v_delta);
  for (int k = 0; k < count; ++k) run(random_real(rng, model.dim_V));
  agg.note += "; " + std::to_string(count) + " seeded real samples";
  r.add(std::move(agg));
  return r;
}

Report cauchy_schwarz_sweep(const StandardModel& model, int count, std::uint64_t seed) {
  Report r;
  r.title = "Cauchy-Schwarz sweep";
  Check agg = open_check("Cauchy-Schwarz", kExact, "|<x,y>| <= sqrt(<x,x><y,y>)");
  int null_pairs = 0;
  SeededRng rng(seed);
  auto run = [&](const Vector& x, const Vector& y) {
    const Check c = check_cauchy_schwarz(model, x, y);
    const double rel = c.worst_residual / (c.tolerance / kExact);
    if (!c.pass) {
      agg.pass = false;
      agg.witness = c.witness;
    }
    agg.worst_residual = std::max(agg.worst_residual, rel);
  };
  for (int k = 0; k < count; ++k) {
    Vector x = random_complex(rng, model.dim_V);
    const Vector y = random_complex(rng, model.dim_V);
    switch (k % 4) {
      case 0:  // null direction inside span(v01, v10)
        x = rng.complex_uniform() * model.v01 + rng.complex_uniform() * model.v10;
        ++null_pairs;
        break;
      case 1:
        run(x, x);
        break;
      default:
        break;
    }
    run(x, y);
  }
  agg.note += "; " + std::to_string(count) + " seeded pairs, " + std::to_string(null_pairs) +
              " with x a null direction";
  r.add(std::move(agg));
  return r;
}

Report verify_forms(const StandardModel& model, int count, std::uint64_t seed) {
  Report r;
  r.title = "forms";
  Check psd = open_check("inner-psd", kExact, "<x,x> >= 0");
  Check herm = open_check("beta-hermitian", kExact, "beta(y,x) = conj(beta(x,y))");
  Check compat = open_check("forms-compatibility", kExact,
                            "<x,y> = beta(x,v01)beta(v10,y) + beta(x,v10)beta(v01,y) - beta(x,y)");
  SeededRng rng(seed);
  for (int k = 0; k < count; ++k) {
    const Vector x = random_complex(rng, model.dim_V);
    const Vector y = random_complex(rng, model.dim_V);
    const Complex xx = inner_product(model, x, x);
    note_failure(psd, std::max(-xx.real(), std::abs(xx.imag())) / (1.0 + std::abs(xx)), x);
    const Complex bxy = beta_form(model, x, y);
    note_failure(herm, std::abs(beta_form(model, y, x) - std::conj(bxy)) / (1.0 + std::abs(bxy)),
                 x);
    const Complex recomputed = beta_form(model, x, model.v01) * beta_form(model, model.v10, y) +
                               beta_form(model, x, model.v10) * beta_form(model, model.v01, y) -
                               bxy;
    const Complex direct = inner_product(model, x, y);
    note_failure(compat, std::abs(recomputed - direct) / (1.0 + std::abs(direct)), x);
  }
  r.add(std::move(psd));
  r.add(std::move(herm));
  r.add(std::move(compat));
  return r;
}

Report lefschetz_decomposition(const StandardModel& model, int n) {
  if (n < 0) throw InvalidArgument("lefschetz_decomposition: n must be >= 0");
  Report r;
  r.title = "Lefschetz decomposition";
  const Complex tr0 = 1.0;
  const Complex tr2 = std::pow(model.q, n);
  const Complex tr1 = matrix_power(model.F_window, n).trace();
  const Vector x = apply_phi(model, model.v_delta, n).value();
  const Complex rhs = beta_form(model, x, model.v_delta);
  const Complex lhs = tr0 - tr1 + tr2;
  std::ostringstream os;
  os << "n=" << n << ": 1 - " << tr1 << " + " << tr2 << " vs " << rhs;
  r.add(make_check("lefschetz", std::abs(lhs - rhs) / (1.0 + std::abs(lhs)), 1e-9, os.str()));
  const Complex h0 = beta_form(model, x, model.v01) * beta_form(model, model.v10, model.v_delta);
  const Complex h2 = beta_form(model, x, model.v10) * beta_form(model, model.v01, model.v_delta);
  r.add(make_check("H0-product", std::abs(tr0 - h0) / (1.0 + std::abs(tr0)), 1e-9,
                   "tr|H0 = beta(Phi^n v_delta, v01) beta(v10, v_delta)"));
  r.add(make_check("H2-product", std::abs(tr2 - h2) / (1.0 + std::abs(tr2)), 1e-9,
                   "tr|H2 = q^n = beta(Phi^n v_delta, v10) beta(v01, v_delta)"));
  return r;
}

}  // namespace aitlab
