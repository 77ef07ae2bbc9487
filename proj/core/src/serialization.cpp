#include "aitlab/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "aitlab/errors.hpp"

namespace aitlab {
namespace {

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Json witness_json(const std::vector<Complex>& w) {
  Json arr = Json::array();
  for (Complex z : w) arr.push_back(complex_pair(z));
  return arr;
}

Json check_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["pass"] = c.pass;
  j["worst_residual"] = c.worst_residual;
  j["tolerance"] = c.tolerance;
  j["note"] = c.note;
  if (!c.witness.empty()) j["witness"] = witness_json(c.witness);
  return j;
}

template <typename T>
T required(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return {buf, res.ptr};
}

Json spec_to_json(const OperatorSpec& spec) {
  Json j;
  Json blocks = Json::array();
  for (const auto& b : spec.blocks) {
    blocks.push_back({{"re", b.s.real()}, {"im", b.s.imag()}, {"jordan_size", b.jordan_size}});
  }
  j["blocks"] = std::move(blocks);
  j["seed"] = spec.similarity_seed;
  j["conditioning"] = spec.similarity_conditioning;
  return j;
}

OperatorSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("operator spec must be a JSON object");
  OperatorSpec spec;
  if (!j.contains("blocks") || !j.at("blocks").is_array()) {
    throw InvalidArgument("operator spec needs a 'blocks' array");
  }
  for (const auto& b : j.at("blocks")) {
    EigenvalueSpec e;
    e.s = {required<double>(b, "re"), required<double>(b, "im")};
    e.jordan_size = b.contains("jordan_size") ? required<int>(b, "jordan_size") : 1;
    spec.blocks.push_back(e);
  }
  if (j.contains("seed")) spec.similarity_seed = required<std::uint64_t>(j, "seed");
  if (j.contains("conditioning")) spec.similarity_conditioning = required<double>(j, "conditioning");
  return spec;
}

OperatorSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spec file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("cannot parse spec file " + path.string() + ": " + e.what());
  }
  return spec_from_json(j);
}

Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_pair(m(r, c)));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json& j) {
  const auto rows = required<Eigen::Index>(j, "rows");
  const auto cols = required<Eigen::Index>(j, "cols");
  const Json& data = j.at("data");
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw InvalidArgument("matrix data has the wrong length");
  }
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c, ++k) {
      m(r, c) = {data[k].at(0).get<double>(), data[k].at(1).get<double>()};
    }
  }
  return m;
}

Json report_to_json(const Report& report, bool include_series) {
  Json j;
  j["title"] = report.title;
  j["all_pass"] = report.all_pass();
  Json checks = Json::array();
  for (const auto& c : report.checks) checks.push_back(check_json(c));
  j["checks"] = std::move(checks);
  if (include_series && !report.series.empty()) {
    Json series = Json::object();
    for (const auto& [name, points] : report.series) {
      Json arr = Json::array();
      for (const auto& p : points) {
        arr.push_back({{"n", p.n},
                       {"value_re", p.value.real()},
                       {"value_im", p.value.imag()},
                       {"value_over_qn", p.value_over_qn}});
      }
      series[name] = std::move(arr);
    }
    j["series"] = std::move(series);
  }
  return j;
}

Json quadrature_to_json(const QuadratureResult& result) {
  return {{"residual", result.residual},
          {"nodes_used", result.nodes_used},
          {"matrix", matrix_to_json(result.matrix)}};
}

Json frobenius_to_json(const FrobeniusOperator& F) {
  Json j;
  j["two_g"] = F.two_g;
  j["ext_f"] = complex_pair(F.ext_f);
  j["ext_g"] = complex_pair(F.ext_g);
  j["quadrature_residual"] = F.quadrature_residual;
  j["nodes_used"] = F.nodes_used;
  j["P"] = matrix_to_json(F.P);
  j["F_full"] = matrix_to_json(F.F_full);
  j["F_window"] = matrix_to_json(F.F_window);
  return j;
}

Json window_to_json(const SpectralWindow& w) {
  Json sigma = Json::array();
  for (const auto& b : w.sigma_Y) {
    sigma.push_back({{"re", b.s.real()}, {"im", b.s.imag()}, {"jordan_size", b.jordan_size}});
  }
  return {{"Y", w.Y}, {"q", w.q}, {"t", w.t}, {"two_g", w.dimension()}, {"sigma_Y", sigma}};
}

Json classification_to_json(const GrowthClassification& c) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["standard_model_exists"] = c.standard_model_exists;
  j["m_N_estimate"] = c.m_N_estimate ? Json(*c.m_N_estimate) : Json(nullptr);
  j["a_hat"] = c.fit.a_hat;
  j["b_hat"] = c.fit.b_hat;
  j["c_hat"] = c.fit.c_hat;
  j["residual"] = c.fit.residual;
  j["fit_window"] = Json::array({c.fit.n_lo, c.fit.n_hi});
  j["raw_fit"] = {{"a_hat", c.raw_fit.a_hat},
                  {"b_hat", c.raw_fit.b_hat},
                  {"c_hat", c.raw_fit.c_hat},
                  {"residual", c.raw_fit.residual}};
  j["thresholds"] = {{"a", c.thresholds.a}, {"b", c.thresholds.b}};
  return j;
}

Json end_to_end_to_json(const EndToEndReport& report) {
  Json j;
  j["verdict"] = to_string(report.verdict);
  j["m_N_estimate"] = report.m_N_estimate ? Json(*report.m_N_estimate) : Json(nullptr);
  j["consistent"] = report.consistent;
  j["note"] = report.note;
  j["op_axioms"] = report_to_json(report.op_axioms);
  Json windows = Json::array();
  for (const auto& w : report.windows) {
    Json wj;
    wj["window"] = window_to_json(w.window);
    wj["cross_oracle_residual"] = w.cross_oracle_residual;
    wj["contour_nodes_per_side"] = w.contour_nodes_per_side;
    wj["g_bounded"] = w.ig_bounded;
    wj["axioms"] = report_to_json(w.axioms);
    wj["classification"] = classification_to_json(w.classification);
    std::size_t shown = std::min<std::size_t>(w.witnesses.witnesses.size(), 32);
    wj["power_witnesses"] = {
        {"count", w.witnesses.witnesses.size()},
        {"density", w.witnesses.density},
        {"lambda_1", complex_pair(w.witnesses.lambda_1)},
        {"first", std::vector<int>(w.witnesses.witnesses.begin(),
                                   w.witnesses.witnesses.begin() + static_cast<long>(shown))}};
    windows.push_back(std::move(wj));
  }
  j["windows"] = std::move(windows);
  return j;
}

std::string growth_csv(const GrowthSequence& seq) {
  std::ostringstream os;
  os << "n,log_g,log_g_minus_nlogq\n";
  for (std::size_t k = 0; k < seq.n_values.size(); ++k) {
    const int n = seq.n_values[k];
    os << n << ',' << format_double(seq.log_g[k]) << ','
       << format_double(seq.log_g[k] - n * seq.log_q) << '\n';
  }
  return os.str();
}

std::string series_csv(const std::vector<SeriesPoint>& series) {
  std::ostringstream os;
  os << "n,value_re,value_im,value_over_qn\n";
  for (const auto& p : series) {
    os << p.n << ',' << format_double(p.value.real()) << ',' << format_double(p.value.imag())
       << ',' << format_double(p.value_over_qn) << '\n';
  }
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace aitlab
