#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "aitlab/errors.hpp"

namespace aitlab::cli {
namespace fs = std::filesystem;

namespace {

int exit_code_for(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Spec:
      return kSpecError;
    case ErrorCategory::Numerical:
      return kNumericalError;
    case ErrorCategory::Io:
      return kIoError;
  }
  return kNumericalError;
}

const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Spec:
      return "spec";
    case ErrorCategory::Numerical:
      return "numerical";
    case ErrorCategory::Io:
      return "io";
  }
  return "unknown";
}

const char* command_name(Command c) {
  switch (c) {
    case Command::Generate:
      return "generate";
    case Command::Verify:
      return "verify";
    case Command::Classify:
      return "classify";
    case Command::Sweep:
      return "sweep";
  }
  return "unknown";
}

bool wants_json(OutputFormat f) { return f != OutputFormat::Csv; }
bool wants_csv(OutputFormat f) { return f != OutputFormat::Json; }

std::string q_tag(double q) { return "q" + format_double(q); }

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

template <typename T>
T get_as(const Json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config key '") + key + "': " + e.what());
  }
}

FamilyParams read_family_params(const Json& j, FamilyParams p) {
  if (j.contains("gammas")) p.gammas = get_as<std::vector<double>>(j, "gammas");
  if (j.contains("m")) p.jordan_size = get_as<int>(j, "m");
  if (j.contains("delta")) p.delta = get_as<double>(j, "delta");
  if (j.contains("seed")) p.seed = get_as<std::uint64_t>(j, "seed");
  if (j.contains("conditioning")) p.conditioning = get_as<double>(j, "conditioning");
  return p;
}

OperatorSpec resolve_spec(const RunConfig& config) {
  if (config.spec_path) return load_spec(*config.spec_path);
  return generate_family(family_from_string(config.family), config.family_params);
}

EndToEndConfig pipeline_config(const RunConfig& config, double q) {
  EndToEndConfig e;
  e.Y = config.Y;
  e.auto_Y_count = config.auto_Y_count;
  e.q = q;
  e.n_max = config.n_max;
  e.axiom_n_max = config.axiom_n_max;
  e.sample_count = config.sample_count;
  e.sample_seed = config.sample_seed;
  e.contour.tol = config.tol;
  return e;
}

void write_meta(const RunConfig& config) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream stamp;
  stamp << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  Json meta;
  meta["tool"] = "aitlab";
  meta["version"] = "0.1.0";
  meta["command"] = command_name(config.command);
  meta["invocation"] = config.invocation;
  meta["timestamp_utc"] = stamp.str();
  write_json(config.out_dir / "meta.json", meta);
}

[[noreturn]] void report_inconsistency(const EndToEndReport& r) {
  throw Error(ErrorCategory::Numerical,
              "internal inconsistency: the (g) boundedness checks and the growth classifier "
              "disagree (" + r.note + ")");
}

Json classification_document(const OperatorSpec& spec, double q, const EndToEndReport& r) {
  const WindowReport& w = r.windows.back();
  Json j;
  j["spec"] = spec_to_json(spec);
  j["q"] = q;
  j["Y"] = w.Y;
  j["verdict"] = to_string(r.verdict);
  j["m_N_estimate"] = r.m_N_estimate ? Json(*r.m_N_estimate) : Json(nullptr);
  j["consistent"] = r.consistent;
  j["g_bounded"] = w.ig_bounded;
  j["note"] = r.note;
  j["classification"] = classification_to_json(w.classification);
  j["power_witnesses"] = {{"count", w.witnesses.witnesses.size()},
                          {"density", w.witnesses.density}};
  return j;
}

int cmd_generate(const RunConfig& config, std::ostream& out) {
  const OperatorSpec spec = generate_family(family_from_string(config.family), config.family_params);
  const fs::path path = config.out_dir / "spec.json";
  write_json(path, spec_to_json(spec));
  out << "wrote " << path.string() << " (" << spec.blocks.size() << " eigenvalues, dimension "
      << spec.dimension() << ")\n";
  return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  const OperatorSpec spec = resolve_spec(config);
  bool all_pass = true;
  for (double q : config.q) {
    const EndToEndReport r = end_to_end_report(spec, pipeline_config(config, q));
    bool pass = r.op_axioms.all_pass();
    for (const auto& w : r.windows) pass = pass && w.axioms.all_pass();
    all_pass = all_pass && pass;
    if (wants_json(config.format)) {
      Json doc = end_to_end_to_json(r);
      doc["spec"] = spec_to_json(spec);
      doc["q"] = q;
      doc["all_pass"] = pass;
      write_json(config.out_dir / ("verify_" + q_tag(q) + ".json"), doc);
    }
    if (wants_csv(config.format)) {
      for (const auto& w : r.windows) {
        for (const auto& [name, points] : w.axioms.series) {
          const std::string file =
              "series_" + q_tag(q) + "_Y" + format_double(w.Y) + "_" + name + ".csv";
          write_text(config.out_dir / file, series_csv(points));
        }
      }
    }
    out << "q=" << format_double(q) << ": " << (pass ? "all checks pass" : "checks failed") << '\n';
    for (const auto& w : r.windows) {
      for (const auto& c : w.axioms.checks) {
        if (!c.pass) {
          out << "  FAIL [Y=" << format_double(w.Y) << "] " << c.name << ": residual "
              << format_double(c.worst_residual) << " > " << format_double(c.tolerance) << " ("
              << c.note << ")\n";
        }
      }
    }
    if (!r.consistent) report_inconsistency(r);
  }
  return all_pass ? kOk : kChecksFailed;
}

int cmd_classify(const RunConfig& config, std::ostream& out) {
  const OperatorSpec spec = resolve_spec(config);
  for (double q : config.q) {
    const EndToEndReport r = end_to_end_report(spec, pipeline_config(config, q));
    const WindowReport& w = r.windows.back();
    if (wants_json(config.format)) {
      write_json(config.out_dir / ("classify_" + q_tag(q) + ".json"),
                 classification_document(spec, q, r));
    }
    if (wants_csv(config.format)) {
      write_text(config.out_dir / ("growth_" + q_tag(q) + ".csv"), growth_csv(w.growth));
    }
    out << "q=" << format_double(q) << ": verdict " << to_string(r.verdict);
    if (r.m_N_estimate) out << ", m_N=" << *r.m_N_estimate;
    out << " (a_hat=" << format_double(w.classification.fit.a_hat)
        << ", b_hat=" << format_double(w.classification.fit.b_hat) << ")\n";
    if (!r.consistent) report_inconsistency(r);
  }
  return kOk;
}

struct Scenario {
  std::string name;
  std::string family;
  FamilyParams params;
  double q = 2.0;
};

std::string scenario_name(const std::string& family, const FamilyParams& p, double q) {
  std::string name = family;
  const FamilyKind kind = family_from_string(family);
  if (kind == FamilyKind::RhJordan) name += "_m" + std::to_string(p.jordan_size);
  if (kind == FamilyKind::NonRh) name += "_d" + format_double(p.delta);
  name += "_s" + std::to_string(p.seed) + "_" + q_tag(q);
  return name;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<FamilyEntry> families = config.sweep_families;
  if (families.empty()) families.push_back({config.family, config.family_params});
  std::vector<Scenario> scenarios;
  for (const auto& f : families) {
    for (double q : config.q) scenarios.push_back({scenario_name(f.name, f.params, q), f.name, f.params, q});
  }

  std::vector<Json> results(scenarios.size());
  std::vector<int> codes(scenarios.size(), kOk);
  std::vector<std::string> messages(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      const Scenario& s = scenarios[i];
      Json entry;
      entry["scenario"] = s.name;
      entry["family"] = s.family;
      entry["q"] = s.q;
      try {
        const OperatorSpec spec = generate_family(family_from_string(s.family), s.params);
        const EndToEndReport r = end_to_end_report(spec, pipeline_config(config, s.q));
        const fs::path dir = config.out_dir / s.name;
        ensure_dir(dir);
        if (wants_json(config.format)) {
          write_json(dir / "report.json", classification_document(spec, s.q, r));
        }
        if (wants_csv(config.format)) {
          write_text(dir / "growth.csv", growth_csv(r.windows.back().growth));
        }
        entry["verdict"] = to_string(r.verdict);
        entry["m_N_estimate"] = r.m_N_estimate ? Json(*r.m_N_estimate) : Json(nullptr);
        entry["a_hat"] = r.windows.back().classification.fit.a_hat;
        entry["b_hat"] = r.windows.back().classification.fit.b_hat;
        entry["consistent"] = r.consistent;
        if (!r.consistent) report_inconsistency(r);
      } catch (const Error& e) {
        codes[i] = exit_code_for(e.category());
        messages[i] = e.what();
        entry["error"] = {{"category", category_name(e.category())}, {"message", e.what()}};
      } catch (const std::exception& e) {
        codes[i] = kNumericalError;
        messages[i] = e.what();
        entry["error"] = {{"category", "internal"}, {"message", e.what()}};
      }
      results[i] = std::move(entry);
    }
  };
  const int workers = std::max(1, std::min<int>(config.jobs, static_cast<int>(scenarios.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < workers; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Json summary;
  summary["q"] = config.q;
  summary["n_max"] = config.n_max;
  summary["scenarios"] = Json::array();
  int code = kOk;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    summary["scenarios"].push_back(results[i]);
    if (codes[i] != kOk) {
      err << "aitlab: scenario " << scenarios[i].name << ": " << messages[i] << '\n';
      if (code == kOk) code = codes[i];
    } else {
      out << scenarios[i].name << ": " << results[i]["verdict"].get<std::string>() << '\n';
    }
  }
  write_json(config.out_dir / "sweep.json", summary);
  return code;
}

}  // namespace

Command command_from_string(const std::string& name) {
  if (name == "generate") return Command::Generate;
  if (name == "verify") return Command::Verify;
  if (name == "classify") return Command::Classify;
  if (name == "sweep") return Command::Sweep;
  throw InvalidArgument("unknown command '" + name + "'");
}

OutputFormat format_from_string(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "both") return OutputFormat::Both;
  throw InvalidArgument("unknown format '" + name + "' (expected json, csv or both)");
}

std::vector<double> parse_Y(const std::string& text) {
  if (text.empty() || text == "auto") return {};
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !(value > 0.0)) {
      throw InvalidArgument("Y must be 'auto' or a comma-separated list of positive numbers, got '" +
                            text + "'");
    }
    out.push_back(value);
  }
  return out;
}

void apply_config(RunConfig& config, const Json& doc) {
  if (!doc.is_object()) throw InvalidArgument("config file must hold a JSON object");
  if (doc.contains("spec")) config.spec_path = get_as<std::string>(doc, "spec");
  if (doc.contains("family")) config.family = get_as<std::string>(doc, "family");
  config.family_params = read_family_params(doc, config.family_params);
  if (doc.contains("q")) {
    config.q = doc.at("q").is_array() ? get_as<std::vector<double>>(doc, "q")
                                      : std::vector<double>{get_as<double>(doc, "q")};
  }
  if (doc.contains("Y")) {
    const Json& y = doc.at("Y");
    if (y.is_string()) {
      config.Y = parse_Y(y.get<std::string>());
    } else if (y.is_array()) {
      config.Y = get_as<std::vector<double>>(doc, "Y");
    } else {
      config.Y = {get_as<double>(doc, "Y")};
    }
  }
  if (doc.contains("n_max")) config.n_max = get_as<int>(doc, "n_max");
  if (doc.contains("axiom_n_max")) config.axiom_n_max = get_as<int>(doc, "axiom_n_max");
  if (doc.contains("tol")) config.tol = get_as<double>(doc, "tol");
  if (doc.contains("out_dir")) config.out_dir = get_as<std::string>(doc, "out_dir");
  if (doc.contains("format")) config.format = format_from_string(get_as<std::string>(doc, "format"));
  if (doc.contains("samples")) config.sample_count = get_as<int>(doc, "samples");
  if (doc.contains("sample_seed")) config.sample_seed = get_as<std::uint64_t>(doc, "sample_seed");
  if (doc.contains("jobs")) config.jobs = get_as<int>(doc, "jobs");
  if (doc.contains("families")) {
    config.sweep_families.clear();
    for (const auto& f : doc.at("families")) {
      if (f.is_string()) {
        config.sweep_families.push_back({f.get<std::string>(), config.family_params});
      } else if (f.is_object() && f.contains("family")) {
        config.sweep_families.push_back(
            {get_as<std::string>(f, "family"), read_family_params(f, config.family_params)});
      } else {
        throw InvalidArgument("each entry of 'families' must be a name or an object with 'family'");
      }
      family_from_string(config.sweep_families.back().name);
    }
  }
}

void validate(const RunConfig& config) {
  if (config.n_max < 1) throw InvalidArgument("n_max must be >= 1");
  if (config.axiom_n_max < 1) throw InvalidArgument("axiom_n_max must be >= 1");
  if (!(config.tol > 0.0)) throw InvalidArgument("tol must be > 0");
  if (config.jobs < 1) throw InvalidArgument("jobs must be >= 1");
  if (config.sample_count < 1) throw InvalidArgument("samples must be >= 1");
  if (config.q.empty()) throw InvalidArgument("at least one q is required");
  for (double q : config.q) {
    if (!(q > 0.0) || q == 1.0 || !std::isfinite(q)) {
      throw InvalidQ("q must lie in (0,1) or (1,inf), got " + format_double(q));
    }
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    ensure_dir(config.out_dir);
    if (config.write_meta) write_meta(config);
    switch (config.command) {
      case Command::Generate:
        return cmd_generate(config, out);
      case Command::Verify:
        return cmd_verify(config, out);
      case Command::Classify:
        return cmd_classify(config, out);
      case Command::Sweep:
        return cmd_sweep(config, out, err);
    }
    return kOk;
  } catch (const Error& e) {
    err << "aitlab " << command_name(config.command) << ": " << category_name(e.category())
        << " error: " << e.what() << '\n';
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    err << "aitlab " << command_name(config.command) << ": internal error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace aitlab::cli
