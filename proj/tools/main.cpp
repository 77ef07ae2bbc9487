#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "aitlab/errors.hpp"
#include "runner.hpp"

namespace {

struct Flags {
  std::string spec;
  std::string family = "rh_semisimple";
  std::vector<double> gammas{1.3, 2.9, 4.7};
  int m = 2;
  double delta = 0.1;
  std::uint64_t seed = 1;
  double conditioning = 1e3;
  std::vector<double> q{2.0};
  std::string Y = "auto";
  int auto_Y_count = 1;
  int n_max = 512;
  int axiom_n_max = 30;
  double tol = 1e-8;
  std::string out_dir = "out";
  std::string format = "both";
  std::string config;
  int jobs = 1;
  int samples = 10000;
  std::uint64_t sample_seed = 1;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--spec", f.spec, "Operator spec JSON file");
  cmd->add_option("--family", f.family, "rh_semisimple | rh_jordan | non_rh")
      ->check(CLI::IsMember({"rh_semisimple", "rh_jordan", "non_rh"}));
  cmd->add_option("--gammas", f.gammas, "Imaginary parts of the generated eigenvalues")
      ->delimiter(',');
  cmd->add_option("--m", f.m, "Jordan size for rh_jordan");
  cmd->add_option("--delta", f.delta, "Off-line offset for non_rh");
  cmd->add_option("--seed", f.seed, "Similarity seed (0 keeps the Jordan basis)");
  cmd->add_option("--conditioning", f.conditioning, "Bound on cond(W)");
  cmd->add_option("--q", f.q, "q value(s), comma separated")->delimiter(',');
  cmd->add_option("--Y", f.Y, "'auto' or comma-separated window heights");
  cmd->add_option("--auto-Y-count", f.auto_Y_count, "Number of automatically placed windows");
  cmd->add_option("--n-max", f.n_max, "Growth horizon for the classifier and (g) checks");
  cmd->add_option("--axiom-n-max", f.axiom_n_max, "Horizon for trace identities");
  cmd->add_option("--tol", f.tol, "Contour quadrature tolerance");
  cmd->add_option("--out-dir", f.out_dir, "Output directory");
  cmd->add_option("--format", f.format, "json | csv | both")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  cmd->add_option("--config", f.config, "JSON config file; its keys override flags");
  cmd->add_option("--jobs", f.jobs, "Parallel sweep jobs");
  cmd->add_option("--samples", f.samples, "Seeded samples for the form and inequality checks");
  cmd->add_option("--sample-seed", f.sample_seed, "Seed for the sampled checks");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = aitlab::cli;
  CLI::App app{"aitlab: spectral test operators, Frobenius analogues and growth classification"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<std::pair<CLI::App*, cli::Command>> commands{
      {app.add_subcommand("generate", "Write an operator spec from family parameters"),
       cli::Command::Generate},
      {app.add_subcommand("verify", "Run every axiom check and write per-axiom reports"),
       cli::Command::Verify},
      {app.add_subcommand("classify", "Classify growth and write the growth CSV"),
       cli::Command::Classify},
      {app.add_subcommand("sweep", "Run a scenario grid from a sweep config"),
       cli::Command::Sweep},
  };
  for (auto& [cmd, kind] : commands) add_common(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::kOk : cli::kSpecError;
  }

  cli::RunConfig config;
  for (auto& [cmd, kind] : commands) {
    if (cmd->parsed()) config.command = kind;
  }
  for (int i = 0; i < argc; ++i) {
    if (i > 0) config.invocation += ' ';
    config.invocation += argv[i];
  }
  try {
    if (!flags.spec.empty()) config.spec_path = flags.spec;
    config.family = flags.family;
    config.family_params = {flags.gammas, flags.m, flags.delta, flags.seed, flags.conditioning};
    config.q = flags.q;
    config.Y = cli::parse_Y(flags.Y);
    config.auto_Y_count = flags.auto_Y_count;
    config.n_max = flags.n_max;
    config.axiom_n_max = flags.axiom_n_max;
    config.tol = flags.tol;
    config.out_dir = flags.out_dir;
    config.format = cli::format_from_string(flags.format);
    config.jobs = flags.jobs;
    config.sample_count = flags.samples;
    config.sample_seed = flags.sample_seed;
    if (!flags.config.empty()) {
      std::ifstream in(flags.config);
      if (!in) throw aitlab::IoError("cannot open config file " + flags.config);
      aitlab::Json doc;
      try {
        doc = aitlab::Json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw aitlab::IoError("cannot parse config file " + flags.config + ": " + e.what());
      }
      cli::apply_config(config, doc);
    }
  } catch (const aitlab::Error& e) {
    std::cerr << "aitlab: " << e.what() << '\n';
    return e.category() == aitlab::ErrorCategory::Io ? cli::kIoError : cli::kSpecError;
  }
  return cli::run(config, std::cout, std::cerr);
}
