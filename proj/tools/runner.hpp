#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aitlab/serialization.hpp"

namespace aitlab::cli {

enum class Command { Generate, Verify, Classify, Sweep };
enum class OutputFormat { Json, Csv, Both };

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kChecksFailed = 1,
  kSpecError = 2,
  kNumericalError = 3,
  kIoError = 4,
};

/// One sweep scenario family. `params` holds gammas, m, delta and the similarity seed.
struct FamilyEntry {
  std::string name;
  FamilyParams params;
};

struct RunConfig {
  Command command = Command::Verify;
  std::optional<std::filesystem::path> spec_path;
  std::string family = "rh_semisimple";
  FamilyParams family_params{{1.3, 2.9, 4.7}, 2, 0.1, 1, 1e3};
  std::vector<double> q{2.0};
  std::vector<double> Y;  // empty means "auto"
  int auto_Y_count = 1;
  int n_max = 512;
  int axiom_n_max = 30;
  double tol = 1e-8;
  std::filesystem::path out_dir = "out";
  OutputFormat format = OutputFormat::Both;
  int sample_count = 10000;
  std::uint64_t sample_seed = 1;
  int jobs = 1;
  std::vector<FamilyEntry> sweep_families;
  bool write_meta = true;
  std::string invocation;  // recorded in the metadata sidecar only
};

Command command_from_string(const std::string& name);
OutputFormat format_from_string(const std::string& name);
/// Parses "auto" or a comma-separated list of positive reals.
std::vector<double> parse_Y(const std::string& text);

/// Applies the keys of a JSON config document on top of `config`.
/// Keys: spec, family, gammas, m, delta, seed, conditioning, q, Y, n_max, axiom_n_max, tol,
/// out_dir, format, samples, sample_seed, jobs, families.
void apply_config(RunConfig& config, const Json& doc);

/// Throws InvalidArgument when n_max < 1, tol <= 0, q <= 0 or q == 1, jobs < 1.
void validate(const RunConfig& config);

/// Executes the command, writing artifacts under out_dir. Progress goes to `out`,
/// diagnostics (with the failing stage) to `err`. Never throws.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace aitlab::cli
