#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aitlab/frobenius.hpp"
#include "aitlab/operator_lab.hpp"
#include "aitlab/report.hpp"
#include "aitlab/resolvent.hpp"
#include "aitlab/rh_classifier.hpp"

namespace aitlab {

using Json = nlohmann::ordered_json;

// Operator specs: {"blocks":[{"re","im","jordan_size"}], "seed", "conditioning"}.
Json spec_to_json(const OperatorSpec& spec);
/// Throws InvalidArgument on a malformed document.
OperatorSpec spec_from_json(const Json& j);
/// Throws IoError when the file cannot be read or parsed.
OperatorSpec load_spec(const std::filesystem::path& path);

/// {"rows","cols","data":[[re,im],...]} in row-major order.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json report_to_json(const Report& report, bool include_series = false);
Json quadrature_to_json(const QuadratureResult& result);
Json frobenius_to_json(const FrobeniusOperator& F);
Json window_to_json(const SpectralWindow& w);
Json classification_to_json(const GrowthClassification& c);
Json end_to_end_to_json(const EndToEndReport& report);

/// Columns n, log_g, log_g_minus_nlogq.
std::string growth_csv(const GrowthSequence& seq);
/// Columns n, value_re, value_im, value_over_qn.
std::string series_csv(const std::vector<SeriesPoint>& series);

/// Shortest representation that reads back to the same double.
std::string format_double(double x);

/// Writes `content` verbatim; throws IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& content);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace aitlab
