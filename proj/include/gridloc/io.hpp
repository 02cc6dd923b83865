#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridloc/metrics.hpp"
#include "gridloc/pipeline.hpp"
#include "gridloc/simulator.hpp"

namespace gridloc {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Presets. Parameter records shipped with the tool; the model values are
// artifact defaults (the usual outdoor/indoor exponent choices), not fitted
// measurements, and every field can be overridden from a file.
// ---------------------------------------------------------------------------

bool is_model_preset(const std::string& name);
PathLossModel model_preset(const std::string& name);  // throws LookupError

bool is_scenario_preset(const std::string& name);
Scenario scenario_preset(const std::string& name);  // throws LookupError

// ---------------------------------------------------------------------------
// JSON codecs
// ---------------------------------------------------------------------------

Deployment deployment_from_json(const json& j);
json deployment_to_json(const Deployment& deployment);

PathLossModel model_from_json(const json& j);
json model_to_json(const PathLossModel& model);

// A scenario document may carry "preset": "<name>" as a base; any further
// keys override the preset's fields.
Scenario scenario_from_json(const json& j);
json scenario_to_json(const Scenario& scenario);

EstimatorConfig config_from_json(const json& j);
json config_to_json(const EstimatorConfig& config);

json report_to_json(const ErrorReport& report);

// Loaders accepting a preset name in place of a file path.
Deployment load_deployment(const std::string& path);
PathLossModel load_model(const std::string& path_or_preset);
Scenario load_scenario(const std::string& path_or_preset);
EstimatorConfig load_config(const std::string& path);

// ---------------------------------------------------------------------------
// CSV codecs. Fixed headers, '.' decimal separator, 9 significant digits.
// ---------------------------------------------------------------------------

std::string format_double(double v);

std::string truth_to_csv(const TruthTrace& truth);
TruthTrace truth_from_csv(const std::string& text);

std::string samples_to_csv(std::span<const RssiWindow> windows);
std::vector<RssiWindow> samples_from_csv(const std::string& text);

std::string estimates_to_csv(std::span<const Estimate> estimates);
std::vector<Estimate> estimates_from_csv(const std::string& text);

std::string skips_to_csv(std::span<const SkipRecord> skips);

std::string report_to_csv(const ErrorReport& report);
std::string surface_to_csv(const ErrorSurface& surface);

// ---------------------------------------------------------------------------
// Files and manifests
// ---------------------------------------------------------------------------

std::string read_file(const std::string& path);
void write_file_atomic(const std::string& path, const std::string& content);

// FNV-1a 64 content hash, hex. Audit fingerprint, not cryptographic.
std::string content_digest(const std::string& bytes);

// Run manifest: tool version, per-input digests, seed, config echo, output
// list, and a digest over all of that. The timestamp is added last and stays
// outside the digest, so identical runs differ only in that field.
json make_manifest(const std::string& command,
                   const std::map<std::string, std::string>& input_digests,
                   std::optional<std::uint64_t> seed, const json& config_echo,
                   const std::vector<std::string>& outputs);

}  // namespace gridloc
