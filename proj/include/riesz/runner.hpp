#pragma once

#include "riesz/diagnostics.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace riesz {

inline constexpr const char* kToolVersion = RIESZ_LAB_VERSION;

enum class OutputFormat { Json, Markdown, Both };

OutputFormat parse_output_format(const std::string& s);

struct ProbeEntry {
  std::string name;
  /// Display label; defaults to the probe name.
  std::string label;
  Json params = Json::object();
};

struct ExperimentConfig {
  std::uint64_t seed = kDefaultSeed;
  std::string output = "riesz_lab";
  OutputFormat format = OutputFormat::Both;
  std::vector<SpaceTag> spaces;
  std::vector<ProbeEntry> probes;
  /// The config as read, used for hashing and echoed into the manifest.
  Json source = Json::object();
};

/// Parses the top-level shape only. Throws ValidationError.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::string& path);

/// A probe whose parameters have been checked; `run` takes the derived seed.
struct PreparedProbe {
  std::string name;
  std::string label;
  std::function<ProbeReport(std::uint64_t)> run;
};

std::vector<std::string> probe_names();

/// Validates one probe's parameters. `path` anchors error messages
/// (e.g. "probes[2].params"). Throws ValidationError.
PreparedProbe prepare_probe(const std::string& name, const Json& params, const std::vector<SpaceTag>& spaces,
                            const std::string& path = "params");

/// Validates every probe before any runs.
std::vector<PreparedProbe> validate(const ExperimentConfig& config);

/// A probe threw while running.
class ProbeError : public Error {
 public:
  ProbeError(std::string probe, const std::string& message)
      : Error("probe " + probe + ": " + message), probe_(std::move(probe)) {}
  const std::string& probe() const noexcept { return probe_; }

 private:
  std::string probe_;
};

struct RunManifest {
  std::string config_hash;
  std::string tool_version = kToolVersion;
  Json config;
  std::vector<ProbeReport> reports;
};

/// Hex SHA-256 of the canonical (sorted-key, compact) dump.
std::string config_hash(const Json& config);

/// The config with the effective seed written back, as hashed.
Json canonical_config(const ExperimentConfig& config);

/// Throws ValidationError or ProbeError.
RunManifest run(const ExperimentConfig& config);

Json to_json(const RunManifest& m);
std::string to_markdown(const RunManifest& m, bool approx = false);

/// Writes <prefix>.manifest.json and/or <prefix>.report.md through a temp
/// file and rename. A timestamp, if given, is added outside the reports.
void write_outputs(const RunManifest& m, const std::string& prefix, OutputFormat format, bool approx = false,
                   const std::optional<std::string>& timestamp = std::nullopt);

/// Named canonical parameter sets for the counterexample suite.
struct Counterexample {
  std::string name;
  std::string probe;
  Json params;
};

const std::vector<Counterexample>& counterexamples();
const Counterexample& find_counterexample(const std::string& name);

}  // namespace riesz
