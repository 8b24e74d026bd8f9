// riesz_lab: command-line front end for the lattice laboratory.

#include "riesz/runner.hpp"
#include "riesz/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace riesz;

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kProbeError = 2;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path, std::string("invalid JSON: ") + e.what());
  }
}

MatrixOp read_matrix(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    return matrix_from_json(j, path);
  } catch (const ParseError& e) {
    throw ValidationError(path, e.what());
  } catch (const PreconditionError& e) {
    throw ValidationError(path, e.what());
  }
}

// "2..16" (doubling), "2-16" (every integer) or "2,4,8".
std::vector<std::uint64_t> parse_dims(const std::string& s) {
  std::vector<std::uint64_t> out;
  auto num = [&](const std::string& t) {
    std::size_t used = 0;
    const auto v = std::stoull(t, &used);
    if (used != t.size() || v == 0) throw ValidationError("--dims", "bad dimension \"" + t + "\"");
    return v;
  };
  try {
    if (auto p = s.find(".."); p != std::string::npos) {
      for (auto v = num(s.substr(0, p)), hi = num(s.substr(p + 2)); v <= hi; v *= 2) out.push_back(v);
    } else if (auto q = s.find('-'); q != std::string::npos) {
      for (auto v = num(s.substr(0, q)), hi = num(s.substr(q + 1)); v <= hi; ++v) out.push_back(v);
    } else {
      std::size_t start = 0;
      while (start <= s.size()) {
        const auto comma = s.find(',', start);
        out.push_back(num(s.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
  } catch (const std::invalid_argument&) {
    throw ValidationError("--dims", "cannot parse \"" + s + "\"");
  } catch (const std::out_of_range&) {
    throw ValidationError("--dims", "value out of range in \"" + s + "\"");
  }
  if (out.empty()) throw ValidationError("--dims", "empty range \"" + s + "\"");
  return out;
}

// --dims feeds whichever dimension parameter the probe takes.
void apply_dims(const std::string& probe, Json& params, const std::vector<std::uint64_t>& dims) {
  if (probe == "am_defect_curve") {
    params["dims"] = dims;
  } else if (probe == "projection_gap" || probe == "operator_lebesgue_demo" || probe == "lebesgue_probe") {
    params["dim"] = dims.back();
  } else {
    throw ValidationError("--dims", "probe " + probe + " takes no dimension range");
  }
}

std::string render(const Json& j) {
  if (j.is_array() && !j.empty() && j[0].is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + j[i].dump();
    return s + "]";
  }
  return j.dump();
}

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "md";
  std::string dims;
  bool approx = false;
};

std::uint64_t effective_seed(const Common& c, std::uint64_t config_seed) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("RIESZ_LAB_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const auto v = std::stoull(s, &used, 0);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ValidationError("RIESZ_LAB_SEED", "expected a 64-bit integer, got \"" + std::string(env) + "\"");
  }
  return config_seed;
}

// Runs one probe outside a config and prints or writes the result.
int single_probe(const std::string& name, Json params, const Common& c) {
  if (!c.dims.empty()) apply_dims(name, params, parse_dims(c.dims));
  ExperimentConfig config;
  config.source = Json{{"probes", Json::array({Json{{"name", name}, {"params", params}}})}};
  config = parse_config(config.source);
  config.seed = effective_seed(c, kDefaultSeed);
  const RunManifest m = run(config);
  const OutputFormat fmt = parse_output_format(c.format);
  if (!c.out.empty()) {
    write_outputs(m, c.out, fmt, c.approx);
    std::cout << "wrote " << c.out << (fmt == OutputFormat::Markdown ? ".report.md" : ".manifest.json") << "\n";
    return kOk;
  }
  if (fmt == OutputFormat::Json) {
    std::cout << to_json(m).dump(2) << "\n";
  } else {
    for (const auto& r : m.reports) std::cout << to_markdown(r, c.approx);
    if (fmt == OutputFormat::Both) std::cout << "\n" << to_json(m).dump(2) << "\n";
  }
  return kOk;
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"riesz_lab: exact vector-lattice laboratory"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool with_out) {
    sub->add_option("--seed", common.seed, "Seed (overrides RIESZ_LAB_SEED and the config)");
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "md", "both"}));
    sub->add_flag("--approx", common.approx, "Append decimal renderings (non-authoritative)");
    if (with_out) sub->add_option("--out", common.out, "Output path prefix");
    sub->add_option("--dims", common.dims, "Dimension range: 2..16 (doubling), 2-16 or 2,4,8");
  };

  auto* verify = app.add_subcommand("verify", "Run the library invariant suite");
  std::size_t verify_trials = 1000;
  verify->add_option("--seed", common.seed, "Seed");
  verify->add_option("--trials", verify_trials, "Randomized checks per law");

  auto* probe = app.add_subcommand("probe", "Run one diagnostic probe");
  std::string probe_name, probe_params = "{}";
  probe->add_option("name", probe_name, "Probe name")->required();
  probe->add_option("--params", probe_params, "Probe parameters as JSON, or @file");
  add_common(probe, true);

  auto* modulus = app.add_subcommand("modulus", "Modulus of a matrix operator");
  std::string matrix_file, x_text;
  modulus->add_option("matrix", matrix_file, "MatrixOp JSON file")->required()->check(CLI::ExistingFile);
  modulus->add_option("--x", x_text, "Positive element as JSON, e.g. '[\"1\",\"1\"]'");

  auto* dominate = app.add_subcommand("dominate", "Check |T| <= |S| and compare induced norms");
  std::string s_file, t_file;
  dominate->add_option("S", s_file, "Dominating operator (JSON file)")->required()->check(CLI::ExistingFile);
  dominate->add_option("T", t_file, "Dominated operator (JSON file)")->required()->check(CLI::ExistingFile);

  auto* counter = app.add_subcommand("counterexample", "Run a canonical counterexample");
  std::string counter_name;
  counter->add_option("name", counter_name, "One of: c0-projections, l1-projections, identity-product, tents, "
                                            "ramps, l1-am")
      ->required();
  add_common(counter, true);

  auto* report = app.add_subcommand("report", "Run an experiment config");
  std::string config_file;
  bool timestamp = false;
  report->add_option("--config", config_file, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  report->add_option("--seed", common.seed, "Seed (overrides RIESZ_LAB_SEED and the config)");
  report->add_option("--out", common.out, "Output path prefix (overrides the config)");
  report->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "md", "both"}));
  report->add_flag("--approx", common.approx, "Append decimal renderings to the Markdown report");
  report->add_flag("--timestamp", timestamp, "Record the run time in the manifest (breaks byte-identity)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      VerifyOptions o;
      o.seed = common.seed.value_or(kDefaultSeed);
      o.trials = verify_trials;
      bool ok = true;
      for (const auto& r : run_invariant_suite(o)) {
        std::cout << (r.passed ? "[ok]   " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << ": " << r.detail;
        std::cout << "\n";
        ok = ok && r.passed;
      }
      return ok ? kOk : kProbeError;
    }
    if (*probe) {
      Json params;
      try {
        params = probe_params.starts_with("@") ? read_json_file(probe_params.substr(1)) : Json::parse(probe_params);
      } catch (const Json::parse_error& e) {
        throw ValidationError("--params", std::string("invalid JSON: ") + e.what());
      }
      return single_probe(probe_name, params, common);
    }
    if (*counter) {
      const Counterexample& c = find_counterexample(counter_name);
      return single_probe(c.probe, c.params, common);
    }
    if (*modulus) {
      const MatrixOp t = read_matrix(matrix_file);
      const MatrixOp m = modulus_matrix(t);
      std::cout << "|T| = " << render(to_json(m)["entries"]) << "\n";
      if (!x_text.empty()) {
        std::optional<Element> x;
        try {
          x = element_from_json(Json::parse(x_text), "--x");
        } catch (const Json::parse_error& e) {
          throw ValidationError("--x", std::string("invalid JSON: ") + e.what());
        } catch (const ParseError& e) {
          throw ValidationError("--x", e.what());
        }
        const Element via_formula = modulus_rk(t, *x);
        const Element via_matrix = apply(m, *x);
        std::cout << "|T|(x) = " << to_json(via_formula).dump() << "\n";
        if (via_formula != via_matrix) {
          std::cout << "oracle disagrees: |T| x = " << to_json(via_matrix).dump() << "\n";
          return kProbeError;
        }
        std::cout << "oracle agrees\n";
      }
      return kOk;
    }
    if (*dominate) {
      const MatrixOp s = read_matrix(s_file);
      const MatrixOp t = read_matrix(t_file);
      const DominationVerdict v = dominates(s, t);
      std::cout << "dominates: " << (v.dominates ? "yes" : "no") << "\n";
      if (!v.dominates) {
        std::cout << "first violating entry (1-based): (" << v.witness_entry->first + 1 << ", "
                  << v.witness_entry->second + 1 << ")\n";
      }
      try {
        std::cout << "induced_norm(S) = " << to_string(induced_norm(s)) << "\n";
        std::cout << "induced_norm(T) = " << to_string(induced_norm(t)) << "\n";
      } catch (const PreconditionError& e) {
        std::cout << "induced norm unavailable: " << e.what() << "\n";
      }
      return kOk;
    }
    if (*report) {
      ExperimentConfig config = load_config(config_file);
      config.seed = effective_seed(common, config.seed);
      if (!common.out.empty()) config.output = common.out;
      if (report->count("--format") > 0) config.format = parse_output_format(common.format);
      const RunManifest m = run(config);
      write_outputs(m, config.output, config.format, common.approx,
                    timestamp ? std::optional(utc_now()) : std::nullopt);
      std::size_t holds = 0, fails = 0, open = 0;
      for (const auto& r : m.reports) {
        (r.verdict == Verdict::Holds ? holds : r.verdict == Verdict::Fails ? fails : open)++;
      }
      std::cout << m.reports.size() << " probes: " << holds << " holds, " << fails << " fails, " << open
                << " inconclusive\n";
      std::cout << "config hash " << m.config_hash << "\n";
      return kOk;
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const ProbeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProbeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProbeError;
  }
  return kOk;
}
