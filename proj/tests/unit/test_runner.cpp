#include <doctest.h>

#include "riesz/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace riesz;

namespace {

std::string validation_path(const Json& config) {
  try {
    validate(parse_config(config));
  } catch (const ValidationError& e) {
    return e.path();
  }
  return "";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(Json::parse(R"({"seed": "0x10", "format": "json", "spaces": [{"kind": "SeqL1", "dim": 2}]})"));
  CHECK(c.seed == 16);
  CHECK(c.format == OutputFormat::Json);
  CHECK(c.spaces.size() == 1);
  CHECK(parse_config(Json::object()).seed == kDefaultSeed);
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"seeds": 1})")), ValidationError);
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"format": "pdf"})")), ValidationError);
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"seed": -1})")), ValidationError);
}

TEST_CASE("validation names the probe and the parameter path") {
  CHECK(validation_path(Json::parse(R"({"probes": [{"name": "foo"}]})")) == "probes[0].name");
  try {
    validate(parse_config(Json::parse(R"({"probes": [{"name": "foo"}]})")));
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("\"foo\"") != std::string::npos);
  }
  CHECK(validation_path(Json::parse(R"({"probes": [{"name": "lebesgue_probe", "params": {"family": "tents", "K": 1}}]})")) ==
        "probes[0].params.K");
  CHECK(validation_path(Json::parse(R"({"probes": [{"name": "projection_gap", "params": {"dim": 1}}]})")) ==
        "probes[0].params.dim");
  CHECK(validation_path(Json::parse(R"({"probes": [{"name": "projection_gap", "params": {"kind": "PwlSup"}}]})")) ==
        "probes[0].params.kind");
  CHECK(validation_path(Json::parse(R"({"probes": [{"name": "am_identity_check", "params": {"space": 3}}]})")) ==
        "probes[0].params.space");
  CHECK(validation_path(Json::parse(
            R"({"probes": [{"name": "levi_probe", "params": {"family": "stabilizing", "target": ["1", "-1"]}}]})")) ==
        "probes[0].params.target");
  CHECK(validation_path(Json::parse(
            R"({"probes": [{"name": "operator_levi_demo", "params": {"target": ["1"], "x0": ["0", "-1"]}}]})")) ==
        "probes[0].params.x0");
  CHECK(validation_path(Json::parse(
            R"({"probes": [{"name": "nb_boundedness", "params": {"factors": 2, "constrained": [2]}}]})")) ==
        "probes[0].params.constrained[0]");
  CHECK(validation_path(Json::parse(R"({"probes": [{"name": "projection_gap", "params": {"dimension": 4}}]})")) ==
        "probes[0].params.dimension");
  CHECK(validation_path(Json::parse(
            R"({"probes": [{"name": "product_preservation_check", "params": {"probe": "levi",
                "factors": [{"kind": "SeqLInf", "dim": 2}], "families": [{"target": ["1", "2", "3"]}]}}]})")) ==
        "probes[0].params.families[0].target");
  // A bad probe late in the list is caught before anything runs.
  CHECK(validation_path(Json::parse(R"({"probes": [{"name": "projection_gap"}, {"name": "levi_probe", "params": {}}]})")) ==
        "probes[1].params.family");
}

TEST_CASE("run produces a sorted, hashed manifest") {
  const auto c = parse_config(Json::parse(R"({
    "spaces": [{"kind": "SeqLInf", "dim": 8}],
    "probes": [
      {"name": "projection_gap", "params": {"dim": 4}},
      {"name": "am_identity_check", "params": {"space": 0, "trials": 30}}
    ]})"));
  const RunManifest m = run(c);
  REQUIRE(m.reports.size() == 2);
  CHECK(m.reports[0].probe_name == "am_identity_check");
  CHECK(m.reports[0].verdict == Verdict::Holds);
  CHECK(m.reports[1].probe_name == "projection_gap");
  CHECK(m.config_hash.size() == 64);
  CHECK(m.config_hash == config_hash(m.config));
  for (const auto& r : m.reports) CHECK(r.config_hash == m.config_hash);
  CHECK(to_json(run(c)).dump() == to_json(m).dump());

  ExperimentConfig other = c;
  other.seed = 99;
  CHECK(run(other).config_hash != m.config_hash);

  const RunManifest empty = run(parse_config(Json::parse(R"({"probes": []})")));
  CHECK(empty.reports.empty());
}

TEST_CASE("known SHA-256 digest") {
  // sha256("{}")
  CHECK(config_hash(Json::object()) == "44136fa355b3678a1146ad16f7e8649e94fb4fc21fe77e8310c060f61caaff8a");
}

TEST_CASE("outputs are written and reproducible") {
  const auto dir = std::filesystem::temp_directory_path() / "riesz_runner_test";
  std::filesystem::remove_all(dir);
  const auto c = parse_config(Json::parse(R"({"probes": [{"name": "nb_boundedness"}]})"));
  const std::string a = (dir / "a").string(), b = (dir / "b").string();
  write_outputs(run(c), a, OutputFormat::Both);
  write_outputs(run(c), b, OutputFormat::Both);
  CHECK(slurp(a + ".manifest.json") == slurp(b + ".manifest.json"));
  CHECK(slurp(a + ".report.md").find("nb_boundedness") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(a + ".manifest.json.tmp"));
  write_outputs(run(c), a, OutputFormat::Json, false, std::string("2026-01-01T00:00:00Z"));
  CHECK(Json::parse(slurp(a + ".manifest.json"))["run_timestamp"] == "2026-01-01T00:00:00Z");
  std::filesystem::remove_all(dir);
}

TEST_CASE("counterexample registry") {
  for (const auto& c : counterexamples()) {
    CHECK_NOTHROW(prepare_probe(c.probe, c.params, {}));
  }
  CHECK_THROWS_AS(find_counterexample("nope"), ValidationError);
  CHECK(find_counterexample("tents").probe == "lebesgue_probe");
}
