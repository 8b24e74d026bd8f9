#include "riesz/runner.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace riesz {

OutputFormat parse_output_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "md" || s == "markdown") return OutputFormat::Markdown;
  if (s == "both") return OutputFormat::Both;
  throw ValidationError("format", "expected json, md or both, got \"" + s + "\"");
}

namespace {

std::uint64_t parse_seed(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<std::uint64_t>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s, &used, 0);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw ValidationError(path, "expected a non-negative 64-bit integer");
}

SpaceTag tag_from(const Json& j, const std::vector<SpaceTag>& spaces, const std::string& path) {
  if (j.is_number_integer()) {
    const auto i = j.get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= spaces.size()) {
      throw ValidationError(path, "space index " + std::to_string(i) + " out of range (" +
                                      std::to_string(spaces.size()) + " spaces declared)");
    }
    return spaces[static_cast<std::size_t>(i)];
  }
  try {
    return space_tag_from_json(j, path);
  } catch (const ParseError& e) {
    throw ValidationError(path, e.what());
  } catch (const PreconditionError& e) {
    throw ValidationError(path, e.what());
  }
}

// Typed reader over one probe's parameter object. Every key must be read;
// leftovers are reported by finish().
class Params {
 public:
  Params(const Json& j, std::string path, const std::vector<SpaceTag>& spaces)
      : j_(j), path_(std::move(path)), spaces_(spaces) {
    if (!j_.is_object()) throw ValidationError(path_, "parameters must be an object");
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }
  bool has(const std::string& key) const { return j_.contains(key); }

  const Json* get(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const Json& require(const std::string& key) {
    const Json* v = get(key);
    if (!v) throw ValidationError(at(key), "required");
    return *v;
  }

  std::uint64_t integer(const std::string& key, std::optional<std::uint64_t> def, std::uint64_t lo,
                        std::uint64_t hi) {
    const Json* v = get(key);
    if (!v) {
      if (!def) throw ValidationError(at(key), "required");
      return *def;
    }
    if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<std::int64_t>() < 0)) {
      throw ValidationError(at(key), "expected a non-negative integer");
    }
    const auto n = v->get<std::uint64_t>();
    if (n < lo || n > hi) {
      throw ValidationError(at(key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                                         std::to_string(n));
    }
    return n;
  }

  Rational rational(const std::string& key, std::optional<Rational> def) {
    const Json* v = get(key);
    if (!v) {
      if (!def) throw ValidationError(at(key), "required");
      return *def;
    }
    try {
      return rational_from_json(*v, at(key));
    } catch (const ParseError& e) {
      throw ValidationError(at(key), e.what());
    }
  }

  std::string choice(const std::string& key, std::optional<std::string> def, const std::vector<std::string>& allowed) {
    const Json* v = get(key);
    std::string s;
    if (!v) {
      if (!def) throw ValidationError(at(key), "required");
      s = *def;
    } else {
      if (!v->is_string()) throw ValidationError(at(key), "expected a string");
      s = v->get<std::string>();
    }
    if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ValidationError(at(key), "unknown value \"" + s + "\" (expected one of: " + list + ")");
    }
    return s;
  }

  SpaceKind kind(const std::string& key, std::optional<SpaceKind> def, const std::vector<SpaceKind>& allowed) {
    std::vector<std::string> names;
    for (auto k : allowed) names.push_back(to_string(k));
    return parse_space_kind(choice(key, def ? std::optional(to_string(*def)) : std::nullopt, names));
  }

  SpaceTag tag(const std::string& key) { return tag_from(require(key), spaces_, at(key)); }

  std::vector<SpaceTag> tags(const std::string& key) {
    const Json& v = require(key);
    if (!v.is_array() || v.empty()) throw ValidationError(at(key), "expected a non-empty array of spaces");
    std::vector<SpaceTag> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(tag_from(v[i], spaces_, at(key) + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  Element element(const std::string& key) {
    try {
      return element_from_json(require(key), at(key));
    } catch (const ParseError& e) {
      throw ValidationError(at(key), e.what());
    } catch (const PreconditionError& e) {
      throw ValidationError(at(key), e.what());
    }
  }

  std::vector<std::uint64_t> integers(const std::string& key, std::uint64_t lo, std::uint64_t hi) {
    const Json& v = require(key);
    if (!v.is_array() || v.empty()) throw ValidationError(at(key), "expected a non-empty array of integers");
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string p = at(key) + "[" + std::to_string(i) + "]";
      if (!v[i].is_number_unsigned() && !(v[i].is_number_integer() && v[i].get<std::int64_t>() >= 0)) {
        throw ValidationError(p, "expected a non-negative integer");
      }
      const auto n = v[i].get<std::uint64_t>();
      if (n < lo || n > hi) {
        throw ValidationError(p, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      }
      out.push_back(n);
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.contains(key)) throw ValidationError(at(key), "unknown parameter");
    }
  }

  const std::string& path() const { return path_; }
  const std::vector<SpaceTag>& spaces() const { return spaces_; }

 private:
  const Json& j_;
  std::string path_;
  const std::vector<SpaceTag>& spaces_;
  std::set<std::string> seen_;
};

constexpr std::uint64_t kMaxK = 4096;
const Rational kDefaultThreshold = pow2(-20);

void require_positive_target(const Element& target, const std::string& path) {
  if (!is_positive(target)) throw ValidationError(path, "target must be positive");
}

// An increasing family on a coordinate lattice: stabilizing or geometric.
SequenceFamily increasing_family(Params& p, SpaceKind kind) {
  const std::string family = p.choice("family", "stabilizing", {"stabilizing", "geometric"});
  const Element target = p.element("target");
  require_positive_target(target, p.at("target"));
  if (family == "geometric") {
    if (p.has("steps")) throw ValidationError(p.at("steps"), "only used by the stabilizing family");
    return SequenceFamily::geometric(target, kind);
  }
  const auto steps = p.integer("steps", 3, 1, kMaxK);
  return SequenceFamily::stabilizing(target, steps, kind);
}

PreparedProbe prep_am_identity(Params& p) {
  const SpaceTag tag = p.tag("space");
  if (tag.is_product()) throw ValidationError(p.at("space"), "needs a norm tag, not a product");
  const auto trials = p.integer("trials", 200, 1, 100000);
  p.finish();
  return {"am_identity_check", "",
          [tag, trials](std::uint64_t seed) { return am_identity_check(tag, trials, seed); }};
}

PreparedProbe prep_am_defect(Params& p) {
  const std::vector<SpaceKind> kinds = {SpaceKind::SeqL1, SpaceKind::SeqLInf, SpaceKind::WeightedL1,
                                        SpaceKind::PwlSup, SpaceKind::PwlL1};
  const SpaceKind kind = p.kind("kind", std::nullopt, kinds);
  const auto dims = p.integers("dims", 1, 256);
  SamplingSpec spec;
  spec.trials = p.integer("trials", 200, 0, 10000);
  spec.set_size = p.integer("set_size", 4, 1, 12);
  p.finish();
  const std::vector<std::size_t> ds(dims.begin(), dims.end());
  return {"am_defect_curve", "", [kind, ds, spec](std::uint64_t seed) {
            SamplingSpec s = spec;
            s.seed = seed;
            return am_defect_curve(kind, ds, s);
          }};
}

PreparedProbe prep_lebesgue(Params& p) {
  const std::string family = p.choice("family", std::nullopt, {"tents", "c0_tails"});
  const auto k = p.integer("K", 64, 2, kMaxK);
  const Rational threshold = p.rational("threshold", kDefaultThreshold);
  if (sgn(threshold) < 0) throw ValidationError(p.at("threshold"), "must be non-negative");
  SequenceFamily fam;
  if (family == "tents") {
    if (p.has("dim")) throw ValidationError(p.at("dim"), "only used by c0_tails");
    fam = SequenceFamily::tents();
  } else {
    fam = SequenceFamily::c0_tails(p.integer("dim", k, 1, 4096));
  }
  p.finish();
  return {"lebesgue_probe", "", [fam, k, threshold](std::uint64_t) { return lebesgue_probe(fam, k, threshold); }};
}

PreparedProbe prep_levi(Params& p) {
  const std::string family = p.choice("family", std::nullopt, {"ramps", "stabilizing", "geometric"});
  const auto k = p.integer("K", 64, 2, kMaxK);
  SequenceFamily fam;
  if (family == "ramps") {
    fam = SequenceFamily::ramps();
  } else {
    const SpaceKind kind = p.kind("kind", SpaceKind::SeqLInf, {SpaceKind::SeqL1, SpaceKind::SeqLInf});
    fam = increasing_family(p, kind);
  }
  p.finish();
  return {"levi_probe", "", [fam, k](std::uint64_t) { return levi_probe(fam, k); }};
}

PreparedProbe prep_projection_gap(Params& p) {
  const auto dim = p.integer("dim", 16, 2, 512);
  const SpaceKind kind = p.kind("kind", SpaceKind::SeqLInf, {SpaceKind::SeqL1, SpaceKind::SeqLInf});
  p.finish();
  return {"projection_gap", "", [dim, kind](std::uint64_t) { return projection_gap(dim, kind); }};
}

PreparedProbe prep_product(Params& p) {
  const std::string probe = p.choice("probe", std::nullopt, {"am", "levi"});
  const auto tags = p.tags("factors");
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i].is_product()) {
      throw ValidationError(p.at("factors") + "[" + std::to_string(i) + "]", "factors may not be products");
    }
  }
  PreservationParams params;
  if (probe == "am") {
    params.sampling.trials = p.integer("trials", 200, 0, 100000);
  } else {
    params.k_max = p.integer("K", 16, 2, kMaxK);
    const Json& fams = p.require("families");
    if (!fams.is_array() || fams.size() != tags.size()) {
      throw ValidationError(p.at("families"), "expected one family per factor (" + std::to_string(tags.size()) + ")");
    }
    for (std::size_t i = 0; i < fams.size(); ++i) {
      Params fp(fams[i], p.at("families") + "[" + std::to_string(i) + "]", p.spaces());
      const std::string fpath = fp.path();
      if (tags[i].kind() == SpaceKind::PwlSup) {
        fp.choice("family", std::nullopt, {"ramps"});
        params.families.push_back(SequenceFamily::ramps());
      } else if (tags[i].kind() == SpaceKind::SeqL1 || tags[i].kind() == SpaceKind::SeqLInf) {
        SequenceFamily f = increasing_family(fp, tags[i].kind());
        if (!(f.space == tags[i])) {
          throw ValidationError(fpath + ".target", "dimension does not match factor " + tags[i].name());
        }
        params.families.push_back(std::move(f));
      } else {
        throw ValidationError(p.at("factors") + "[" + std::to_string(i) + "]",
                              "levi preservation supports SeqL1, SeqLInf and PwlSup factors");
      }
      fp.finish();
    }
  }
  p.finish();
  const PreservationProbe which = probe == "am" ? PreservationProbe::Am : PreservationProbe::Levi;
  return {"product_preservation_check", "", [tags, which, params](std::uint64_t seed) {
            PreservationParams q = params;
            q.sampling.seed = seed;
            return product_preservation_check(tags, which, q);
          }};
}

PreparedProbe prep_operator_levi(Params& p) {
  const SpaceKind kind = p.kind("kind", SpaceKind::SeqLInf, {SpaceKind::SeqL1, SpaceKind::SeqLInf});
  const SequenceFamily fam = increasing_family(p, kind);
  const Element x0 = p.element("x0");
  bool has_positive = false;
  for (std::size_t i = 0; i < x0.dim(); ++i) has_positive = has_positive || sgn(x0[i]) > 0;
  if (!has_positive) throw ValidationError(p.at("x0"), "needs a strictly positive coordinate");
  const auto k = p.integer("K", 20, 2, kMaxK);
  p.finish();
  return {"operator_levi_demo", "", [fam, x0, k](std::uint64_t) { return operator_levi_demo(fam, x0, k); }};
}

PreparedProbe prep_operator_lebesgue(Params& p) {
  const std::string family = p.choice("family", "geometric_identity", {"geometric_identity", "geometric_diagonal"});
  const auto dim = p.integer("dim", 4, 1, 64);
  const SpaceKind kind = p.kind("kind", SpaceKind::SeqLInf, {SpaceKind::SeqL1, SpaceKind::SeqLInf});
  const auto k = p.integer("K", 30, 2, 1024);
  const Rational threshold = p.rational("threshold", kDefaultThreshold);
  if (sgn(threshold) < 0) throw ValidationError(p.at("threshold"), "must be non-negative");
  p.finish();
  const OperatorSeq seq = family == "geometric_identity" ? geometric_identity_seq(dim, kind)
                                                         : geometric_diagonal_seq(dim, kind);
  const SpaceTag tag = SpaceTag::sequence(kind, dim);
  return {"operator_lebesgue_demo", "",
          [seq, tag, k, threshold](std::uint64_t) { return operator_lebesgue_demo(seq, tag, k, threshold); }};
}

PreparedProbe prep_nb(Params& p) {
  const auto factors = p.integer("factors", 3, 1, 16);
  const auto factor_dim = p.integer("factor_dim", 2, 1, 16);
  std::vector<std::size_t> constrained;
  if (p.has("constrained")) {
    for (auto i : p.integers("constrained", 0, factors - 1)) {
      if (std::find(constrained.begin(), constrained.end(), i) != constrained.end()) {
        throw ValidationError(p.at("constrained"), "duplicate factor index " + std::to_string(i));
      }
      constrained.push_back(i);
    }
  } else {
    p.get("constrained");
  }
  p.finish();
  return {"nb_boundedness", "", [factors, factor_dim, constrained](std::uint64_t) {
            return nb_boundedness_probe(factors, factor_dim, constrained);
          }};
}

using Preparer = PreparedProbe (*)(Params&);

const std::map<std::string, Preparer>& registry() {
  static const std::map<std::string, Preparer> r = {
      {"am_defect_curve", prep_am_defect},
      {"am_identity_check", prep_am_identity},
      {"lebesgue_probe", prep_lebesgue},
      {"levi_probe", prep_levi},
      {"nb_boundedness", prep_nb},
      {"operator_lebesgue_demo", prep_operator_lebesgue},
      {"operator_levi_demo", prep_operator_levi},
      {"product_preservation_check", prep_product},
      {"projection_gap", prep_projection_gap},
  };
  return r;
}

}  // namespace

std::vector<std::string> probe_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : registry()) out.push_back(name);
  return out;
}

PreparedProbe prepare_probe(const std::string& name, const Json& params, const std::vector<SpaceTag>& spaces,
                            const std::string& path) {
  const auto it = registry().find(name);
  if (it == registry().end()) {
    std::string list;
    for (const auto& n : probe_names()) list += (list.empty() ? "" : ", ") + n;
    throw ValidationError(path, "unknown probe \"" + name + "\" (known: " + list + ")");
  }
  Params p(params, path, spaces);
  PreparedProbe prepared = it->second(p);
  prepared.label = name;
  return prepared;
}

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ValidationError("config", "expected a JSON object");
  static const std::set<std::string> keys = {"seed", "output", "format", "spaces", "probes"};
  for (const auto& [key, _] : j.items()) {
    if (!keys.contains(key)) throw ValidationError(key, "unknown config key");
  }
  ExperimentConfig c;
  c.source = j;
  if (j.contains("seed")) c.seed = parse_seed(j["seed"], "seed");
  if (j.contains("output")) {
    if (!j["output"].is_string() || j["output"].get<std::string>().empty()) {
      throw ValidationError("output", "expected a non-empty path prefix");
    }
    c.output = j["output"].get<std::string>();
  }
  if (j.contains("format")) {
    if (!j["format"].is_string()) throw ValidationError("format", "expected a string");
    c.format = parse_output_format(j["format"].get<std::string>());
  }
  if (j.contains("spaces")) {
    if (!j["spaces"].is_array()) throw ValidationError("spaces", "expected an array");
    for (std::size_t i = 0; i < j["spaces"].size(); ++i) {
      const std::string path = "spaces[" + std::to_string(i) + "]";
      if (j["spaces"][i].is_number_integer()) throw ValidationError(path, "expected a space object");
      c.spaces.push_back(tag_from(j["spaces"][i], {}, path));
    }
  }
  if (j.contains("probes")) {
    if (!j["probes"].is_array()) throw ValidationError("probes", "expected an array");
    for (std::size_t i = 0; i < j["probes"].size(); ++i) {
      const Json& e = j["probes"][i];
      const std::string path = "probes[" + std::to_string(i) + "]";
      if (!e.is_object()) throw ValidationError(path, "expected an object");
      for (const auto& [key, _] : e.items()) {
        if (key != "name" && key != "label" && key != "params") throw ValidationError(path + "." + key, "unknown key");
      }
      if (!e.contains("name") || !e["name"].is_string()) throw ValidationError(path + ".name", "required string");
      ProbeEntry entry;
      entry.name = e["name"].get<std::string>();
      entry.label = entry.name;
      if (e.contains("label")) {
        if (!e["label"].is_string()) throw ValidationError(path + ".label", "expected a string");
        entry.label = e["label"].get<std::string>();
      }
      if (e.contains("params")) entry.params = e["params"];
      c.probes.push_back(std::move(entry));
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path, "cannot open config file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path, std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

std::vector<PreparedProbe> validate(const ExperimentConfig& config) {
  std::vector<PreparedProbe> out;
  for (std::size_t i = 0; i < config.probes.size(); ++i) {
    const auto& e = config.probes[i];
    const std::string path = "probes[" + std::to_string(i) + "]";
    if (!registry().contains(e.name)) {
      // Name the offending probe, anchored at its entry.
      prepare_probe(e.name, e.params, config.spaces, path + ".name");
    }
    PreparedProbe p = prepare_probe(e.name, e.params, config.spaces, path + ".params");
    p.label = e.label;
    out.push_back(std::move(p));
  }
  return out;
}

std::string config_hash(const Json& config) {
  const std::string canonical = config.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

Json canonical_config(const ExperimentConfig& config) {
  Json j = config.source.is_object() ? config.source : Json::object();
  j["seed"] = config.seed;
  return j;
}

RunManifest run(const ExperimentConfig& config) {
  const auto prepared = validate(config);
  RunManifest m;
  m.config = canonical_config(config);
  m.config_hash = config_hash(m.config);
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    const auto& p = prepared[i];
    const std::uint64_t seed = derive_seed(config.seed, "probe:" + std::to_string(i) + ":" + p.name);
    ProbeReport r;
    try {
      r = p.run(seed);
      check_report(r);
    } catch (const std::exception& e) {
      throw ProbeError(p.label, e.what());
    }
    r.seed = seed;
    r.config_hash = m.config_hash;
    if (p.label != p.name) r.notes.insert(r.notes.begin(), "label: " + p.label);
    m.reports.push_back(std::move(r));
  }
  std::stable_sort(m.reports.begin(), m.reports.end(),
                   [](const ProbeReport& a, const ProbeReport& b) { return a.probe_name < b.probe_name; });
  return m;
}

Json to_json(const RunManifest& m) {
  Json reports = Json::array();
  for (const auto& r : m.reports) reports.push_back(to_json(r));
  return Json{{"config_hash", m.config_hash}, {"tool_version", m.tool_version}, {"config", m.config},
              {"reports", reports}};
}

std::string to_markdown(const RunManifest& m, bool approx) {
  std::ostringstream os;
  os << "# riesz_lab report\n\n";
  os << "- tool version: " << m.tool_version << "\n";
  os << "- config hash: `" << m.config_hash << "`\n";
  os << "- probes: " << m.reports.size() << "\n";
  os << "- all values are exact rationals";
  if (approx) os << "; decimal columns are approximate and non-authoritative";
  os << "\n- equicontinuous-convergence questions are not probed; the Frechet-space route is not mechanized\n";
  for (const auto& r : m.reports) os << "\n" << to_markdown(r, approx);
  return os.str();
}

namespace {

void write_atomic(const std::filesystem::path& target, const std::string& content) {
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace

void write_outputs(const RunManifest& m, const std::string& prefix, OutputFormat format, bool approx,
                   const std::optional<std::string>& timestamp) {
  if (format != OutputFormat::Markdown) {
    Json j = to_json(m);
    if (timestamp) j["run_timestamp"] = *timestamp;
    write_atomic(prefix + ".manifest.json", j.dump(2) + "\n");
  }
  if (format != OutputFormat::Json) write_atomic(prefix + ".report.md", to_markdown(m, approx));
}

const std::vector<Counterexample>& counterexamples() {
  static const std::vector<Counterexample> list = {
      {"c0-projections", "projection_gap", {{"dim", 16}, {"kind", "SeqLInf"}}},
      {"l1-projections", "projection_gap", {{"dim", 16}, {"kind", "SeqL1"}}},
      {"identity-product", "nb_boundedness", {{"factors", 3}, {"factor_dim", 2}, {"constrained", {0, 1}}}},
      {"tents", "lebesgue_probe", {{"family", "tents"}, {"K", 64}, {"threshold", "1/1048576"}}},
      {"ramps", "levi_probe", {{"family", "ramps"}, {"K", 64}}},
      {"l1-am", "am_defect_curve", {{"kind", "SeqL1"}, {"dims", {2, 4, 8, 16}}}},
  };
  return list;
}

const Counterexample& find_counterexample(const std::string& name) {
  for (const auto& c : counterexamples()) {
    if (c.name == name) return c;
  }
  std::string list;
  for (const auto& c : counterexamples()) list += (list.empty() ? "" : ", ") + c.name;
  throw ValidationError("counterexample", "unknown name \"" + name + "\" (known: " + list + ")");
}

}  // namespace riesz
