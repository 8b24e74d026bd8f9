#include "riesz/json_io.hpp"

namespace riesz {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

}  // namespace

Json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      fail(where, e.what());
    }
  }
  if (j.is_number_integer()) return parse_rational(std::to_string(j.get<std::int64_t>()));
  fail(where, "expected a rational string such as \"3/4\"");
}

Json to_json(const Element& x) {
  Json a = Json::array();
  for (const auto& c : x.coords()) a.push_back(to_string(c));
  return a;
}

Element element_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of rationals");
  std::vector<Rational> c;
  for (std::size_t i = 0; i < j.size(); ++i) {
    c.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return Element(std::move(c));
}

Json to_json(const FiniteSet& a) {
  Json out = Json::array();
  for (const auto& e : a) out.push_back(to_json(e));
  return out;
}

FiniteSet finite_set_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of elements");
  std::vector<Element> elems;
  for (std::size_t i = 0; i < j.size(); ++i) {
    elems.push_back(element_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  }
  try {
    return FiniteSet(std::move(elems));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Json to_json(const PwlFunc& f) {
  Json out = Json::array();
  for (const auto& p : f.breakpoints()) out.push_back(Json::array({to_string(p.t), to_string(p.v)}));
  return out;
}

PwlFunc pwl_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of [t, v] pairs");
  std::vector<Breakpoint> pts;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) fail(w, "expected a [t, v] pair");
    pts.push_back({rational_from_json(j[i][0], w + "[0]"), rational_from_json(j[i][1], w + "[1]")});
  }
  try {
    return PwlFunc(std::move(pts));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Json to_json(const Point& p) {
  if (const auto* e = std::get_if<Element>(&p)) return to_json(*e);
  if (const auto* f = std::get_if<PwlFunc>(&p)) return to_json(*f);
  Json factors = Json::array();
  for (const auto& v : std::get<ProductElement>(p).factors) {
    factors.push_back(std::visit([](const auto& x) { return to_json(x); }, v));
  }
  return Json{{"factors", factors}};
}

Point point_from_json(const Json& j, const std::string& where) {
  if (j.is_object()) {
    if (!j.contains("factors") || !j["factors"].is_array()) fail(where, "expected {\"factors\": [...]}");
    ProductElement p;
    for (std::size_t i = 0; i < j["factors"].size(); ++i) {
      Point f = point_from_json(j["factors"][i], where + ".factors[" + std::to_string(i) + "]");
      if (const auto* e = std::get_if<Element>(&f)) {
        p.factors.emplace_back(*e);
      } else if (const auto* g = std::get_if<PwlFunc>(&f)) {
        p.factors.emplace_back(*g);
      } else {
        fail(where, "nested products are not supported");
      }
    }
    return p;
  }
  if (j.is_array() && !j.empty() && j[0].is_array()) return pwl_from_json(j, where);
  return element_from_json(j, where);
}

Json to_json(const SpaceTag& t) {
  Json j{{"kind", to_string(t.kind())}};
  switch (t.kind()) {
    case SpaceKind::SeqL1:
    case SpaceKind::SeqLInf:
      j["dim"] = t.dim();
      break;
    case SpaceKind::WeightedL1: {
      Json w = Json::array();
      for (const auto& x : t.weights()) w.push_back(to_string(x));
      j["weights"] = w;
      break;
    }
    case SpaceKind::Product: {
      Json f = Json::array();
      for (const auto& x : t.factors()) f.push_back(to_json(x));
      j["factors"] = f;
      break;
    }
    default: break;
  }
  return j;
}

SpaceTag space_tag_from_json(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    fail(where, "expected an object with a \"kind\" string");
  }
  SpaceKind kind;
  try {
    kind = parse_space_kind(j["kind"].get<std::string>());
  } catch (const ParseError& e) {
    fail(where + ".kind", e.what());
  }
  try {
    switch (kind) {
      case SpaceKind::SeqL1:
      case SpaceKind::SeqLInf: {
        if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
          fail(where + ".dim", "expected a positive integer");
        }
        return SpaceTag::sequence(kind, j["dim"].get<std::size_t>());
      }
      case SpaceKind::WeightedL1: {
        if (!j.contains("weights") || !j["weights"].is_array()) fail(where + ".weights", "expected an array");
        std::vector<Rational> w;
        for (std::size_t i = 0; i < j["weights"].size(); ++i) {
          w.push_back(rational_from_json(j["weights"][i], where + ".weights[" + std::to_string(i) + "]"));
        }
        return SpaceTag::weighted_l1(std::move(w));
      }
      case SpaceKind::PwlSup: return SpaceTag::pwl_sup();
      case SpaceKind::PwlL1: return SpaceTag::pwl_l1();
      case SpaceKind::Product: {
        if (!j.contains("factors") || !j["factors"].is_array()) fail(where + ".factors", "expected an array");
        std::vector<SpaceTag> f;
        for (std::size_t i = 0; i < j["factors"].size(); ++i) {
          f.push_back(space_tag_from_json(j["factors"][i], where + ".factors[" + std::to_string(i) + "]"));
        }
        return make_product(std::move(f));
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "unsupported kind");
}

Json to_json(const NeighborhoodSpec& u) {
  if (u.is_ball()) return Json{{"radius", to_string(u.radius())}};
  Json c = Json::object();
  for (const auto& [i, r] : u.constraints()) c[std::to_string(i)] = Json{{"radius", to_string(r)}};
  return Json{{"constraints", c}};
}

NeighborhoodSpec neighborhood_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  try {
    if (j.contains("radius")) return NeighborhoodSpec::ball(rational_from_json(j["radius"], where + ".radius"));
    if (j.contains("constraints") && j["constraints"].is_object()) {
      std::map<std::size_t, Rational> radii;
      for (const auto& [key, val] : j["constraints"].items()) {
        const std::string w = where + ".constraints." + key;
        std::size_t idx = 0;
        try {
          std::size_t used = 0;
          idx = std::stoul(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          fail(w, "factor index must be a nonnegative integer");
        }
        if (!val.is_object() || !val.contains("radius")) fail(w, "expected {\"radius\": ...}");
        radii[idx] = rational_from_json(val["radius"], w + ".radius");
      }
      return NeighborhoodSpec::product(std::move(radii));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "expected \"radius\" or \"constraints\"");
}

Json to_json(const MatrixOp& t) {
  Json rows = Json::array();
  for (const auto& r : t.to_rows()) {
    Json row = Json::array();
    for (const auto& v : r) row.push_back(to_string(v));
    rows.push_back(row);
  }
  return Json{{"entries", rows}, {"domain", to_json(t.domain())}, {"range", to_json(t.range())}};
}

namespace {

SpaceTag tag_for(const Json& j, std::size_t dim, const std::string& where) {
  if (j.is_string()) {
    SpaceKind k;
    try {
      k = parse_space_kind(j.get<std::string>());
    } catch (const ParseError& e) {
      fail(where, e.what());
    }
    if (k == SpaceKind::Product || k == SpaceKind::PwlSup || k == SpaceKind::PwlL1) {
      fail(where, "kind \"" + j.get<std::string>() + "\" needs a full tag object");
    }
    return SpaceTag::sequence(k, dim);
  }
  return space_tag_from_json(j, where);
}

}  // namespace

MatrixOp matrix_from_json(const Json& j, const std::string& where) {
  const Json& entries = j.is_object() ? (j.contains("entries") ? j["entries"] : Json()) : j;
  if (!entries.is_array() || entries.empty()) fail(where + ".entries", "expected a nonempty 2-D array");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string w = where + ".entries[" + std::to_string(i) + "]";
    if (!entries[i].is_array() || entries[i].empty()) fail(w, "expected a nonempty row");
    std::vector<Rational> row;
    for (std::size_t k = 0; k < entries[i].size(); ++k) {
      row.push_back(rational_from_json(entries[i][k], w + "[" + std::to_string(k) + "]"));
    }
    rows.push_back(std::move(row));
  }
  const std::size_t m = rows.size();
  const std::size_t n = rows.front().size();
  SpaceTag domain = SpaceTag::seq_linf(n);
  SpaceTag range = SpaceTag::seq_linf(m);
  if (j.is_object()) {
    if (j.contains("domain")) domain = tag_for(j["domain"], n, where + ".domain");
    if (j.contains("range")) range = tag_for(j["range"], m, where + ".range");
  }
  try {
    return MatrixOp(std::move(rows), std::move(domain), std::move(range));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

}  // namespace riesz
