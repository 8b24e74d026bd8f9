#pragma once

#include "riesz/operators.hpp"
#include "riesz/space.hpp"

#include "json.hpp"

namespace riesz {

using Json = nlohmann::json;

// Wire formats. Rationals are canonical "p/q" strings; an element is an
// array of them; a pwl function is an array of [t, v] pairs; a finite set
// is an array of elements; a product element is {"factors": [...]}.
// Every *_from_json throws ParseError with the offending location.

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& where = "value");

Json to_json(const Element& x);
Element element_from_json(const Json& j, const std::string& where = "element");

Json to_json(const FiniteSet& a);
FiniteSet finite_set_from_json(const Json& j, const std::string& where = "set");

Json to_json(const PwlFunc& f);
PwlFunc pwl_from_json(const Json& j, const std::string& where = "function");

Json to_json(const Point& p);
Point point_from_json(const Json& j, const std::string& where = "point");

/// {"kind": "SeqL1", "dim": 4}, {"kind": "WeightedL1", "weights": [...]},
/// {"kind": "PwlSup"}, {"kind": "Product", "factors": [...]}. A bare kind
/// string is accepted where the dimension can be inferred by the caller.
Json to_json(const SpaceTag& t);
SpaceTag space_tag_from_json(const Json& j, const std::string& where = "space");

/// {"radius": "1"} or {"constraints": {"0": {"radius": "1"}, ...}}.
Json to_json(const NeighborhoodSpec& u);
NeighborhoodSpec neighborhood_from_json(const Json& j, const std::string& where = "neighborhood");

/// {"entries": [[...], ...], "domain": tag, "range": tag}. Tags may be kind
/// strings ("SeqL1") or full tag objects; a bare 2-D array means SeqLInf.
Json to_json(const MatrixOp& t);
MatrixOp matrix_from_json(const Json& j, const std::string& where = "operator");

}  // namespace riesz
