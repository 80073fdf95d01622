#pragma once

#include "arithdyn/dynamics_finite.hpp"
#include "arithdyn/dynamics_rational.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/morphism.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace arithdyn {

using Json = nlohmann::ordered_json;

/// ["3","5"]
Json to_json(const ProjPointQ& x);
/// Accepts an array of integers, integer strings or rational strings ("3/4").
ProjPointQ point_from_json(const Json& j);
/// Either a JSON array or a comma-separated list of rationals ("1/2,1").
/// "inf" is accepted for (1:0) on P^1.
ProjPointQ parse_point(std::string_view text);

/// {"p":3,"r":2,"modulus":[1,0,1]}
Json to_json(const FiniteField& F);
/// Coordinates as residue coefficient lists (low to high) plus a display string.
Json to_json(const ProjPointF& u);

/// [{"exps":[2,0],"coeff":"1"}, ...]
Json to_json(const HomogeneousForm& g);
/// Accepts a term list (degree taken from the first term) or
/// {"n_vars":3,"degree":2,"terms":[...]}.
HomogeneousForm form_from_json(const Json& j);

/// {"dim":1,"degree":2,"forms":[[...],[...]]}
Json to_json(const ProjMorphism& f);
/// Accepts the morphism layout above or {"polynomial":["c0","c1",...]}
/// for x -> sum c_i x^i. Validates; invalid maps throw InvalidInput.
ProjMorphism morphism_from_json(const Json& j);

Json to_json(const ValidityCertificate& c);
Json to_json(const HeightEstimate& h);
Json to_json(const OrbitRecord& r);
Json to_json(const ComparisonConstant& cc);

/// Parses text as JSON, throwing InvalidInput with the parser message.
Json parse_json(std::string_view text);
Json read_json_file(const std::string& path);

}  // namespace arithdyn
