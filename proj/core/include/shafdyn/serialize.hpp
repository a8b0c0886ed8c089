#ifndef SHAFDYN_SERIALIZE_HPP
#define SHAFDYN_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "shafdyn/arith.hpp"
#include "shafdyn/dynamics.hpp"
#include "shafdyn/projective.hpp"
#include "shafdyn/shafarevich.hpp"

namespace shafdyn {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "shafdyn/1";

/// JSON integer when it fits in int64, else its decimal string. Never a float.
Json integer_json(const Integer& n);
/// Decimal string "p/q" or "n".
Json rational_json(const Rational& x);

Json to_json(const ProjPoint& p);
Json to_json(const PointSet& V);
Json to_json(const ProjLinearMap& f);
Json to_json(const SIdeal& ideal);
Json to_json(const MorphismPN& phi);
Json to_json(const OrbitRecord& orbit);
Json to_json(const ReductionReport& report);
Json to_json(const ClassPReport& report);
Json to_json(const DecomposableForm& F);
Json to_json(const IsoResult& result);
Json to_json(const TwistRecord& record);
Json to_json(const TwistEnumeration& twists);

/// Accepts a JSON array of coordinate arrays (entries integers or rational
/// strings), or text such as "{(0:1), (1:1), (1:0)}" with ';' or ',' between
/// points. ParseError on malformed input.
PointSet parse_point_set(const std::string& text);
PointSet point_set_from_json(const Json& j);

/// Accepts "F0; F1; ..." or a JSON object {"forms": ["F0", ...]}.
MorphismPN parse_morphism(const std::string& text);
MorphismPN morphism_from_json(const Json& j);

/// "2,3" -> {inf, 2, 3}; empty text is {inf}.
PlaceSet parse_place_set(const std::string& text);

}  // namespace shafdyn

#endif  // SHAFDYN_SERIALIZE_HPP
