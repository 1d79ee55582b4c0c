#pragma once

#include <string>

#include <json.hpp>

#include "skewlab/constructions.hpp"
#include "skewlab/padic.hpp"
#include "skewlab/relative.hpp"
#include "skewlab/skew_product.hpp"
#include "skewlab/step_function.hpp"
#include "skewlab/translation_skew.hpp"

namespace skew::io {

using Json = nlohmann::json;

// Rationals travel as "num/den" strings. Parsers throw ParseError naming the
// offending field.
Rational rational_from_json(const Json& j, const std::string& field);

Json to_json(const PAdicPermutation& perm);
PAdicPermutation permutation_from_json(const Json& j);

Json to_json(const StepFunctionX& f);
StepFunctionX step_x_from_json(const Json& j);
Json to_json(const StepFunctionZ& f);
StepFunctionZ step_z_from_json(const Json& j);

Json to_json(const SkewProduct& t);
SkewProduct skew_from_json(const Json& j);

// {"p", "base": {...}, "assignment": [...], "maps": [...]}, each map one of
// {"pieces": [[start, end, shift], ...]}, {"rotation": "a/b"} or
// {"rank": r, "perm": [...]}.
Json to_json(const IntervalMap& m);
IntervalMap interval_map_from_json(const Json& j, int p);
Json to_json(const TranslationSkew& t);
TranslationSkew translation_skew_from_json(const Json& j);

Json to_json(const RokhlinTower& tower);

Json certificate_json(long levels_verified, const Rational& bound, const Rational& weak_distance);

Json to_json(const DefectReport& report);
// Header "n,defect_sq" (plus ",defect_sq_decimal" when requested).
std::string to_csv(const DefectReport& report, bool decimal_column = false);

// Compact, key-sorted dump: the canonical byte form.
std::string canonical(const Json& j);

}  // namespace skew::io
