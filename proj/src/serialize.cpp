#include "skewlab/serialize.hpp"

#include <sstream>

#include "skewlab/errors.hpp"

namespace skew::io {

namespace {

const Json& field_of(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError("missing field '" + where + key + "'");
  }
  return j.at(key);
}

long int_field(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = field_of(j, key, where);
  if (!v.is_number_integer()) throw ParseError("field '" + where + key + "' must be an integer");
  return v.get<long>();
}

std::vector<Index> index_array(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError("field '" + field + "' must be an array");
  std::vector<Index> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long>() < 0) {
      throw ParseError("field '" + field + "' must hold non-negative integers");
    }
    out.push_back(v.get<Index>());
  }
  return out;
}

template <class F>
auto wrap(const std::string& field, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("invalid '" + field + "': " + e.what());
  }
}

Json rational_array(std::span<const Rational> values) {
  Json a = Json::array();
  for (const auto& v : values) a.push_back(v.str());
  return a;
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ParseError("field '" + field + "' must be a \"num/den\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError("field '" + field + "': " + e.what());
  }
}

std::string canonical(const Json& j) { return j.dump(); }

// ---------------------------------------------------------------------------

Json to_json(const PAdicPermutation& perm) {
  return Json{{"p", perm.p()}, {"rank", perm.rank()},
              {"perm", std::vector<Index>(perm.mapping().begin(), perm.mapping().end())}};
}

PAdicPermutation permutation_from_json(const Json& j) {
  const int p = static_cast<int>(int_field(j, "p", ""));
  const int rank = static_cast<int>(int_field(j, "rank", ""));
  auto perm = index_array(field_of(j, "perm", ""), "perm");
  return wrap("perm", [&] { return PAdicPermutation(p, rank, std::move(perm)); });
}

Json to_json(const StepFunctionX& f) {
  return Json{{"p", f.p()}, {"rank", f.rank()}, {"values", rational_array(f.values())}};
}

StepFunctionX step_x_from_json(const Json& j) {
  const int p = static_cast<int>(int_field(j, "p", ""));
  const int rank = static_cast<int>(int_field(j, "rank", ""));
  const Json& vals = field_of(j, "values", "");
  if (!vals.is_array()) throw ParseError("field 'values' must be an array");
  std::vector<Rational> v;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    v.push_back(rational_from_json(vals[i], "values[" + std::to_string(i) + "]"));
  }
  return wrap("values", [&] { return StepFunctionX(p, rank, std::move(v)); });
}

Json to_json(const StepFunctionZ& f) {
  Json rows = Json::array();
  for (Index i = 0; i < f.side(); ++i) rows.push_back(rational_array(f.values().subspan(i * f.side(), f.side())));
  return Json{{"p", f.p()}, {"rank", f.rank()}, {"values", rows}};
}

StepFunctionZ step_z_from_json(const Json& j) {
  const int p = static_cast<int>(int_field(j, "p", ""));
  const int rank = static_cast<int>(int_field(j, "rank", ""));
  const Json& rows = field_of(j, "values", "");
  if (!rows.is_array()) throw ParseError("field 'values' must be an array of rows");
  std::vector<Rational> v;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array()) throw ParseError("field 'values[" + std::to_string(i) + "]' must be an array");
    if (rows[i].size() != rows.size()) throw ParseError("field 'values' must be a square matrix");
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      v.push_back(rational_from_json(rows[i][c],
                                     "values[" + std::to_string(i) + "][" + std::to_string(c) + "]"));
    }
  }
  return wrap("values", [&] { return StepFunctionZ(p, rank, std::move(v)); });
}

// ---------------------------------------------------------------------------

Json to_json(const SkewProduct& t) {
  Json maps = Json::array();
  for (const auto& m : t.fiber_maps()) {
    maps.push_back(std::vector<Index>(m.mapping().begin(), m.mapping().end()));
  }
  return Json{
      {"p", t.p()},
      {"base", {{"rank", t.base_rank()},
                {"perm", std::vector<Index>(t.base().mapping().begin(), t.base().mapping().end())}}},
      {"fibers", {{"rank", t.fiber_rank()},
                  {"assignment", std::vector<std::size_t>(t.assignment().begin(), t.assignment().end())},
                  {"maps", maps}}}};
}

SkewProduct skew_from_json(const Json& j) {
  const int p = static_cast<int>(int_field(j, "p", ""));
  const Json& base = field_of(j, "base", "");
  const int base_rank = static_cast<int>(int_field(base, "rank", "base."));
  auto base_perm = index_array(field_of(base, "perm", "base."), "base.perm");
  PAdicPermutation b = wrap("base.perm", [&] { return PAdicPermutation(p, base_rank, std::move(base_perm)); });

  const Json& fibers = field_of(j, "fibers", "");
  const int fiber_rank = static_cast<int>(int_field(fibers, "rank", "fibers."));
  auto assignment = index_array(field_of(fibers, "assignment", "fibers."), "fibers.assignment");
  const Json& maps = field_of(fibers, "maps", "fibers.");
  if (!maps.is_array()) throw ParseError("field 'fibers.maps' must be an array");
  std::vector<PAdicPermutation> perms;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const std::string name = "fibers.maps[" + std::to_string(k) + "]";
    auto m = index_array(maps[k], name);
    perms.push_back(wrap(name, [&] { return PAdicPermutation(p, fiber_rank, std::move(m)); }));
  }
  std::vector<std::size_t> labels(assignment.begin(), assignment.end());
  return wrap("fibers.assignment",
              [&] { return SkewProduct(std::move(b), std::move(labels), std::move(perms)); });
}

// ---------------------------------------------------------------------------

Json to_json(const IntervalMap& m) {
  Json pieces = Json::array();
  for (const auto& pc : m.pieces()) pieces.push_back({pc.start.str(), pc.end.str(), pc.shift.str()});
  return Json{{"pieces", pieces}};
}

IntervalMap interval_map_from_json(const Json& j, int p) {
  if (j.is_object() && j.contains("rotation")) {
    return IntervalMap::rotation(rational_from_json(j.at("rotation"), "rotation"));
  }
  if (j.is_object() && j.contains("perm")) {
    Json full = j;
    full["p"] = p;
    return IntervalMap::from_padic(permutation_from_json(full));
  }
  const Json& pieces = field_of(j, "pieces", "map.");
  if (!pieces.is_array()) throw ParseError("field 'map.pieces' must be an array");
  std::vector<IntervalMap::Piece> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string name = "pieces[" + std::to_string(i) + "]";
    if (!pieces[i].is_array() || pieces[i].size() != 3) {
      throw ParseError("field '" + name + "' must be [start, end, shift]");
    }
    out.push_back({rational_from_json(pieces[i][0], name + "[0]"),
                   rational_from_json(pieces[i][1], name + "[1]"),
                   rational_from_json(pieces[i][2], name + "[2]")});
  }
  return wrap("pieces", [&] { return IntervalMap(std::move(out)); });
}

Json to_json(const TranslationSkew& t) {
  Json maps = Json::array();
  for (const auto& m : t.maps()) maps.push_back(to_json(m));
  return Json{{"p", t.p()},
              {"base", {{"rank", t.base().rank()},
                        {"perm", std::vector<Index>(t.base().mapping().begin(), t.base().mapping().end())}}},
              {"assignment", std::vector<std::size_t>(t.assignment().begin(), t.assignment().end())},
              {"maps", maps}};
}

TranslationSkew translation_skew_from_json(const Json& j) {
  const int p = static_cast<int>(int_field(j, "p", ""));
  const Json& base = field_of(j, "base", "");
  const int base_rank = static_cast<int>(int_field(base, "rank", "base."));
  auto base_perm = index_array(field_of(base, "perm", "base."), "base.perm");
  PAdicPermutation b = wrap("base.perm", [&] { return PAdicPermutation(p, base_rank, std::move(base_perm)); });
  auto assignment = index_array(field_of(j, "assignment", ""), "assignment");
  const Json& maps = field_of(j, "maps", "");
  if (!maps.is_array()) throw ParseError("field 'maps' must be an array");
  std::vector<IntervalMap> out;
  for (const auto& m : maps) out.push_back(interval_map_from_json(m, p));
  std::vector<std::size_t> labels(assignment.begin(), assignment.end());
  return wrap("assignment", [&] { return TranslationSkew(std::move(b), std::move(labels), std::move(out)); });
}

// ---------------------------------------------------------------------------

Json to_json(const RokhlinTower& tower) {
  return Json{{"base", to_json(tower.base)},
              {"B", std::vector<Index>(tower.floor.indices().begin(), tower.floor.indices().end())},
              {"height", tower.height},
              {"residual", tower.residual.str()}};
}

Json certificate_json(long levels_verified, const Rational& bound, const Rational& weak_distance) {
  return Json{{"levels_verified", levels_verified},
              {"bound", bound.str()},
              {"weak_distance", weak_distance.str()}};
}

Json to_json(const DefectReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) entries.push_back({{"n", e.n}, {"defect_sq", e.defect_sq.str()}});
  return Json{{"kind", to_string(report.kind)}, {"entries", entries}};
}

std::string to_csv(const DefectReport& report, bool decimal_column) {
  std::ostringstream os;
  os << "n,defect_sq" << (decimal_column ? ",defect_sq_decimal" : "") << '\n';
  for (const auto& e : report.entries) {
    os << e.n << ',' << e.defect_sq.str();
    if (decimal_column) os << ',' << e.defect_sq.decimal();
    os << '\n';
  }
  return os.str();
}

}  // namespace skew::io
