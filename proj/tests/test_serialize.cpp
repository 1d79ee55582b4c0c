#include <doctest.h>

#include <string>

#include "skewlab/errors.hpp"
#include "skewlab/serialize.hpp"
#include "support.hpp"

using namespace skew;
using fixtures::q;
using io::Json;

namespace {

std::string parse_error(const std::string& text, SkewProduct (*parse)(const Json&)) {
  try {
    parse(Json::parse(text));
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("skew product json") {
  const auto t = fixtures::swap_example();
  const std::string text = io::canonical(io::to_json(t));
  CHECK(text ==
        R"({"base":{"perm":[1,0],"rank":1},"fibers":{"assignment":[0,1],"maps":[[1,0],[0,1]],"rank":1},"p":2})");
  CHECK(io::skew_from_json(Json::parse(text)) == t);
  CHECK(io::canonical(io::to_json(io::skew_from_json(Json::parse(text)))) == text);

  // Duplicate and unused maps collapse to the canonical form.
  const auto messy = Json::parse(
      R"({"p":2,"base":{"rank":1,"perm":[1,0]},"fibers":{"rank":1,"assignment":[2,0],"maps":[[0,1],[1,0],[1,0]]}})");
  const auto clean = io::skew_from_json(messy);
  CHECK(io::canonical(io::to_json(clean)) ==
        R"({"base":{"perm":[1,0],"rank":1},"fibers":{"assignment":[0,1],"maps":[[1,0],[0,1]],"rank":1},"p":2})");

  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto r = fixtures::random_skew(rng, 3, 3, i % 2 ? 2 : 3);
    const std::string s = io::canonical(io::to_json(r));
    CHECK(io::canonical(io::to_json(io::skew_from_json(Json::parse(s)))) == s);
  }
}

TEST_CASE("parse errors name the field") {
  CHECK(parse_error(R"({"base":{"rank":1,"perm":[1,0]},"fibers":{}})", io::skew_from_json).find("'p'") !=
        std::string::npos);
  CHECK(parse_error(R"({"p":2,"base":{"rank":1,"perm":[1,1]},"fibers":{"rank":0,"assignment":[0,0],"maps":[[0]]}})",
                    io::skew_from_json)
            .find("base.perm") != std::string::npos);
  CHECK(parse_error(R"({"p":2,"base":{"rank":1,"perm":[1,0]},"fibers":{"rank":0,"assignment":[0,3],"maps":[[0]]}})",
                    io::skew_from_json)
            .find("fibers.assignment") != std::string::npos);
  CHECK(parse_error(R"({"p":2,"base":{"rank":1,"perm":[1,0]},"fibers":{"rank":1,"assignment":[0,0],"maps":[[0,1],[2]]}})",
                    io::skew_from_json)
            .find("fibers.maps[1]") != std::string::npos);
  CHECK(parse_error(R"({"p":2,"base":{"rank":"x","perm":[1,0]}})", io::skew_from_json).find("base.rank") !=
        std::string::npos);
  CHECK_THROWS_AS(io::rational_from_json(Json("1/0"), "eps"), ParseError);
  CHECK_THROWS_AS(io::rational_from_json(Json(0.5), "eps"), ParseError);
  CHECK(io::rational_from_json(Json("6/4"), "eps") == q(3, 2));
  CHECK(io::rational_from_json(Json(3), "eps") == q(3));
}

TEST_CASE("step functions and permutations") {
  const auto f = StepFunctionZ(2, 1, {q(1), q(0), q(1, 2), q(-3, 4)});
  const auto jf = io::to_json(f);
  CHECK(io::canonical(jf) == R"({"p":2,"rank":1,"values":[["1/1","0/1"],["1/2","-3/4"]]})");
  CHECK(io::step_z_from_json(jf) == f);

  const auto h = StepFunctionX(3, 1, {q(1, 3), q(0), q(2)});
  CHECK(io::step_x_from_json(io::to_json(h)) == h);

  const auto perm = PAdicPermutation(3, 1, {2, 0, 1});
  CHECK(io::canonical(io::to_json(perm)) == R"({"p":3,"perm":[2,0,1],"rank":1})");
  CHECK(io::permutation_from_json(io::to_json(perm)) == perm);
  CHECK_THROWS_AS(io::permutation_from_json(Json::parse(R"({"p":3,"rank":1,"perm":[0,1]})")), ParseError);
}

TEST_CASE("translation skew json") {
  const Json j = Json::parse(
      R"({"p":2,"base":{"rank":1,"perm":[1,0]},"assignment":[0,1],"maps":[{"rotation":"1/3"},{"rank":1,"perm":[1,0]}]})");
  const auto t = io::translation_skew_from_json(j);
  CHECK(t.fiber_at(0) == IntervalMap::rotation(q(1, 3)));
  CHECK(t.fiber_at(1) == IntervalMap::rotation(q(1, 2)));
  const std::string s = io::canonical(io::to_json(t));
  CHECK(io::canonical(io::to_json(io::translation_skew_from_json(Json::parse(s)))) == s);
  CHECK_THROWS_AS(io::translation_skew_from_json(Json::parse(
                      R"({"p":2,"base":{"rank":0,"perm":[0]},"assignment":[0],"maps":[{"pieces":[["0/1","1/2","0/1"]]}]})")),
                  ParseError);
}

TEST_CASE("reports") {
  DefectReport r{DefectKind::rigidity, {{1, q(1, 8)}, {2, q(0)}}};
  CHECK(io::canonical(io::to_json(r)) ==
        R"({"entries":[{"defect_sq":"1/8","n":1},{"defect_sq":"0/1","n":2}],"kind":"rigidity"})");
  CHECK(io::to_csv(r) == "n,defect_sq\n1,1/8\n2,0/1\n");
  CHECK(io::to_csv(r, true) == "n,defect_sq,defect_sq_decimal\n1,1/8,0.125\n2,0/1,0\n");

  const auto tower = rokhlin_tower(odometer(2, 3), 4);
  CHECK(io::canonical(io::to_json(tower)) ==
        R"({"B":[0,1],"base":{"p":2,"perm":[4,5,6,7,2,3,1,0],"rank":3},"height":4,"residual":"0/1"})");
  CHECK(io::canonical(io::certificate_json(3, q(1, 4), q(1, 8))) ==
        R"({"bound":"1/4","levels_verified":3,"weak_distance":"1/8"})");
}
