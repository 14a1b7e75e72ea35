#include "doctest.h"

#include "nilcyl/io.hpp"
#include "nilcyl/sampling.hpp"

#include <algorithm>
#include <sstream>

using namespace nilcyl;
using namespace nilcyl::sampling;

TEST_CASE("automorphism round trip") {
  for (const Signature sig : {Signature(0, 3), Signature(1, 2)}) {
    for (int t = 0; t < 10; ++t) {
      Rng rng = case_rng(11, t);
      const NilAut phi = random_automorphism(sig, 3, rng);
      const Json j = to_json(phi);
      CHECK(j["images"].size() == static_cast<std::size_t>(sig.rank()));
      CHECK(nilaut_from_json(Json::parse(j.dump())).same_as(phi));
    }
  }
}

TEST_CASE("automorphism schema errors") {
  Json j = to_json(NilAut::identity(Signature(0, 3), 3));
  Json missing = j;
  missing["images"].erase("x2");
  CHECK_THROWS_AS(nilaut_from_json(missing), SchemaError);
  Json bad = j;
  bad["images"]["x1"] = "x7";
  CHECK_THROWS_AS(nilaut_from_json(bad), SchemaError);
  Json nolevel = j;
  nolevel.erase("level");
  CHECK_THROWS_AS(nilaut_from_json(nolevel), SchemaError);
}

TEST_CASE("model round trip") {
  const Signature sig(1, 2);
  for (int t = 0; t < 10; ++t) {
    Rng rng = case_rng(5, t);
    const CylModel M = random_model(sig, 3, rng);
    const Json j = to_json(M, true);
    CHECK(j["framing"].size() == 1);
    CHECK(j["framing"][0].get<long>() == framing(M)[0].get_si());
    // the framing key is ignored on input
    CHECK(model_from_json(Json::parse(j.dump())).same_as(M));
  }
}

TEST_CASE("model input validation") {
  Json j{{"g", 0}, {"n", 3}, {"level", 2}, {"mu", {"x2^3", "x1^5"}},
         {"comment", "ignored"}};
  const CylModel M = model_from_json(j);
  CHECK(print_word(M.mu()[0]) == "x2^3");

  Json short_mu = j;
  short_mu["mu"] = Json::array({"x2"});
  CHECK_THROWS_AS(model_from_json(short_mu), SchemaError);
  Json not_string = j;
  not_string["mu"][0] = 3;
  CHECK_THROWS_AS(model_from_json(not_string), SchemaError);
  Json low = j;
  low["level"] = 1;
  CHECK_THROWS_AS(model_from_json(low), SchemaError);
  Json neg = j;
  neg["n"] = 0;
  CHECK_THROWS_AS(model_from_json(neg), SchemaError);

  // parses but fails the gate
  Json bad{{"g", 0}, {"n", 3}, {"level", 3}, {"mu", {"x2", ""}}};
  CHECK_THROWS_AS(model_from_json(bad), NotAdmissible);
}

TEST_CASE("tuple serialization") {
  GradedTuple t = GradedTuple::zero(Signature(0, 3), 2);
  t.alpha(1).coords[0] = 4;
  const Json j = to_json(t);
  CHECK(j["degree"] == 2);
  CHECK(j["blocks"][0] == Json::array({4}));
  CHECK(j["blocks"][1] == Json::array({0}));
}

TEST_CASE("integers in JSON") {
  CHECK(integer_json(Integer(-7)) == Json(-7));
  const Integer big("123456789012345678901234567890");
  CHECK(integer_json(big) == Json("123456789012345678901234567890"));
}

TEST_CASE("rank table rendering") {
  const RankTable t = rank_table(Signature(1, 1), 3);
  const std::string tsv = rank_table_tsv(t);
  std::istringstream in(tsv);
  std::string header, row1;
  std::getline(in, header);
  std::getline(in, row1);
  CHECK(header == "k\twitt\tdkH\tdkHprime\th3\tq_milnor\tq_johnson0\tq_mid_a\tq_mid_k");
  CHECK(row1.find("NA") != std::string::npos);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 4);

  const Json j = rank_table_json(t);
  CHECK(j["rows"].size() == 3);
  CHECK(j["rows"][0]["q_milnor"].is_null());
  CHECK(j["rows"][2]["witt"] == 2);
  CHECK(j["rows"][2]["dkH"] == 1);
}
