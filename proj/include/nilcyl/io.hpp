#pragma once

#include "nilcyl/cylmodel.hpp"

#include <json.hpp>

#include <string>

namespace nilcyl {

using Json = nlohmann::ordered_json;

class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// {"g", "n", "level", "images": {generator name: word}}
Json to_json(const NilAut &phi);
NilAut nilaut_from_json(const Json &j);

// {"g", "n", "level", "mu": [words in tuple order]}; unknown keys are
// ignored on input. Parsing runs the admissibility gate.
Json to_json(const CylModel &M, bool with_framing = false);
CylModel model_from_json(const Json &j);
Json to_json(const GradedTuple &t);

std::string rank_table_tsv(const RankTable &t);
Json rank_table_json(const RankTable &t);

// Decimal rendering; JSON numbers when the value fits in 64 bits.
Json integer_json(const Integer &v);

} // namespace nilcyl
