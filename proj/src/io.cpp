#include "nilcyl/io.hpp"

#include <sstream>

namespace nilcyl {

namespace {

Signature read_signature(const Json &j) {
  if (!j.is_object())
    throw SchemaError("expected a JSON object");
  for (const char *key : {"g", "n", "level"})
    if (!j.contains(key) || !j[key].is_number_integer())
      throw SchemaError(std::string("missing integer field '") + key + "'");
  const int g = j["g"].get<int>(), n = j["n"].get<int>();
  if (g < 0 || n < 1)
    throw SchemaError("signature needs g >= 0 and n >= 1");
  return Signature(g, n);
}

Word read_word(const Signature &sig, const Json &j) {
  if (!j.is_string())
    throw SchemaError("word entries must be strings");
  try {
    return parse_word(sig, j.get<std::string>());
  } catch (const ParseError &e) {
    throw SchemaError(std::string("bad word '") + j.get<std::string>() +
                      "': " + e.what());
  }
}

} // namespace

Json integer_json(const Integer &v) {
  if (v.fits_slong_p())
    return Json(v.get_si());
  return Json(v.get_str());
}

Json to_json(const NilAut &phi) {
  Json images = Json::object();
  for (int a = 0; a < phi.sig.rank(); ++a)
    images[Generator::from_letter(phi.sig, a).name()] =
        print_word(normalize(phi.images[a], phi.level));
  return Json{{"g", phi.sig.g},
              {"n", phi.sig.n},
              {"level", phi.level},
              {"images", images}};
}

NilAut nilaut_from_json(const Json &j) {
  const Signature sig = read_signature(j);
  const int level = j["level"].get<int>();
  if (!j.contains("images") || !j["images"].is_object())
    throw SchemaError("missing object field 'images'");
  const Json &im = j["images"];
  if (static_cast<int>(im.size()) != sig.rank())
    throw SchemaError("need exactly one image per generator");
  std::vector<Word> images;
  for (int a = 0; a < sig.rank(); ++a) {
    const std::string name = Generator::from_letter(sig, a).name();
    if (!im.contains(name))
      throw SchemaError("missing image of " + name);
    images.push_back(read_word(sig, im[name]));
  }
  try {
    return NilAut::from_images(sig, level, std::move(images));
  } catch (const std::invalid_argument &e) {
    throw SchemaError(e.what());
  }
}

Json to_json(const CylModel &M, bool with_framing) {
  Json mu = Json::array();
  for (const auto &w : M.mu())
    mu.push_back(print_word(w));
  Json j{{"g", M.sig().g},
         {"n", M.sig().n},
         {"level", M.level()},
         {"mu", mu}};
  if (with_framing) {
    Json f = Json::array();
    for (const auto &t : framing(M))
      f.push_back(integer_json(t));
    j["framing"] = f;
  }
  return j;
}

CylModel model_from_json(const Json &j) {
  const Signature sig = read_signature(j);
  const int level = j["level"].get<int>();
  if (level < 2)
    throw SchemaError("model level must be at least 2");
  if (!j.contains("mu") || !j["mu"].is_array())
    throw SchemaError("missing array field 'mu'");
  if (static_cast<int>(j["mu"].size()) != sig.rank())
    throw SchemaError("mu needs one entry per generator");
  MilnorTuple mu;
  for (const auto &e : j["mu"])
    mu.push_back(read_word(sig, e));
  return CylModel::make(sig, level, std::move(mu));
}

Json to_json(const GradedTuple &t) {
  Json blocks = Json::array();
  for (const auto &b : t.blocks) {
    Json c = Json::array();
    for (const auto &v : b.coords)
      c.push_back(integer_json(v));
    blocks.push_back(c);
  }
  return Json{{"g", t.sig.g},
              {"n", t.sig.n},
              {"degree", t.degree},
              {"blocks", blocks}};
}

namespace {

const char *const kColumns[] = {"k",  "witt",     "dkH",        "dkHprime",
                                "h3", "q_milnor", "q_johnson0", "q_mid_a",
                                "q_mid_k"};

std::vector<std::optional<Integer>> row_values(const RankRow &r) {
  return {Integer(r.k), r.witt,      r.dkH,       r.dkHprime, r.h3,
          r.q_milnor,   r.q_johnson0, r.q_mid_a, r.q_mid_k};
}

} // namespace

std::string rank_table_tsv(const RankTable &t) {
  std::ostringstream out;
  for (std::size_t c = 0; c < std::size(kColumns); ++c)
    out << (c ? "\t" : "") << kColumns[c];
  out << '\n';
  for (const auto &r : t.rows) {
    const auto vals = row_values(r);
    for (std::size_t c = 0; c < vals.size(); ++c)
      out << (c ? "\t" : "") << (vals[c] ? vals[c]->get_str() : "NA");
    out << '\n';
  }
  return out.str();
}

Json rank_table_json(const RankTable &t) {
  Json rows = Json::array();
  for (const auto &r : t.rows) {
    Json row = Json::object();
    const auto vals = row_values(r);
    for (std::size_t c = 0; c < vals.size(); ++c)
      row[kColumns[c]] = vals[c] ? integer_json(*vals[c]) : Json(nullptr);
    rows.push_back(row);
  }
  return Json{{"g", t.sig.g}, {"n", t.sig.n}, {"rows", rows}};
}

} // namespace nilcyl
