#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "qboson/poisson.hpp"

namespace qboson {

inline constexpr const char* kEngineVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline Json word_to_json(const ReducedWord& w) {
  Json a = Json::array();
  for (int l : w.letters) a.push_back(l + 1);  // 1-based outside
  return a;
}

inline ReducedWord word_from_json(const Json& a) {
  ReducedWord w;
  for (const auto& v : a) w.letters.push_back(v.get<int>() - 1);
  return w;
}

inline Json lattice_to_json(const LatticeVector& v) {
  Json a = Json::array();
  for (int c : v.c) a.push_back(c);
  return a;
}

inline Json expvec_to_json(const ExpVec& v) {
  Json a = Json::array();
  for (int c : v) a.push_back(c);
  return a;
}

inline ExpVec expvec_from_json(const Json& a) {
  ExpVec v;
  for (const auto& x : a) v.push_back(x.get<int>());
  return v;
}

// ---- LS tables --------------------------------------------------------------

inline Json ls_header(const LSTable& t) {
  Json h;
  h["type"] = t.type;
  h["rank"] = t.type.size() > 1 ? std::stoi(t.type.substr(1)) : 0;
  h["word"] = word_to_json(t.word);
  h["convention"] =
      side_name(t.side) + std::string("/") +
      order_name(t.side == Side::E ? MonomialOrder::Reversed : MonomialOrder::Forward);
  h["engine_version"] = kEngineVersion;
  return h;
}

inline Json ls_table_to_json(const LSTable& t) {
  Json pairs = Json::object();
  for (const auto& [ij, entries] : t.pairs) {
    std::string key = std::to_string(ij.first + 1) + "," + std::to_string(ij.second + 1);
    Json list = Json::array();
    for (const LSEntry& e : entries) {
      Json item;
      item["d"] = expvec_to_json(e.d);
      item["c"] = e.c.str();
      item["valuation"] = e.valuation;
      item["laurent_unit_den"] = e.laurent_unit_den;
      list.push_back(item);
    }
    pairs[key] = list;
  }
  Json out;
  out["schema"] = kSchemaVersion;
  out["header"] = ls_header(t);
  out["pairs"] = pairs;
  out["header"]["content_hash"] = fnv1a(pairs.dump());
  return out;
}

inline std::optional<LSTable> ls_table_from_json(const Json& j, const std::string& type,
                                                 const ReducedWord& word, Side side) {
  LSTable t;
  t.type = type;
  t.word = word;
  t.side = side;
  try {
    if (j.at("schema").get<int>() != kSchemaVersion) return std::nullopt;
    const Json& h = j.at("header");
    if (h.at("type").get<std::string>() != type) return std::nullopt;
    if (h.at("engine_version").get<std::string>() != kEngineVersion) return std::nullopt;
    if (word_from_json(h.at("word")).letters != word.letters) return std::nullopt;
    Json expect_header = ls_header(t);
    if (h.at("convention").get<std::string>() !=
        expect_header.at("convention").get<std::string>())
      return std::nullopt;
    const Json& pairs = j.at("pairs");
    if (h.at("content_hash").get<uint64_t>() != fnv1a(pairs.dump())) return std::nullopt;
    for (auto it = pairs.begin(); it != pairs.end(); ++it) {
      auto comma = it.key().find(',');
      int i = std::stoi(it.key().substr(0, comma)) - 1;
      int jj = std::stoi(it.key().substr(comma + 1)) - 1;
      std::vector<LSEntry> entries;
      for (const auto& item : it.value()) {
        LSEntry e;
        e.d = expvec_from_json(item.at("d"));
        e.c = QScalar::parse(item.at("c").get<std::string>());
        e.valuation = item.at("valuation").get<int>();
        e.laurent_unit_den = item.at("laurent_unit_den").get<bool>();
        entries.push_back(std::move(e));
      }
      t.pairs[{i, jj}] = std::move(entries);
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return t;
}

// ---- cache ------------------------------------------------------------------

// On-disk cache of LS tables keyed by a content hash of the mathematical
// configuration.  Any header mismatch or corruption falls back to recompute.
class LSCache {
 public:
  explicit LSCache(std::string dir) : dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }

  std::string path_for(const std::string& type, const ReducedWord& word, Side side) const {
    std::string key = type + "|";
    for (int l : word.letters) key += std::to_string(l) + ".";
    key += "|" + side_name(side) + "|" + kEngineVersion;
    return dir_ + "/ls-" + type + "-" + side_name(side) + "-" + std::to_string(fnv1a(key)) +
           ".json";
  }

  std::optional<LSTable> load(const std::string& type, const ReducedWord& word, Side side,
                              std::string* warning) const {
    if (!enabled()) return std::nullopt;
    std::string p = path_for(type, word, side);
    std::ifstream in(p);
    if (!in) return std::nullopt;
    Json j;
    try {
      in >> j;
    } catch (const std::exception&) {
      if (warning) *warning = "cache file " + p + " is corrupt; recomputing";
      return std::nullopt;
    }
    auto t = ls_table_from_json(j, type, word, side);
    if (!t && warning) *warning = "cache file " + p + " failed validation; recomputing";
    return t;
  }

  void store(const LSTable& t) const {
    if (!enabled()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    std::ofstream out(path_for(t.type, t.word, t.side));
    out << ls_table_to_json(t).dump(2) << "\n";
  }

 private:
  std::string dir_;
};

// ---- report builders ---------------------------------------------------------

inline Json report_shell(const std::string& command, const std::string& type,
                         const ReducedWord& word) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["engine_version"] = kEngineVersion;
  j["command"] = command;
  j["type"] = type;
  j["word"] = word_to_json(word);
  return j;
}

inline Json roots_report(const RootDatum& d, const ReducedWord& w) {
  Json j = report_shell("roots", d.type_string(), w);
  auto roots = positive_roots_from_word(d, w);
  Json arr = Json::array();
  for (const auto& r : roots) arr.push_back(lattice_to_json(r));
  j["roots"] = arr;
  if (d.letter() == 'A') {
    Json labels = Json::array();
    for (const auto& r : roots) {
      auto [i, jj] = type_a_interval(d, r);
      labels.push_back("x_{" + std::to_string(i + 1) + "," + std::to_string(jj + 1) + "}");
    }
    j["labels"] = labels;
  }
  return j;
}

inline Json element_to_json(const UElement& u) {
  Json arr = Json::array();
  for (const auto& [w, c] : u.terms()) {
    Json t;
    t["word"] = w.str();
    t["coeff"] = c.str();
    arr.push_back(t);
  }
  return arr;
}

inline Json pbw_report(const PBWBasis& b) {
  Json j = report_shell("pbw", b.datum().type_string(), b.word());
  Json vecs = Json::array();
  for (int k = 0; k < b.size(); ++k) {
    Json item;
    item["k"] = k + 1;
    item["root"] = lattice_to_json(b.root(k));
    item["e_vector"] = element_to_json(b.e_root_vector(k));
    item["f_vector"] = element_to_json(b.f_root_vector(k));
    vecs.push_back(item);
  }
  j["root_vectors"] = vecs;
  return j;
}

inline Json matrix_to_json(const GradedMatrix& m) {
  Json j;
  j["source_weight"] = lattice_to_json(m.source_weight);
  j["target_weight"] = lattice_to_json(m.target_weight);
  Json src = Json::array(), dst = Json::array();
  for (const auto& e : m.src) src.push_back(expvec_to_json(e));
  for (const auto& e : m.dst) dst.push_back(expvec_to_json(e));
  j["src"] = src;
  j["dst"] = dst;
  Json rows = Json::array();
  for (const auto& row : m.a) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(v.str());
    rows.push_back(r);
  }
  j["entries"] = rows;
  return j;
}

inline Json poisson_report(const PBWBasis& b, const BracketTable& t, bool jacobi) {
  Json j = report_shell("poisson", b.datum().type_string(), b.word());
  Json pairs = Json::array();
  for (int i = 0; i < t.N; ++i)
    for (int jj = i + 1; jj < t.N; ++jj) {
      Json p;
      p["i"] = i + 1;
      p["j"] = jj + 1;
      p["bracket"] = t.get(i, jj).str();
      pairs.push_back(p);
    }
  j["pairs"] = pairs;
  j["jacobi"] = jacobi;
  return j;
}

}  // namespace qboson
