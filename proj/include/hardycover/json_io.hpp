#pragma once

#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "hardycover/covering.hpp"
#include "hardycover/errors.hpp"
#include "hardycover/linalg.hpp"
#include "hardycover/presentation.hpp"
#include "hardycover/representation.hpp"
#include "hardycover/surface.hpp"

namespace hardycover {

using Json = nlohmann::ordered_json;

/// Parses JSON and rejects any object that repeats a key.
inline Json parse_json_strict(const std::string& text) {
  std::vector<std::set<std::string>> keys;
  auto cb = [&keys](int, nlohmann::json::parse_event_t ev, Json& parsed) {
    using E = nlohmann::json::parse_event_t;
    if (ev == E::object_start) {
      keys.emplace_back();
    } else if (ev == E::object_end) {
      keys.pop_back();
    } else if (ev == E::key) {
      const auto name = parsed.get<std::string>();
      if (!keys.back().insert(name).second) throw config_error("duplicate key '" + name + "'");
    }
    return true;
  };
  try {
    return Json::parse(text, cb);
  } catch (const Json::parse_error& e) {
    throw config_error(std::string("malformed JSON: ") + e.what());
  }
}

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw config_error("complex numbers are [re, im] pairs, got " + j.dump());
}

inline Json matrix_to_json(const Matrix& a) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(complex_to_json(a(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j, int m) {
  if (!j.is_array() || static_cast<int>(j.size()) != m) {
    throw config_error("expected a " + std::to_string(m) + "x" + std::to_string(m) + " matrix");
  }
  Matrix a(m, m);
  for (int r = 0; r < m; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != m) {
      throw config_error("matrix row " + std::to_string(r) + " has the wrong length");
    }
    for (int c = 0; c < m; ++c) a(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return a;
}

inline Json word_to_json(const Presentation& p, const Word& w) {
  Json out = Json::array();
  for (const Letter& l : w) {
    out.push_back(Json::array({p.generators[static_cast<std::size_t>(l.gen)], l.exp}));
  }
  return out;
}

inline Json presentation_to_json(const Presentation& p, int s, int k, int genus) {
  Json out;
  out["s"] = s;
  out["k"] = k;
  out["genus"] = genus;
  out["generators"] = p.generators;
  out["relator"] = p.relators.empty() ? Json::array() : word_to_json(p, p.relators.front());
  if (p.tau) {
    Json tau = Json::object();
    for (int g = 0; g < p.rank(); ++g) {
      tau[p.generators[static_cast<std::size_t>(g)]] =
          word_to_json(p, (*p.tau)[static_cast<std::size_t>(g)]);
    }
    out["tau"] = tau;
  }
  return out;
}

/// {"n": 3, "perms": {"A1": [2, 3, 1], "B1": [1, 2, 3]}}, sheets 1-based.
inline CoveringAction covering_from_json(const Json& j, const Presentation& p) {
  if (!j.is_object() || !j.contains("n") || !j.contains("perms")) {
    throw config_error("covering needs fields 'n' and 'perms'");
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "n" && key != "perms") throw config_error("unknown field 'covering." + key + "'");
  }
  const int n = j["n"].get<int>();
  if (n < 1) throw covering_error("sheet count must be positive");
  const Json& perms = j["perms"];
  for (const auto& [key, _] : perms.items()) p.index_of(key);
  std::vector<SheetPermutation> out;
  for (const auto& name : p.generators) {
    if (!perms.contains(name)) throw config_error("covering has no permutation for " + name);
    const auto images = perms[name].get<std::vector<long>>();
    if (static_cast<int>(images.size()) != n) {
      throw covering_error("permutation of " + name + " has degree " +
                           std::to_string(images.size()) + ", expected " + std::to_string(n));
    }
    SheetPermutation sp;
    for (long x : images) {
      if (x < 1 || x > n) throw covering_error("sheet " + std::to_string(x) + " out of range");
      sp.images.push_back(static_cast<Sheet>(x - 1));
    }
    out.push_back(std::move(sp));
  }
  return build_covering(p, std::move(out));
}

inline Json covering_to_json(const CoveringAction& c) {
  Json perms = Json::object();
  for (int g = 0; g < c.presentation().rank(); ++g) {
    Json images = Json::array();
    for (Sheet x : c.perm(g).images) images.push_back(x + 1);
    perms[c.presentation().generators[static_cast<std::size_t>(g)]] = images;
  }
  return Json{{"n", c.sheets()}, {"perms", perms}};
}

/// {"m": 1, "images": {"s1_B1": [[[-1, 0]]], ...}} over the named generators.
inline MatrixRep rep_from_json(const Json& j, const std::vector<std::string>& names) {
  if (!j.is_object() || !j.contains("m") || !j.contains("images")) {
    throw config_error("representation needs fields 'm' and 'images'");
  }
  const int m = j["m"].get<int>();
  if (m < 1) throw representation_error("matrix size must be positive");
  const Json& images = j["images"];
  const std::set<std::string> known(names.begin(), names.end());
  for (const auto& [key, _] : images.items()) {
    if (!known.count(key)) throw representation_error("image given for unknown generator " + key);
  }
  MatrixRep out{m, {}};
  for (const auto& name : names) {
    if (!images.contains(name)) throw representation_error("no image for generator " + name);
    out.images.push_back(matrix_from_json(images[name], m));
  }
  return out;
}

inline Json rep_to_json(const MatrixRep& r, const std::vector<std::string>& names) {
  Json images = Json::object();
  for (std::size_t g = 0; g < names.size(); ++g) images[names[g]] = matrix_to_json(r.images[g]);
  return Json{{"m", r.m}, {"images", images}};
}

}  // namespace hardycover
