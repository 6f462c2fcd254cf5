#pragma once

// JSON documents for structures, search results and towers.  Metacyclic
// elements are written as [a, x] pairs; every other realization uses raw ids.

#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>

#include <nlohmann/json.hpp>

#include "beauville/error.hpp"
#include "beauville/lifting.hpp"
#include "beauville/search.hpp"
#include "beauville/structure.hpp"

namespace beauville::io {

using nlohmann::json;

template <FiniteGroup G>
json element_to_json(const G& group, Element g) {
  if constexpr (std::is_same_v<G, MetacyclicGroup>) {
    return json::array({group.a_of(g), group.x_of(g)});
  } else {
    (void)group;
    return g.id;
  }
}

template <FiniteGroup G>
Element element_from_json(const G& group, const json& doc) {
  try {
    if constexpr (std::is_same_v<G, MetacyclicGroup>) {
      if (doc.is_array() && doc.size() == 2) {
        const auto a = doc[0].get<std::uint64_t>();
        const auto x = doc[1].get<std::uint64_t>();
        if (a >= group.modulus_a() || x >= group.modulus_x()) {
          throw Error(ErrorKind::MismatchedGroups, "coordinates " + doc.dump() + " are out of range for " + group.spec());
        }
        return group.make(a, x);
      }
    }
    const auto id = doc.get<std::uint64_t>();
    if (id >= group.order()) throw Error(ErrorKind::MismatchedGroups, "element id " + doc.dump() + " is outside " + group.spec());
    return {static_cast<std::uint32_t>(id)};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidSpec, "malformed element " + doc.dump() + ": " + e.what());
  }
}

template <FiniteGroup G>
json triple_to_json(const G& group, const Triple& t) {
  return json::array({element_to_json(group, t.x), element_to_json(group, t.y), element_to_json(group, t.z)});
}

template <FiniteGroup G>
Triple triple_from_json(const G& group, const json& doc) {
  if (!doc.is_array() || doc.size() != 3) throw Error(ErrorKind::InvalidSpec, "a triple must be a list of three elements");
  return {element_from_json(group, doc[0]), element_from_json(group, doc[1]), element_from_json(group, doc[2])};
}

inline json refutation_to_json(const std::optional<Refutation>& r) {
  if (!r) return nullptr;
  json out{{"condition", r->condition}, {"detail", r->detail}};
  out["triple"] = r->triple == 0 ? json(nullptr) : json(r->triple);
  out["witness"] = r->witness ? json(r->witness->id) : json(nullptr);
  return out;
}

template <FiniteGroup G>
json structure_to_json(const G& group, const BeauvilleStructure& s, const std::optional<Refutation>& refutation = std::nullopt) {
  return {{"group", s.group},
          {"t1", triple_to_json(group, s.first)},
          {"t2", triple_to_json(group, s.second)},
          {"signature", s.signature.orders},
          {"balanced", s.signature.balanced()},
          {"verified", s.verified},
          {"refutation", refutation_to_json(refutation)}};
}

template <FiniteGroup G>
json verify_result_to_json(const G& group, const VerifyResult& r) {
  return structure_to_json(group, r.structure, r.refutation);
}

/// Reads the "t1" / "t2" fields of a structure document against `group`.
template <FiniteGroup G>
std::pair<Triple, Triple> structure_from_json(const G& group, const json& doc) {
  if (!doc.is_object() || !doc.contains("t1") || !doc.contains("t2")) {
    throw Error(ErrorKind::InvalidSpec, "a structure document needs 't1' and 't2'");
  }
  if (doc.contains("group") && doc["group"].is_string() && doc["group"].get<std::string>() != group.spec()) {
    throw Error(ErrorKind::MismatchedGroups, "document is for '" + doc["group"].get<std::string>() + "', not '" + group.spec() + "'");
  }
  return {triple_from_json(group, doc["t1"]), triple_from_json(group, doc["t2"])};
}

template <FiniteGroup G>
json search_result_to_json(const G& group, const SearchResult& r) {
  json structures = json::array();
  for (const auto& s : r.structures) structures.push_back(structure_to_json(group, s));
  return {{"group", group.spec()},
          {"order", group.order()},
          {"count", r.count ? json(*r.count) : json(nullptr)},
          {"exists", r.structures.empty() ? (r.exhaustive ? json(false) : json(nullptr)) : json(true)},
          {"exhaustive", r.exhaustive},
          {"budget_exceeded", r.budget_exceeded},
          {"candidates", r.candidates},
          {"generating_triples", r.generating_triples},
          {"structures", structures}};
}

inline json tower_to_json(const Tower& tower) {
  json levels = json::array();
  for (std::size_t k = 0; k < tower.levels.size(); ++k) {
    const auto& g = *tower.levels[k];
    levels.push_back({{"level", k + 1}, {"order", g.order()}, {"structure", structure_to_json(g, tower.structures[k])}});
  }
  return {{"p", tower.p}, {"lambda_rule", tower.lambda_rule}, {"levels", levels}, {"compatible", tower.compatible}};
}

}  // namespace beauville::io
