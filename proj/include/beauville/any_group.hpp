#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "beauville/error.hpp"
#include "beauville/group.hpp"

namespace beauville {

/// One of the three realizations, as parsed from a group-spec string.
using AnyGroup = std::variant<MetacyclicGroup, CayleyGroup, MatrixGroup>;

namespace detail {

inline std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  if (text.empty()) throw Error(ErrorKind::InvalidSpec, std::string(what) + " is empty");
  std::uint64_t value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw Error(ErrorKind::InvalidSpec, std::string(what) + " is not a non-negative integer: '" + std::string(text) + "'");
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

/// "k1=v1,k2=v2,..." where values may themselves contain commas; a token
/// without '=' continues the previous value.
inline std::map<std::string, std::string> parse_key_values(std::string_view body) {
  std::map<std::string, std::string> out;
  std::string current;
  std::size_t start = 0;
  while (start <= body.size()) {
    auto end = body.find(',', start);
    if (end == std::string_view::npos) end = body.size();
    const auto token = body.substr(start, end - start);
    const auto eq = token.find('=');
    if (eq != std::string_view::npos) {
      current = std::string(token.substr(0, eq));
      if (out.contains(current)) throw Error(ErrorKind::InvalidSpec, "duplicate key '" + current + "'");
      out[current] = std::string(token.substr(eq + 1));
    } else {
      if (current.empty()) throw Error(ErrorKind::InvalidSpec, "expected key=value, got '" + std::string(token) + "'");
      out[current] += "," + std::string(token);
    }
    start = end + 1;
  }
  return out;
}

inline std::string require(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw Error(ErrorKind::InvalidSpec, "missing key '" + key + "'");
  return it->second;
}

inline void reject_unknown(const std::map<std::string, std::string>& kv, std::initializer_list<std::string_view> known) {
  for (const auto& [key, _] : kv) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorKind::InvalidSpec, "unknown key '" + key + "'");
    }
  }
}

inline std::vector<std::uint32_t> parse_uint_list(std::string_view text) {
  std::vector<std::uint32_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(static_cast<std::uint32_t>(parse_uint(text.substr(start, end - start), "matrix entry")));
    start = end + 1;
  }
  return out;
}

}  // namespace detail

/// Reads {"order": N, "table": [[...], ...]}.
inline CayleyGroup cayley_from_json(const nlohmann::json& doc, std::string source = "") {
  if (!doc.is_object() || !doc.contains("order") || !doc.contains("table")) {
    throw Error(ErrorKind::InvalidSpec, "Cayley JSON must be an object with 'order' and 'table'");
  }
  try {
    return CayleyGroup(doc.at("order").get<std::uint32_t>(), doc.at("table").get<std::vector<std::vector<std::uint32_t>>>(),
                       std::move(source));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidSpec, std::string("malformed Cayley JSON: ") + e.what());
  }
}

inline nlohmann::json cayley_to_json(const CayleyGroup& group) {
  return {{"order", group.order()}, {"table", group.rows()}};
}

inline CayleyGroup load_cayley(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidSpec, "cannot open Cayley table file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidSpec, "cannot parse '" + path + "': " + e.what());
  }
  return cayley_from_json(doc, path);
}

/// Parses the group-spec mini-grammar:
///   metacyclic:p=<prime>,m=<int>,n=<int>,lambda=<int>
///   cayley:<path>
///   matrix:p=<prime>,dim=<int>,gens=<row-major lists separated by ';'>,cap=<int>
inline AnyGroup make_group(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorKind::InvalidSpec, "group spec needs a 'kind:' prefix");
  const auto kind = spec.substr(0, colon);
  const auto body = spec.substr(colon + 1);
  if (kind == "metacyclic") {
    const auto kv = detail::parse_key_values(body);
    detail::reject_unknown(kv, {"p", "m", "n", "lambda"});
    auto field = [&](const char* key) { return detail::parse_uint(detail::require(kv, key), key); };
    const auto p = field("p");
    const auto m = field("m");
    const auto n = field("n");
    if (p > 0xFFFFFFFFULL || m > 64 || n > 64) throw Error(ErrorKind::InvalidSpec, "metacyclic parameters out of range");
    return MetacyclicGroup(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n),
                           field("lambda"));
  }
  if (kind == "cayley") return load_cayley(std::string(body));
  if (kind == "matrix") {
    const auto kv = detail::parse_key_values(body);
    detail::reject_unknown(kv, {"p", "dim", "gens", "cap"});
    const auto p = detail::parse_uint(detail::require(kv, "p"), "p");
    const auto dim = detail::parse_uint(detail::require(kv, "dim"), "dim");
    const auto cap = kv.contains("cap") ? detail::parse_uint(kv.at("cap"), "cap") : MatrixGroup::kDefaultCap;
    if (p > 0xFFFF || dim > 64) throw Error(ErrorKind::InvalidSpec, "matrix parameters out of range");
    std::vector<Matrix> gens;
    const auto gens_text = detail::require(kv, "gens");
    std::size_t start = 0;
    while (start <= gens_text.size()) {
      auto end = gens_text.find(';', start);
      if (end == std::string::npos) end = gens_text.size();
      gens.push_back(detail::parse_uint_list(std::string_view(gens_text).substr(start, end - start)));
      start = end + 1;
    }
    return MatrixGroup(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(dim), std::move(gens), cap);
  }
  throw Error(ErrorKind::InvalidSpec, "unknown group kind '" + std::string(kind) + "'");
}

inline std::string spec_of(const AnyGroup& group) {
  return std::visit([](const auto& g) { return g.spec(); }, group);
}

}  // namespace beauville
