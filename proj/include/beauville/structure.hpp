#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beauville/error.hpp"
#include "beauville/group.hpp"

namespace beauville {

/// Ordered triple (x, y, z); a valid half has x y z = 1.
struct Triple {
  Element x;
  Element y;
  Element z;

  std::array<Element, 3> elements() const { return {x, y, z}; }
  friend constexpr auto operator<=>(const Triple&, const Triple&) = default;
};

/// The triple (x, y, (xy)^-1), which has product one by construction.
template <FiniteGroup G>
Triple make_triple(const G& group, Element x, Element y) {
  return {x, y, group.inv(group.mul(x, y))};
}

struct Signature {
  std::array<std::uint64_t, 6> orders{};

  bool balanced() const { return std::all_of(orders.begin(), orders.end(), [&](auto o) { return o == orders[0]; }); }
  std::array<std::uint64_t, 3> first_half() const { return {orders[0], orders[1], orders[2]}; }
  std::array<std::uint64_t, 3> second_half() const { return {orders[3], orders[4], orders[5]}; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Conjugacy-class ids (least class members) of every nontrivial power of the
/// triple's entries, sorted and deduplicated.
struct ConjugatePowerSet {
  Triple owner;
  std::vector<Element> classes;

  bool contains(Element cls) const { return std::binary_search(classes.begin(), classes.end(), cls); }
};

struct BeauvilleStructure {
  std::string group;
  Triple first;
  Triple second;
  Signature signature;
  bool verified = false;

  friend bool operator==(const BeauvilleStructure&, const BeauvilleStructure&) = default;
};

/// Which defining condition failed.  `triple` names the offending half for
/// conditions 1 and 2; for condition 3 `witness` is a common class id.
struct Refutation {
  int condition = 0;
  int triple = 0;
  std::optional<Element> witness;
  std::string detail;
};

struct VerifyResult {
  BeauvilleStructure structure;
  std::optional<Refutation> refutation;

  bool verified() const { return structure.verified; }
};

template <FiniteGroup G>
ConjugatePowerSet conjugate_power_set(const G& group, const Triple& t) {
  ConjugatePowerSet set{t, {}};
  for (auto g : t.elements()) {
    for (Element acc = g; acc != group.identity(); acc = group.mul(acc, g)) set.classes.push_back(group.class_id(acc));
  }
  std::sort(set.classes.begin(), set.classes.end());
  set.classes.erase(std::unique(set.classes.begin(), set.classes.end()), set.classes.end());
  return set;
}

template <FiniteGroup G>
Signature signature_of(const G& group, const Triple& first, const Triple& second) {
  Signature sig;
  const auto a = first.elements();
  const auto b = second.elements();
  for (std::size_t i = 0; i < 3; ++i) {
    sig.orders[i] = element_order(group, a[i]);
    sig.orders[i + 3] = element_order(group, b[i]);
  }
  return sig;
}

template <FiniteGroup G>
Signature signature_of(const G& group, const BeauvilleStructure& s) {
  return signature_of(group, s.first, s.second);
}

/// Checks the three defining conditions: product one, generation, and
/// disjointness of the conjugate power sets.
template <FiniteGroup G>
VerifyResult verify(const G& group, const Triple& first, const Triple& second) {
  for (const auto& t : {first, second}) {
    for (auto g : t.elements()) {
      if (!contains(group, g)) {
        throw Error(ErrorKind::MismatchedGroups, "element id " + std::to_string(g.id) + " is outside " + group.spec());
      }
    }
  }
  VerifyResult result{{group.spec(), first, second, signature_of(group, first, second), false}, std::nullopt};

  if (group.order() == 1) {
    result.refutation = Refutation{3, 0, std::nullopt, "the trivial group admits no Beauville structure"};
    return result;
  }
  const Triple* halves[] = {&first, &second};
  for (int i = 0; i < 2; ++i) {
    const auto& t = *halves[i];
    if (group.mul(group.mul(t.x, t.y), t.z) != group.identity()) {
      result.refutation = Refutation{1, i + 1, std::nullopt, "product of the triple is not the identity"};
      return result;
    }
  }
  for (int i = 0; i < 2; ++i) {
    const auto els = halves[i]->elements();
    if (!generates(group, std::span<const Element>(els))) {
      result.refutation = Refutation{2, i + 1, std::nullopt, "triple does not generate the group"};
      return result;
    }
  }
  const auto second_set = conjugate_power_set(group, second);
  for (auto g : first.elements()) {
    for (Element acc = g; acc != group.identity(); acc = group.mul(acc, g)) {
      const auto cls = group.class_id(acc);
      if (second_set.contains(cls)) {
        result.refutation = Refutation{3, 0, cls, "a nontrivial power of the first half is conjugate to one of the second"};
        return result;
      }
    }
  }
  result.structure.verified = true;
  return result;
}

}  // namespace beauville
