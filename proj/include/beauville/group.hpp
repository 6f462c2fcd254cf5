#pragma once

#include <algorithm>
#include <concepts>
#include <initializer_list>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "beauville/cayley.hpp"
#include "beauville/element.hpp"
#include "beauville/error.hpp"
#include "beauville/matrix_group.hpp"
#include "beauville/metacyclic.hpp"

namespace beauville {

template <class G>
concept FiniteGroup = requires(const G& group, Element g, Element h) {
  { group.order() } -> std::convertible_to<std::uint64_t>;
  { group.identity() } -> std::same_as<Element>;
  { group.mul(g, h) } -> std::same_as<Element>;
  { group.inv(g) } -> std::same_as<Element>;
  { group.class_id(g) } -> std::same_as<Element>;
  { group.generators() } -> std::convertible_to<std::vector<Element>>;
  { group.p_group_prime() } -> std::convertible_to<std::uint32_t>;
  { group.frattini_rank() } -> std::convertible_to<std::uint32_t>;
  { group.frattini_coords(g) } -> std::convertible_to<std::uint32_t>;
  { group.spec() } -> std::convertible_to<std::string>;
};

static_assert(FiniteGroup<MetacyclicGroup>);
static_assert(FiniteGroup<CayleyGroup>);
static_assert(FiniteGroup<MatrixGroup>);

template <FiniteGroup G>
bool contains(const G& group, Element g) {
  return g.id < group.order();
}

template <FiniteGroup G>
Element power(const G& group, Element g, std::uint64_t k) {
  Element result = group.identity();
  Element base = g;
  while (k > 0) {
    if (k & 1U) result = group.mul(result, base);
    base = group.mul(base, base);
    k >>= 1U;
  }
  return result;
}

/// Least k >= 1 with g^k = 1, by direct iteration (bounded by the group order).
template <FiniteGroup G>
std::uint64_t element_order(const G& group, Element g) {
  std::uint64_t k = 1;
  for (Element acc = g; acc != group.identity(); acc = group.mul(acc, g)) ++k;
  return k;
}

/// Conjugate h g h^-1.
template <FiniteGroup G>
Element conjugate(const G& group, Element h, Element g) {
  return group.mul(group.mul(h, g), group.inv(h));
}

template <FiniteGroup G>
bool is_p_group(const G& group) {
  return group.p_group_prime() != 0;
}

/// Elements of the subgroup generated by `gens`, sorted by id.
template <FiniteGroup G>
std::vector<Element> closure(const G& group, std::span<const Element> gens) {
  std::vector<char> member(group.order(), 0);
  std::vector<Element> found{group.identity()};
  member[group.identity().id] = 1;
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (auto s : gens) {
      const auto next = group.mul(found[head], s);
      if (!member[next.id]) {
        member[next.id] = 1;
        found.push_back(next);
      }
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

namespace detail {

/// Whether packed F_p vectors span F_p^rank.
inline bool spans(std::span<const std::uint32_t> packed, std::uint32_t p, std::uint32_t rank) {
  if (rank == 0) return true;
  if (rank == 1) return std::any_of(packed.begin(), packed.end(), [](auto v) { return v != 0; });
  if (rank == 2) {
    // Some pair of vectors has nonzero determinant.
    for (std::size_t i = 0; i < packed.size(); ++i) {
      for (std::size_t j = i + 1; j < packed.size(); ++j) {
        const std::uint64_t a0 = packed[i] % p, a1 = packed[i] / p, b0 = packed[j] % p, b1 = packed[j] / p;
        if ((a0 * b1 + (p - a1) * b0 % p) % p != 0) return true;
      }
    }
    return false;
  }
  std::vector<std::vector<std::uint64_t>> rows;
  for (auto v : packed) {
    std::vector<std::uint64_t> row(rank);
    for (std::uint32_t i = 0; i < rank; ++i, v /= p) row[i] = v % p;
    rows.push_back(std::move(row));
  }
  std::uint32_t found = 0;
  for (std::uint32_t col = 0; col < rank && found < rows.size(); ++col) {
    auto pivot = found;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[found], rows[pivot]);
    const auto inv = arith::powmod(rows[found][col], p - 2, p);
    for (auto& v : rows[found]) v = v * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == found || rows[r][col] == 0) continue;
      const auto f = rows[r][col];
      for (std::uint32_t j = 0; j < rank; ++j) rows[r][j] = (rows[r][j] + (p - f) * rows[found][j]) % p;
    }
    ++found;
  }
  return found == rank;
}

}  // namespace detail

/// Whether S generates G.  p-groups use the Frattini criterion (images span
/// G/Φ(G)); anything else falls back to breadth-first closure.
template <FiniteGroup G>
bool generates(const G& group, std::span<const Element> gens) {
  const auto p = group.p_group_prime();
  if (p != 0) {
    std::vector<std::uint32_t> packed;
    packed.reserve(gens.size());
    for (auto g : gens) packed.push_back(group.frattini_coords(g));
    return detail::spans(packed, p, group.frattini_rank());
  }
  return closure(group, gens).size() == group.order();
}

template <FiniteGroup G>
bool generates(const G& group, std::initializer_list<Element> gens) {
  return generates(group, std::span<const Element>(gens.begin(), gens.size()));
}

/// Cayley-table copy of any realization.  Ids are preserved when the identity
/// is id 0; otherwise the identity's id is swapped with 0.
template <FiniteGroup G>
CayleyGroup to_cayley(const G& group, std::string source = "") {
  const auto n = static_cast<std::uint32_t>(group.order());
  std::vector<std::vector<std::uint32_t>> rows(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) rows[i][j] = group.mul({i}, {j}).id;
  }
  return CayleyGroup(n, std::move(rows), source.empty() ? group.spec() : std::move(source));
}

}  // namespace beauville
