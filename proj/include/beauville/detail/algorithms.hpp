#pragma once

// Table-driven helpers shared by the Cayley-table and matrix realizations.
// They only need raw multiplication/inversion on element ids, so they work
// before a full group object exists.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "beauville/arith.hpp"

namespace beauville::detail {

using Mul = std::function<std::uint32_t(std::uint32_t, std::uint32_t)>;
using Inv = std::function<std::uint32_t(std::uint32_t)>;

struct RawOps {
  std::uint32_t order = 0;
  std::uint32_t identity = 0;
  Mul mul;
  Inv inv;
};

/// Membership bitmap of the subgroup generated by `gens`.
inline std::vector<char> subgroup_closure(const RawOps& ops, const std::vector<std::uint32_t>& gens) {
  std::vector<char> member(ops.order, 0);
  std::vector<std::uint32_t> queue{ops.identity};
  member[ops.identity] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto h = queue[head];
    for (auto g : gens) {
      const auto next = ops.mul(h, g);
      if (!member[next]) {
        member[next] = 1;
        queue.push_back(next);
      }
    }
  }
  return member;
}

/// Greedy generating set: scan ids in order, keep every element outside the
/// subgroup generated so far.
inline std::vector<std::uint32_t> greedy_generators(const RawOps& ops) {
  std::vector<std::uint32_t> gens;
  std::vector<char> member(ops.order, 0);
  member[ops.identity] = 1;
  for (std::uint32_t g = 0; g < ops.order; ++g) {
    if (member[g]) continue;
    gens.push_back(g);
    member = subgroup_closure(ops, gens);
  }
  return gens;
}

inline std::uint32_t element_order(const RawOps& ops, std::uint32_t g) {
  std::uint32_t k = 1;
  for (auto acc = g; acc != ops.identity; acc = ops.mul(acc, g)) ++k;
  return k;
}

inline std::uint32_t power(const RawOps& ops, std::uint32_t g, std::uint64_t k) {
  std::uint32_t result = ops.identity;
  std::uint32_t base = g;
  while (k > 0) {
    if (k & 1U) result = ops.mul(result, base);
    base = ops.mul(base, base);
    k >>= 1U;
  }
  return result;
}

/// class_rep[g] = least id conjugate to g. Orbits are explored under
/// conjugation by a generating set, which reaches the full class.
inline std::vector<std::uint32_t> conjugacy_representatives(const RawOps& ops,
                                                            const std::vector<std::uint32_t>& gens) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> rep(ops.order, kUnset);
  std::vector<std::uint32_t> gen_inv;
  gen_inv.reserve(gens.size());
  for (auto s : gens) gen_inv.push_back(ops.inv(s));
  std::vector<std::uint32_t> orbit;
  for (std::uint32_t g = 0; g < ops.order; ++g) {
    if (rep[g] != kUnset) continue;
    // g is the least unvisited id, hence the least element of its class.
    orbit.assign(1, g);
    rep[g] = g;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      const auto h = orbit[head];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto c = ops.mul(ops.mul(gens[i], h), gen_inv[i]);
        if (rep[c] == kUnset) {
          rep[c] = g;
          orbit.push_back(c);
        }
      }
    }
  }
  return rep;
}

struct FrattiniData {
  std::uint32_t rank = 0;
  /// Packed F_p coordinates sum c_i p^i of each element's image.
  std::vector<std::uint32_t> coords;
};

/// Frattini quotient of a p-group: Phi is the normal closure of all p-th
/// powers and the commutators of a generating set; coordinates come from a
/// greedy basis of G/Phi.
inline FrattiniData frattini(const RawOps& ops, std::uint32_t p, const std::vector<std::uint32_t>& gens) {
  std::vector<std::uint32_t> phi_gens;
  for (std::uint32_t g = 0; g < ops.order; ++g) {
    const auto pw = power(ops, g, p);
    if (pw != ops.identity) phi_gens.push_back(pw);
  }
  for (auto s : gens) {
    for (auto t : gens) {
      const auto comm = ops.mul(ops.mul(ops.inv(s), ops.inv(t)), ops.mul(s, t));
      if (comm != ops.identity) phi_gens.push_back(comm);
    }
  }
  std::sort(phi_gens.begin(), phi_gens.end());
  phi_gens.erase(std::unique(phi_gens.begin(), phi_gens.end()), phi_gens.end());

  auto member = subgroup_closure(ops, phi_gens);
  // Normal closure under conjugation by the generators.
  for (bool grew = true; grew;) {
    grew = false;
    for (std::uint32_t h = 0; h < ops.order && !grew; ++h) {
      if (!member[h]) continue;
      for (auto s : gens) {
        const auto c = ops.mul(ops.mul(s, h), ops.inv(s));
        if (!member[c]) {
          phi_gens.push_back(c);
          member = subgroup_closure(ops, phi_gens);
          grew = true;
          break;
        }
      }
    }
  }

  FrattiniData data;
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  data.coords.assign(ops.order, kUnset);
  std::vector<std::uint32_t> span;
  for (std::uint32_t h = 0; h < ops.order; ++h) {
    if (member[h]) {
      data.coords[h] = 0;
      span.push_back(h);
    }
  }
  std::uint32_t weight = 1;
  for (std::uint32_t g = 0; g < ops.order; ++g) {
    if (data.coords[g] != kUnset) continue;
    const auto old_span = span;
    auto gk = ops.identity;
    for (std::uint32_t k = 1; k < p; ++k) {
      gk = ops.mul(gk, g);
      for (auto h : old_span) {
        const auto e = ops.mul(gk, h);
        data.coords[e] = data.coords[h] + k * weight;
        span.push_back(e);
      }
    }
    weight *= p;
    ++data.rank;
  }
  return data;
}

}  // namespace beauville::detail
