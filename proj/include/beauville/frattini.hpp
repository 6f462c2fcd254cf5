#pragma once

#include <cstdint>
#include <vector>

#include "beauville/error.hpp"
#include "beauville/group.hpp"

namespace beauville {

/// The map G -> G/Φ(G) = (Z/p)^rank of a p-group.
///
/// Images are packed F_p vectors.  For rank 2 the packing agrees with the ids
/// of MetacyclicGroup(p, 1, 1, 1), which is used as the target realization.
struct FrattiniQuotientMap {
  std::uint32_t p = 0;
  std::uint32_t rank = 0;
  std::vector<std::uint32_t> image;

  Element operator()(Element g) const { return {image[g.id]}; }

  std::uint64_t target_order() const { return arith::ipow(p, rank); }

  MetacyclicGroup target() const {
    if (rank != 2) {
      throw Error(ErrorKind::UnsupportedFamily, "Frattini quotient has rank " + std::to_string(rank) +
                                                    "; only rank 2 is realized as a group");
    }
    return MetacyclicGroup(p, 1, 1, 1);
  }

  /// Elements of Φ(G), i.e. the kernel.
  std::vector<Element> kernel() const {
    std::vector<Element> out;
    for (std::uint32_t i = 0; i < image.size(); ++i) {
      if (image[i] == 0) out.push_back({i});
    }
    return out;
  }
};

template <FiniteGroup G>
FrattiniQuotientMap frattini_quotient(const G& group) {
  const auto p = group.p_group_prime();
  if (p == 0) throw Error(ErrorKind::NotAPGroup, "group of order " + std::to_string(group.order()) + " is not a p-group");
  FrattiniQuotientMap map;
  map.p = p;
  map.rank = group.frattini_rank();
  map.image.resize(group.order());
  for (std::uint32_t i = 0; i < group.order(); ++i) map.image[i] = group.frattini_coords({i});
  return map;
}

}  // namespace beauville
