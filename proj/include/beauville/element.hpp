#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace beauville {

/// Handle of a group element. Every realization numbers its elements so that
/// id order is the lexicographic order of the underlying data: (a, x) pairs for
/// metacyclic groups, table indices for Cayley tables, row-major entries for
/// matrix groups.
struct Element {
  std::uint32_t id = 0;

  friend constexpr auto operator<=>(const Element&, const Element&) = default;
};

}  // namespace beauville

template <>
struct std::hash<beauville::Element> {
  std::size_t operator()(const beauville::Element& e) const noexcept { return std::hash<std::uint32_t>{}(e.id); }
};
