#pragma once

// Riemann–Hurwitz arithmetic for G-covers of P^1 branched over three points.

#include <array>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "beauville/error.hpp"
#include "beauville/structure.hpp"

namespace beauville::geometry {

using Rational = boost::multiprecision::cpp_rational;

struct TriangleSignature {
  std::array<std::uint64_t, 3> orders{};

  TriangleSignature() = default;
  TriangleSignature(std::uint64_t l1, std::uint64_t l2, std::uint64_t l3) : orders{l1, l2, l3} {
    for (auto l : orders) {
      if (l < 2) throw Error(ErrorKind::PreconditionViolated, "branch order " + std::to_string(l) + " is below 2");
    }
  }
  explicit TriangleSignature(const std::array<std::uint64_t, 3>& o) : TriangleSignature(o[0], o[1], o[2]) {}

  /// 1/ℓ1 + 1/ℓ2 + 1/ℓ3.
  Rational reciprocal_sum() const {
    Rational sum = 0;
    for (auto l : orders) sum += Rational(1, l);
    return sum;
  }

  friend bool operator==(const TriangleSignature&, const TriangleSignature&) = default;
};

struct CoverData {
  std::uint64_t order = 0;
  TriangleSignature signature;
  std::uint64_t genus = 0;
};

inline bool is_hyperbolic(const TriangleSignature& sig) { return sig.reciprocal_sum() < 1; }

/// g = 1 + |G| (1 - Σ 1/ℓ_i) / 2, rejecting inputs where 2g - 2 is not an
/// even integer >= -2.
inline std::uint64_t genus(std::uint64_t order, const TriangleSignature& sig) {
  if (order == 0) throw Error(ErrorKind::InconsistentCover, "group order must be positive");
  const Rational twice_g_minus_2 = Rational(order) * (1 - sig.reciprocal_sum());
  const auto where = [&] {
    return "order " + std::to_string(order) + " with signature (" + std::to_string(sig.orders[0]) + "," +
           std::to_string(sig.orders[1]) + "," + std::to_string(sig.orders[2]) + ")";
  };
  if (denominator(twice_g_minus_2) != 1) {
    throw Error(ErrorKind::InconsistentCover, "2g - 2 = " + twice_g_minus_2.str() + " is not an integer for " + where());
  }
  const auto value = numerator(twice_g_minus_2);
  if (value % 2 != 0) throw Error(ErrorKind::InconsistentCover, "2g - 2 = " + value.str() + " is odd for " + where());
  if (value < -2) throw Error(ErrorKind::InconsistentCover, "2g - 2 = " + value.str() + " is below -2 for " + where());
  return static_cast<std::uint64_t>(value / 2 + 1);
}

inline CoverData cover(std::uint64_t order, const TriangleSignature& sig) { return {order, sig, genus(order, sig)}; }

/// The two curves of a structure: one cover per half-signature.
inline std::array<CoverData, 2> covers(std::uint64_t order, const Signature& sig) {
  return {cover(order, TriangleSignature(sig.first_half())), cover(order, TriangleSignature(sig.second_half()))};
}

}  // namespace beauville::geometry
