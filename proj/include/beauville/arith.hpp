#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace beauville::arith {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// base^exp, or nullopt on overflow of 64 bits.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
    result *= base;
  }
  return result;
}

inline std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < exp; ++i) result *= base;
  return result;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % mod);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  if (mod == 1) return 0;
  std::uint64_t result = 1;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1U;
  }
  return result;
}

/// p-adic valuation of value, capped at `cap` (value == 0 returns cap).
inline std::uint32_t valuation(std::uint64_t value, std::uint64_t p, std::uint32_t cap) {
  std::uint32_t v = 0;
  while (v < cap && value % p == 0) {
    if (value == 0) return cap;
    value /= p;
    ++v;
  }
  return v;
}

/// Distinct prime divisors in increasing order.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      primes.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

/// If n = p^k with k >= 1, returns p.
inline std::optional<std::uint64_t> prime_power_base(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  auto primes = prime_divisors(n);
  if (primes.size() != 1) return std::nullopt;
  return primes.front();
}

/// Multiplicative order of a unit modulo mod (mod >= 2); 0 if not a unit.
inline std::uint64_t multiplicative_order(std::uint64_t unit, std::uint64_t mod) {
  unit %= mod;
  if (mod == 1) return 1;
  std::uint64_t acc = unit;
  for (std::uint64_t k = 1; k <= mod; ++k) {
    if (acc == 1) return k;
    acc = mulmod(acc, unit, mod);
  }
  return 0;
}

}  // namespace beauville::arith
