#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "beauville/arith.hpp"
#include "beauville/element.hpp"
#include "beauville/error.hpp"

namespace beauville {

/// Z/p^m ⋊_λ Z/p^n with law (a, x)(b, y) = (a + λ^x b, x + y).
///
/// Element ids are a * p^n + x, so id order is lexicographic order on (a, x).
/// λ must be a unit mod p^m whose order divides p^n; it is stored reduced.
class MetacyclicGroup {
 public:
  MetacyclicGroup(std::uint32_t p, std::uint32_t m, std::uint32_t n, std::uint64_t lambda)
      : p_(p), m_(m), n_(n) {
    if (!arith::is_prime(p)) throw Error(ErrorKind::InvalidSpec, "p = " + std::to_string(p) + " is not prime");
    if (m == 0 || n == 0) throw Error(ErrorKind::InvalidSpec, "exponents m and n must be >= 1");
    const auto order = arith::checked_pow(p, m + n);
    if (!order || *order > 0xFFFFFFFFULL) throw Error(ErrorKind::InvalidSpec, "group order exceeds 2^32");
    mod_a_ = arith::ipow(p, m);
    mod_x_ = arith::ipow(p, n);
    lambda_ = lambda % mod_a_;
    if (std::gcd(lambda_, mod_a_) != 1) {
      throw Error(ErrorKind::InvalidLambda, "lambda = " + std::to_string(lambda) + " is not a unit mod " +
                                                std::to_string(mod_a_));
    }
    if (arith::powmod(lambda_, mod_x_, mod_a_) != 1 % mod_a_) {
      throw Error(ErrorKind::InvalidLambda, "lambda = " + std::to_string(lambda) + " has multiplicative order " +
                                                std::to_string(arith::multiplicative_order(lambda_, mod_a_)) +
                                                " mod " + std::to_string(mod_a_) + ", not dividing " +
                                                std::to_string(mod_x_));
    }
    lambda_pow_.resize(mod_x_);
    std::uint64_t acc = 1 % mod_a_;
    for (std::uint64_t x = 0; x < mod_x_; ++x) {
      lambda_pow_[x] = acc;
      acc = acc * lambda_ % mod_a_;
    }
  }

  std::uint32_t prime() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t lambda() const { return lambda_; }
  std::uint64_t modulus_a() const { return mod_a_; }
  std::uint64_t modulus_x() const { return mod_x_; }
  bool is_abelian() const { return lambda_ == 1 % mod_a_; }

  std::uint64_t order() const { return mod_a_ * mod_x_; }
  Element identity() const { return {0}; }

  Element make(std::uint64_t a, std::uint64_t x) const {
    return {static_cast<std::uint32_t>((a % mod_a_) * mod_x_ + x % mod_x_)};
  }
  std::uint64_t a_of(Element g) const { return g.id / mod_x_; }
  std::uint64_t x_of(Element g) const { return g.id % mod_x_; }
  std::pair<std::uint64_t, std::uint64_t> coords(Element g) const { return {a_of(g), x_of(g)}; }

  /// λ^x for a residue x mod p^n.
  std::uint64_t lambda_pow(std::uint64_t x) const { return lambda_pow_[x % mod_x_]; }

  Element mul(Element g, Element h) const {
    const auto [a, x] = coords(g);
    const auto [b, y] = coords(h);
    return make((a + lambda_pow_[x] * b) % mod_a_, (x + y) % mod_x_);
  }

  Element inv(Element g) const {
    const auto [a, x] = coords(g);
    const auto neg_x = (mod_x_ - x) % mod_x_;
    const auto lam_inv_a = lambda_pow_[neg_x] * a % mod_a_;
    return make((mod_a_ - lam_inv_a) % mod_a_, neg_x);
  }

  /// Least element of the conjugacy class of g.  Conjugating (a, x) by (b, y)
  /// gives (λ^y a + (1 - λ^x) b, x); the ideal (1 - λ^x) Z/p^m is p^v Z/p^m, so
  /// the class is {(λ^y a mod p^v) + p^v k, x}.
  Element class_id(Element g) const {
    const auto [a, x] = coords(g);
    const auto d = (1 + mod_a_ - lambda_pow_[x]) % mod_a_;
    const auto v = arith::valuation(d, p_, m_);
    const auto q = arith::ipow(p_, v);
    auto best = q;
    for (std::uint64_t y = 0; y < mod_x_ && best > 0; ++y) best = std::min(best, lambda_pow_[y] * a % mod_a_ % q);
    return make(best, x);
  }

  std::vector<Element> generators() const { return {make(1, 0), make(0, 1)}; }

  /// Every metacyclic group here is a p-group.
  std::uint32_t p_group_prime() const { return p_; }
  std::uint32_t frattini_rank() const { return 2; }
  /// Image in G/Φ(G) = (Z/p)^2 packed as (a mod p) * p + (x mod p).
  std::uint32_t frattini_coords(Element g) const {
    return static_cast<std::uint32_t>((a_of(g) % p_) * p_ + x_of(g) % p_);
  }

  std::string spec() const {
    return "metacyclic:p=" + std::to_string(p_) + ",m=" + std::to_string(m_) + ",n=" + std::to_string(n_) +
           ",lambda=" + std::to_string(lambda_);
  }

  bool operator==(const MetacyclicGroup& other) const {
    return p_ == other.p_ && m_ == other.m_ && n_ == other.n_ && lambda_ == other.lambda_;
  }

 private:
  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t n_;
  std::uint64_t mod_a_ = 1;
  std::uint64_t mod_x_ = 1;
  std::uint64_t lambda_ = 1;
  std::vector<std::uint64_t> lambda_pow_;
};

}  // namespace beauville
