#pragma once

// The metabelian family Z/p^m ⋊_λ Z/p^n: the correction factor ε_λ of the
// p-th power map, the filtration G_r and its power-map isomorphisms, the
// existence criterion, and the (p, n, r) classification with explicit
// isomorphisms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beauville/arith.hpp"
#include "beauville/error.hpp"
#include "beauville/group.hpp"
#include "beauville/search.hpp"

namespace beauville::uniform {

/// (1/p) Σ_{i<p} λ^{ix}, computed at precision p^{m+1} and returned mod p^m.
inline std::uint64_t epsilon_lambda(std::uint32_t p, std::uint32_t m, std::uint64_t lambda, std::uint64_t x) {
  const auto mod = arith::ipow(p, m);
  const auto guard = mod * p;
  const auto lam = lambda % mod;
  if (lam % p != 1 % p) {
    throw Error(ErrorKind::InvalidLambda, "lambda = " + std::to_string(lambda) + " is not 1 mod " + std::to_string(p));
  }
  const auto step = arith::powmod(lam, x, guard);
  std::uint64_t sum = 0;
  std::uint64_t term = 1 % guard;
  for (std::uint32_t i = 0; i < p; ++i) {
    sum = (sum + term) % guard;
    term = arith::mulmod(term, step, guard);
  }
  if (sum % p != 0) throw Error(ErrorKind::NotDivisible, "power sum " + std::to_string(sum) + " is not divisible by p");
  return (sum / p) % mod;
}

/// g^(p^s) by the closed form (a, x) -> (p a ε_λ(x), p x), applied s times.
inline Element power_map_closed_form(const MetacyclicGroup& group, std::uint32_t s, Element g) {
  const auto p = group.prime();
  auto a = group.a_of(g);
  auto x = group.x_of(g);
  for (std::uint32_t i = 0; i < s; ++i) {
    const auto eps = epsilon_lambda(p, group.m(), group.lambda(), x);
    a = arith::mulmod(p * a % group.modulus_a(), eps, group.modulus_a());
    x = p * x % group.modulus_x();
  }
  return group.make(a, x);
}

/// g^(p^s).  Debug builds cross-check the closed form against repeated
/// multiplication.
inline Element power_map(const MetacyclicGroup& group, std::uint32_t s, Element g) {
  const auto closed = power_map_closed_form(group, s, g);
#ifndef NDEBUG
  if (closed != power(group, g, arith::ipow(group.prime(), s))) {
    throw Error(ErrorKind::VerificationFailed, "closed-form power map disagrees with multiplication on " + group.spec());
  }
#endif
  return closed;
}

/// Image of p^r Z_p ⋊ p^r Z_p in the finite group: {(a, x) : p^r | a, p^r | x}.
struct FiltrationLevel {
  std::uint32_t r = 0;

  bool contains(const MetacyclicGroup& group, Element g) const {
    const auto p = group.prime();
    return group.a_of(g) % arith::ipow(p, std::min(r, group.m())) == 0 &&
           group.x_of(g) % arith::ipow(p, std::min(r, group.n())) == 0;
  }

  std::vector<Element> members(const MetacyclicGroup& group) const {
    std::vector<Element> out;
    for (std::uint32_t i = 0; i < group.order(); ++i) {
      if (contains(group, {i})) out.push_back({i});
    }
    return out;
  }
};

struct FiltrationReport {
  std::uint32_t r = 0;
  std::uint32_t s = 0;
  std::uint64_t source_cosets = 0;
  std::uint64_t target_cosets = 0;
  bool quotients_elementary_abelian = false;
  bool well_defined = false;
  bool homomorphism = false;
  bool bijective = false;

  bool passed() const { return quotients_elementary_abelian && well_defined && homomorphism && bijective; }
};

namespace detail {

inline bool lambda_is_minus_one_mod_4(const MetacyclicGroup& group) {
  return group.prime() == 2 && group.m() >= 2 && group.lambda() % 4 == 3;
}

/// Labels each element of G_r by the least id of its G_{r+1}-coset.
struct CosetLabels {
  std::vector<Element> members;
  std::vector<std::uint32_t> label;  // indexed by element id; kNone outside G_r
  std::vector<Element> representatives;
  static constexpr auto kNone = static_cast<std::uint32_t>(-1);

  CosetLabels(const MetacyclicGroup& group, std::uint32_t r) {
    members = FiltrationLevel{r}.members(group);
    const auto sub = FiltrationLevel{r + 1}.members(group);
    label.assign(group.order(), kNone);
    for (auto g : members) {
      if (label[g.id] != kNone) continue;
      representatives.push_back(g);
      for (auto h : sub) label[group.mul(g, h).id] = g.id;
    }
  }
};

}  // namespace detail

/// Checks by enumeration that g -> g^(p^s) induces an isomorphism
/// G_r/G_{r+1} -> G_{r+s}/G_{r+s+1} of groups of shape (Z/p)^2.
inline FiltrationReport filtration_iso_check(const MetacyclicGroup& group, std::uint32_t r, std::uint32_t s) {
  if (detail::lambda_is_minus_one_mod_4(group) && r == 0) {
    throw Error(ErrorKind::PreconditionViolated, "for p = 2 and lambda = -1 mod 4 the isomorphism needs r >= 1");
  }
  if (r + s + 1 > std::min(group.m(), group.n())) {
    throw Error(ErrorKind::PreconditionViolated, "level r + s + 1 = " + std::to_string(r + s + 1) +
                                                     " exceeds min(m, n) = " + std::to_string(std::min(group.m(), group.n())));
  }
  const auto p = group.prime();
  const auto ps = arith::ipow(p, s);
  const detail::CosetLabels source(group, r);
  const detail::CosetLabels target(group, r + s);

  FiltrationReport report;
  report.r = r;
  report.s = s;
  report.source_cosets = source.representatives.size();
  report.target_cosets = target.representatives.size();

  auto abelian_exponent_p = [&](const detail::CosetLabels& q) {
    if (q.representatives.size() != static_cast<std::size_t>(p) * p) return false;
    for (auto u : q.representatives) {
      if (q.label[power(group, u, p).id] != q.label[group.identity().id]) return false;
      for (auto v : q.representatives) {
        if (q.label[group.mul(u, v).id] != q.label[group.mul(v, u).id]) return false;
      }
    }
    return true;
  };
  report.quotients_elementary_abelian = abelian_exponent_p(source) && abelian_exponent_p(target);

  // Induced map on coset labels; well defined iff every member agrees.
  std::vector<std::uint32_t> induced(group.order(), detail::CosetLabels::kNone);
  report.well_defined = true;
  for (auto g : source.members) {
    const auto img = power(group, g, ps);
    const auto t = target.label[img.id];
    if (t == detail::CosetLabels::kNone) {
      report.well_defined = false;
      break;
    }
    auto& slot = induced[source.label[g.id]];
    if (slot == detail::CosetLabels::kNone) {
      slot = t;
    } else if (slot != t) {
      report.well_defined = false;
      break;
    }
  }
  if (!report.well_defined) return report;

  report.homomorphism = true;
  for (auto u : source.representatives) {
    for (auto v : source.representatives) {
      const auto lhs = induced[source.label[group.mul(u, v).id]];
      const auto rhs = target.label[group.mul({induced[u.id]}, {induced[v.id]}).id];
      if (lhs != rhs) report.homomorphism = false;
    }
  }
  std::vector<std::uint32_t> images;
  for (auto u : source.representatives) images.push_back(induced[u.id]);
  std::sort(images.begin(), images.end());
  report.bijective = std::unique(images.begin(), images.end()) == images.end() &&
                     images.size() == target.representatives.size();
  return report;
}

struct AdmitsVerdict {
  bool admits = false;
  std::string reason;
  /// Exhaustive-search cross-check, when requested and the group is small enough.
  std::optional<bool> audit_agrees;
  std::optional<std::uint64_t> audit_count;
};

/// Largest group order the audit cross-checks by exhaustive search.
constexpr std::uint64_t kAuditOrderLimit = 4096;

/// Z/p^m ⋊_λ Z/p^n admits a structure iff p >= 5 and n = m.
inline AdmitsVerdict admits_beauville(std::uint32_t p, std::uint32_t m, std::uint32_t n, std::uint64_t lambda,
                                      bool audit = false, unsigned threads = 1) {
  const MetacyclicGroup group(p, m, n, lambda);
  AdmitsVerdict verdict;
  if (p < 5) {
    verdict.reason = "p = " + std::to_string(p) + " < 5";
  } else if (n != m) {
    verdict.reason = "n = " + std::to_string(n) + " != m = " + std::to_string(m);
  } else {
    verdict.admits = true;
    verdict.reason = "p >= 5 and n = m";
  }
  if (audit && group.order() <= kAuditOrderLimit) {
    SearchOptions options;
    options.mode = SearchMode::Exhaustive;
    options.store_limit = 0;
    options.threads = threads;
    const auto found = search(group, options);
    if (found.exhaustive && found.count) {
      verdict.audit_count = *found.count;
      verdict.audit_agrees = (*found.count > 0) == verdict.admits;
    }
  }
  return verdict;
}

struct ClassificationInvariant {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  /// Order exponent of λ in Aut(Z/p^n); 0 when abelian.
  std::uint32_t r = 0;
  bool abelian = false;

  friend bool operator==(const ClassificationInvariant&, const ClassificationInvariant&) = default;
};

inline ClassificationInvariant classify(std::uint32_t p, std::uint32_t n, std::uint64_t lambda) {
  if (p == 2) throw Error(ErrorKind::OddPrimeOnly, "the (p, n, r) classification is stated for odd p only");
  const MetacyclicGroup group(p, n, n, lambda);
  ClassificationInvariant inv{p, n, 0, group.is_abelian()};
  if (!inv.abelian) {
    const auto s = arith::valuation(group.lambda() + group.modulus_a() - 1, p, n);
    inv.r = n - s;
  }
  return inv;
}

/// (a, x) -> (a, u x): an isomorphism Z/p^n ⋊_λ Z/p^n -> Z/p^n ⋊_λ' Z/p^n
/// whenever λ'^u = λ.
struct IsomorphismWitness {
  std::uint64_t unit = 1;

  Element operator()(const MetacyclicGroup& source, const MetacyclicGroup& target, Element g) const {
    return target.make(source.a_of(g), arith::mulmod(unit, source.x_of(g), source.modulus_x()));
  }
};

struct WitnessResult {
  ClassificationInvariant source;
  ClassificationInvariant target;
  std::optional<IsomorphismWitness> witness;
  /// Number of (g, h) pairs on which the homomorphism law was audited.
  std::uint64_t audited_pairs = 0;
  std::string refutation;
};

/// Pairs are audited exhaustively up to this order, by deterministic stride above.
constexpr std::uint64_t kWitnessFullAuditLimit = 10'000;

inline WitnessResult isomorphism_witness(std::uint32_t p, std::uint32_t n, std::uint64_t lambda, std::uint64_t lambda_prime) {
  WitnessResult result{classify(p, n, lambda), classify(p, n, lambda_prime), std::nullopt, 0, ""};
  if (!(result.source == result.target)) {
    result.refutation = "invariants differ: r = " + std::to_string(result.source.r) + (result.source.abelian ? " (abelian)" : "") +
                        " vs r = " + std::to_string(result.target.r) + (result.target.abelian ? " (abelian)" : "");
    return result;
  }
  const MetacyclicGroup source(p, n, n, lambda);
  const MetacyclicGroup target(p, n, n, lambda_prime);
  const auto mod = source.modulus_x();
  // λ' has p-power order dividing p^n, so the exponent only matters mod p^n.
  std::optional<std::uint64_t> unit;
  for (std::uint64_t u = 1; u < mod && !unit; ++u) {
    if (u % p != 0 && arith::powmod(target.lambda(), u, target.modulus_a()) == source.lambda()) unit = u;
  }
  if (mod == 1) unit = 1;
  if (!unit) throw Error(ErrorKind::WitnessSearchFailed, "no unit u with lambda'^u = lambda although invariants agree");

  const IsomorphismWitness witness{*unit};
  const auto order = source.order();
  std::vector<char> hit(order, 0);
  for (std::uint32_t i = 0; i < order; ++i) {
    const auto img = witness(source, target, {i});
    if (hit[img.id]) throw Error(ErrorKind::WitnessSearchFailed, "witness map is not injective");
    hit[img.id] = 1;
  }
  auto check = [&](Element g, Element h) {
    ++result.audited_pairs;
    if (witness(source, target, source.mul(g, h)) != target.mul(witness(source, target, g), witness(source, target, h))) {
      throw Error(ErrorKind::WitnessSearchFailed, "witness map is not a homomorphism");
    }
  };
  if (order <= kWitnessFullAuditLimit) {
    for (std::uint32_t i = 0; i < order; ++i) {
      for (std::uint32_t j = 0; j < order; ++j) check({i}, {j});
    }
  } else {
    // Coprime strides walk a deterministic spread of pairs.
    const std::uint64_t samples = 100'000;
    for (std::uint64_t k = 0; k < samples; ++k) {
      check({static_cast<std::uint32_t>(k * 7919 % order)}, {static_cast<std::uint32_t>(k * 104729 % order)});
    }
  }
  result.witness = witness;
  return result;
}

}  // namespace beauville::uniform
