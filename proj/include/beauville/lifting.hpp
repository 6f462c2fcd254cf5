#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "beauville/any_group.hpp"
#include "beauville/error.hpp"
#include "beauville/frattini.hpp"
#include "beauville/group.hpp"
#include "beauville/search.hpp"
#include "beauville/structure.hpp"

namespace beauville {

/// A surjective homomorphism source -> target, materialized as an image table
/// with fibers sorted by id.
template <FiniteGroup Source, FiniteGroup Target>
class Surjection {
 public:
  /// Pairs are audited exhaustively up to this source order; above it the
  /// homomorphism property is checked on (element, generator) pairs, which
  /// suffices because every element is a word in the generators.
  static constexpr std::uint64_t kFullAuditLimit = 10'000;

  Surjection(std::shared_ptr<const Source> source, std::shared_ptr<const Target> target,
             const std::function<Element(Element)>& map)
      : source_(std::move(source)), target_(std::move(target)) {
    const auto n = static_cast<std::uint32_t>(source_->order());
    const auto t = static_cast<std::uint32_t>(target_->order());
    if (n % t != 0) throw Error(ErrorKind::NotASurjection, "target order does not divide source order");
    image_.resize(n);
    std::vector<std::uint32_t> sizes(t, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto img = map({i});
      if (img.id >= t) throw Error(ErrorKind::NotASurjection, "image outside the target");
      image_[i] = img;
      ++sizes[img.id];
    }
    offsets_.assign(t + 1, 0);
    for (std::uint32_t j = 0; j < t; ++j) {
      if (sizes[j] != n / t) throw Error(ErrorKind::NotASurjection, "fiber sizes are not all |source|/|target|");
      offsets_[j + 1] = offsets_[j] + sizes[j];
    }
    fibers_.resize(n);
    auto cursor = offsets_;
    for (std::uint32_t i = 0; i < n; ++i) fibers_[cursor[image_[i].id]++] = {i};
    audit();
  }

  const Source& source() const { return *source_; }
  const Target& target() const { return *target_; }
  std::shared_ptr<const Source> source_ptr() const { return source_; }
  std::shared_ptr<const Target> target_ptr() const { return target_; }

  Element operator()(Element g) const { return image_[g.id]; }
  Triple operator()(const Triple& t) const { return {image_[t.x.id], image_[t.y.id], image_[t.z.id]}; }

  /// Preimage of t, in increasing id (lexicographic) order.
  std::span<const Element> fiber(Element t) const {
    return {fibers_.data() + offsets_[t.id], fibers_.data() + offsets_[t.id + 1]};
  }

 private:
  void audit() const {
    const auto n = static_cast<std::uint32_t>(source_->order());
    auto check = [&](Element g, Element h) {
      if (image_[source_->mul(g, h).id] != target_->mul(image_[g.id], image_[h.id])) {
        throw Error(ErrorKind::NotASurjection, "map is not a homomorphism at (" + std::to_string(g.id) + ", " +
                                                   std::to_string(h.id) + ")");
      }
    };
    if (n <= kFullAuditLimit) {
      for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) check({i}, {j});
      }
    } else {
      const auto gens = source_->generators();
      for (std::uint32_t i = 0; i < n; ++i) {
        for (auto s : gens) check({i}, s);
      }
    }
  }

  std::shared_ptr<const Source> source_;
  std::shared_ptr<const Target> target_;
  std::vector<Element> image_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Element> fibers_;
};

template <FiniteGroup G>
Surjection<G, G> identity_surjection(std::shared_ptr<const G> group) {
  return Surjection<G, G>(group, group, [](Element g) { return g; });
}

/// G -> G/Φ(G) with the rank-2 quotient realized as MetacyclicGroup(p, 1, 1, 1).
template <FiniteGroup G>
Surjection<G, MetacyclicGroup> frattini_surjection(std::shared_ptr<const G> group) {
  auto map = frattini_quotient(*group);
  auto target = std::make_shared<const MetacyclicGroup>(map.target());
  return Surjection<G, MetacyclicGroup>(std::move(group), std::move(target), [&](Element g) { return map(g); });
}

/// Coordinatewise reduction Metacyclic(p, m, n, λ) -> Metacyclic(p, m', n', λ mod p^m').
inline Surjection<MetacyclicGroup, MetacyclicGroup> reduction_surjection(std::shared_ptr<const MetacyclicGroup> source,
                                                                         std::shared_ptr<const MetacyclicGroup> target) {
  if (source->prime() != target->prime() || target->m() > source->m() || target->n() > source->n()) {
    throw Error(ErrorKind::NotASurjection, target->spec() + " is not a coordinate reduction of " + source->spec());
  }
  if (source->lambda() % target->modulus_a() != target->lambda()) {
    throw Error(ErrorKind::IncompatibleLambda, "lambda " + std::to_string(source->lambda()) + " does not reduce to " +
                                                   std::to_string(target->lambda()));
  }
  const auto* src = source.get();
  const auto* tgt = target.get();
  return {std::move(source), std::move(target), [src, tgt](Element g) { return tgt->make(src->a_of(g), src->x_of(g)); }};
}

/// Lifts a structure along a surjection of p-groups: the first half is lifted
/// to an order-preserving generating triple (searching the fibers of x and y in
/// lexicographic order), the second half uses the least fiber elements of a
/// and b with c = (ab)^-1.
template <FiniteGroup Source, FiniteGroup Target>
BeauvilleStructure lift_structure(const Surjection<Source, Target>& phi, const BeauvilleStructure& s) {
  const auto& source = phi.source();
  const auto& target = phi.target();
  if (!is_p_group(source)) throw Error(ErrorKind::NotAPGroup, source.spec() + " is not a p-group");
  if (s.group != target.spec()) throw Error(ErrorKind::MismatchedGroups, "structure lives on " + s.group + ", not " + target.spec());

  const auto want_x = element_order(target, s.first.x);
  const auto want_y = element_order(target, s.first.y);
  const auto want_z = element_order(target, s.first.z);
  std::optional<Triple> first;
  for (auto x : phi.fiber(s.first.x)) {
    if (element_order(source, x) != want_x) continue;
    for (auto y : phi.fiber(s.first.y)) {
      if (element_order(source, y) != want_y) continue;
      const auto t = make_triple(source, x, y);
      if (element_order(source, t.z) != want_z) continue;
      const auto els = t.elements();
      if (!generates(source, std::span<const Element>(els))) continue;
      first = t;
      break;
    }
    if (first) break;
  }
  if (!first) {
    throw Error(ErrorKind::OrderPreservingLiftNotFound,
                "no generating lift of the first half preserves the orders (" + std::to_string(want_x) + ", " +
                    std::to_string(want_y) + ", " + std::to_string(want_z) + ")");
  }
  const auto second = make_triple(source, phi.fiber(s.second.x).front(), phi.fiber(s.second.y).front());
  auto checked = verify(source, *first, second);
  if (!checked.verified()) {
    throw Error(ErrorKind::VerificationFailed, "lifted structure fails condition " +
                                                   std::to_string(checked.refutation->condition) + " on " + source.spec());
  }
  return checked.structure;
}

/// Maps both halves through phi and re-verifies on the target.
template <FiniteGroup Source, FiniteGroup Target>
VerifyResult push_forward(const Surjection<Source, Target>& phi, const BeauvilleStructure& s) {
  if (s.group != phi.source().spec()) {
    throw Error(ErrorKind::MismatchedGroups, "structure lives on " + s.group + ", not " + phi.source().spec());
  }
  return verify(phi.target(), phi(s.first), phi(s.second));
}

/// Index into each of the four fibers (of x, y, a, b), reduced modulo the fiber size.
struct FiberChoice {
  std::array<std::uint64_t, 4> index{};
};

namespace detail {

template <FiniteGroup G>
void require_frattini_family(const G& group) {
  if constexpr (std::is_same_v<G, MetacyclicGroup>) {
    if (group.prime() < 5 || group.m() != group.n()) {
      throw Error(ErrorKind::UnsupportedFamily, "Frattini lifting needs Metacyclic(p, n, n, lambda) with p >= 5, got " + group.spec());
    }
  } else if constexpr (std::is_same_v<G, MatrixGroup>) {
    const auto p = group.field_prime();
    if (p < 5 || group.p_group_prime() != p || group.dim() > p) {
      throw Error(ErrorKind::UnsupportedFamily, "Frattini lifting needs a p-subgroup of GL_d(F_p) with d <= p and p >= 5, got " + group.spec());
    }
    if (group.frattini_rank() != 2) {
      throw Error(ErrorKind::UnsupportedFamily, "Frattini quotient has rank " + std::to_string(group.frattini_rank()) + ", not 2");
    }
  } else {
    throw Error(ErrorKind::UnsupportedFamily, "Frattini lifting is only established for the metacyclic and matrix families");
  }
}

}  // namespace detail

/// Lifts a structure on G/Φ(G) (given on MetacyclicGroup(p, 1, 1, 1)) to G by
/// choosing fiber elements over x, y, a, b and deriving z and c.  On the
/// supported families every choice of lifts is a structure.
template <FiniteGroup G>
BeauvilleStructure frattini_lift(const Surjection<G, MetacyclicGroup>& phi, const BeauvilleStructure& base, FiberChoice choice = {}) {
  const auto& group = phi.source();
  detail::require_frattini_family(group);
  if (base.group != phi.target().spec()) {
    throw Error(ErrorKind::MismatchedGroups, "base structure lives on " + base.group + ", not " + phi.target().spec());
  }
  auto pick = [&](Element t, std::uint64_t i) {
    const auto f = phi.fiber(t);
    return f[i % f.size()];
  };
  const auto first = make_triple(group, pick(base.first.x, choice.index[0]), pick(base.first.y, choice.index[1]));
  const auto second = make_triple(group, pick(base.second.x, choice.index[2]), pick(base.second.y, choice.index[3]));
  auto checked = verify(group, first, second);
  if (!checked.verified()) {
    throw Error(ErrorKind::VerificationFailed, "Frattini lift fails condition " +
                                                   std::to_string(checked.refutation->condition) + " on " + group.spec());
  }
  return checked.structure;
}

template <FiniteGroup G>
BeauvilleStructure frattini_lift(std::shared_ptr<const G> group, const BeauvilleStructure& base, FiberChoice choice = {}) {
  detail::require_frattini_family(*group);
  return frattini_lift(frattini_surjection(std::move(group)), base, choice);
}

/// Lexicographically least structure on (Z/p)^2 = MetacyclicGroup(p, 1, 1, 1).
inline BeauvilleStructure base_structure(std::uint32_t p) {
  const MetacyclicGroup base(p, 1, 1, 1);
  SearchOptions options;
  options.mode = SearchMode::FirstFound;
  auto found = search(base, options);
  if (found.structures.empty()) {
    throw Error(ErrorKind::UnsupportedFamily, base.spec() + " admits no Beauville structure");
  }
  return found.structures.front();
}

/// Residue of λ at each level k of a tower (λ_k mod p^k).
struct LambdaRule {
  std::string name;
  std::function<std::uint64_t(std::uint32_t p, std::uint32_t k)> residue;

  static LambdaRule one_plus_p() {
    return {"1+p", [](std::uint32_t p, std::uint32_t k) { return (1 + p) % arith::ipow(p, k); }};
  }
  static LambdaRule one() {
    return {"1", [](std::uint32_t p, std::uint32_t k) { return 1 % arith::ipow(p, k); }};
  }
  static LambdaRule one_plus_p_pow(std::uint32_t r) {
    return {"1+p^" + std::to_string(r),
            [r](std::uint32_t p, std::uint32_t k) { return (1 + arith::ipow(p, r)) % arith::ipow(p, k); }};
  }
  static LambdaRule fixed(std::uint64_t value) {
    return {std::to_string(value), [value](std::uint32_t p, std::uint32_t k) { return value % arith::ipow(p, k); }};
  }

  /// "1+p", "1", "1+p^<r>", or a plain integer.
  static LambdaRule parse(const std::string& text) {
    if (text == "1+p") return one_plus_p();
    if (text == "1") return one();
    if (text.rfind("1+p^", 0) == 0) {
      return one_plus_p_pow(static_cast<std::uint32_t>(detail::parse_uint(text.substr(4), "lambda rule exponent")));
    }
    return fixed(detail::parse_uint(text, "lambda rule"));
  }
};

/// Reduction Metacyclic(p, k+1, k+1, λ_{k+1}) -> Metacyclic(p, k, k, λ_k).
inline Surjection<MetacyclicGroup, MetacyclicGroup> family_surjection(std::uint32_t p, std::uint32_t k, const LambdaRule& rule) {
  if (k == 0) throw Error(ErrorKind::InvalidSpec, "family levels start at k = 1");
  const auto upper = rule.residue(p, k + 1);
  const auto lower = rule.residue(p, k);
  if (upper % arith::ipow(p, k) != lower) {
    throw Error(ErrorKind::IncompatibleLambda, "lambda_" + std::to_string(k + 1) + " = " + std::to_string(upper) +
                                                   " does not reduce to lambda_" + std::to_string(k) + " = " + std::to_string(lower));
  }
  auto make = [&](std::uint32_t level, std::uint64_t lambda) {
    try {
      return std::make_shared<const MetacyclicGroup>(p, level, level, lambda);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidLambda) throw Error(ErrorKind::IncompatibleLambda, e.what());
      throw;
    }
  };
  return reduction_surjection(make(k + 1, upper), make(k, lower));
}

struct Tower {
  std::uint32_t p = 0;
  std::string lambda_rule;
  std::vector<std::shared_ptr<const MetacyclicGroup>> levels;
  /// maps[k] : levels[k + 1] -> levels[k].
  std::vector<Surjection<MetacyclicGroup, MetacyclicGroup>> maps;
  std::vector<BeauvilleStructure> structures;
  bool compatible = false;
};

/// Elementwise compatibility of two consecutive levels.
inline bool compatible(const Surjection<MetacyclicGroup, MetacyclicGroup>& phi, const BeauvilleStructure& upper,
                       const BeauvilleStructure& lower) {
  return phi(upper.first) == lower.first && phi(upper.second) == lower.second;
}

/// Builds levels 1..depth bottom-up: a structure on (Z/p)^2, then least-fiber
/// lifts of x, y, a, b through each family surjection.  `on_level` sees every
/// level as soon as it is verified.
inline Tower build_tower(std::uint32_t p, std::uint32_t depth, const LambdaRule& rule = LambdaRule::one_plus_p(),
                         const std::function<void(std::uint32_t, const BeauvilleStructure&)>& on_level = {}) {
  if (depth == 0) throw Error(ErrorKind::InvalidSpec, "tower depth must be >= 1");
  Tower tower;
  tower.p = p;
  tower.lambda_rule = rule.name;
  auto level1 = std::make_shared<const MetacyclicGroup>(p, 1, 1, rule.residue(p, 1));
  auto base = base_structure(p);
  {
    auto checked = verify(*level1, base.first, base.second);
    if (!checked.verified()) throw Error(ErrorKind::VerificationFailed, "base structure fails on " + level1->spec());
    base = checked.structure;
  }
  tower.levels.push_back(level1);
  tower.structures.push_back(base);
  if (on_level) on_level(1, base);
  tower.compatible = true;
  for (std::uint32_t k = 1; k < depth; ++k) {
    auto phi = family_surjection(p, k, rule);
    const auto& lower = tower.structures.back();
    const auto& upper_group = phi.source();
    const auto first = make_triple(upper_group, phi.fiber(lower.first.x).front(), phi.fiber(lower.first.y).front());
    const auto second = make_triple(upper_group, phi.fiber(lower.second.x).front(), phi.fiber(lower.second.y).front());
    auto checked = verify(upper_group, first, second);
    if (!checked.verified()) {
      throw Error(ErrorKind::VerificationFailed, "tower level " + std::to_string(k + 1) + " fails condition " +
                                                     std::to_string(checked.refutation->condition));
    }
    tower.compatible = tower.compatible && compatible(phi, checked.structure, lower);
    tower.levels.push_back(phi.source_ptr());
    tower.structures.push_back(checked.structure);
    tower.maps.push_back(std::move(phi));
    if (on_level) on_level(k + 1, tower.structures.back());
  }
  return tower;
}

}  // namespace beauville
