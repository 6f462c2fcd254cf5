#include <catch_amalgamated.hpp>

#include "beauville/all.hpp"
#include "oracle.hpp"

using namespace beauville;

namespace {

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    FAIL("expected " << to_string(kind));
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
  }
}

std::shared_ptr<const MetacyclicGroup> meta(std::uint32_t p, std::uint32_t m, std::uint32_t n, std::uint64_t l) {
  return std::make_shared<const MetacyclicGroup>(p, m, n, l);
}

}  // namespace

TEST_CASE("surjection fibers and audit") {
  const auto phi = family_surjection(5, 1, LambdaRule::one_plus_p());
  CHECK(phi.source().spec() == "metacyclic:p=5,m=2,n=2,lambda=6");
  CHECK(phi.target().spec() == "metacyclic:p=5,m=1,n=1,lambda=1");
  const auto img = phi(phi.source().make(7, 13));
  CHECK(phi.target().a_of(img) == 2);
  CHECK(phi.target().x_of(img) == 3);
  for (std::uint32_t t = 0; t < 25; ++t) {
    const auto f = phi.fiber({t});
    REQUIRE(f.size() == 25);
    CHECK(std::is_sorted(f.begin(), f.end()));
    for (auto s : f) CHECK(phi(s) == Element{t});
  }
  // a non-homomorphism is rejected
  auto src = meta(5, 2, 2, 6);
  auto tgt = meta(5, 1, 1, 1);
  expect_error(ErrorKind::NotASurjection, [&] {
    Surjection<MetacyclicGroup, MetacyclicGroup>(src, tgt, [&](Element g) { return tgt->make(src->a_of(g) % 5, (src->x_of(g) + 1) % 5); });
  });
  expect_error(ErrorKind::NotASurjection, [&] {
    Surjection<MetacyclicGroup, MetacyclicGroup>(src, tgt, [&](Element) { return tgt->identity(); });
  });
}

TEST_CASE("family surjection lambda rules") {
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const auto mod = oracle::pw(5, k + 1);
    CHECK(oracle::modpow(6, oracle::pw(5, k), mod) == 1 % mod);
    CHECK_NOTHROW(family_surjection(5, k, LambdaRule::one_plus_p()));
  }
  const auto ab = family_surjection(3, 1, LambdaRule::one());
  CHECK(ab.source().is_abelian());
  CHECK(ab.source().order() == 81);
  // 2 is not 1 mod 5: λ_1 = 2 is not a valid parameter
  expect_error(ErrorKind::IncompatibleLambda, [] { family_surjection(5, 1, LambdaRule::fixed(2)); });
  CHECK(LambdaRule::parse("1+p^2").residue(5, 3) == 26);
  CHECK(LambdaRule::parse("1+p").residue(5, 1) == 1);
  CHECK(LambdaRule::parse("11").residue(5, 2) == 11);
}

TEST_CASE("lift along the Heisenberg Frattini quotient") {
  auto h = std::make_shared<const MatrixGroup>(5, 3, heisenberg_generators());
  const auto phi = frattini_surjection(h);
  const auto base = base_structure(5);
  const auto lifted = lift_structure(phi, base);
  CHECK(lifted.verified);
  for (auto o : lifted.signature.orders) CHECK(o == 5);
  // round trip
  const auto back = push_forward(phi, lifted);
  CHECK(back.verified());
  CHECK(back.structure.first == base.first);
  CHECK(back.structure.second == base.second);
}

TEST_CASE("lift along (Z/25)^2 -> (Z/5)^2 cannot preserve orders") {
  const auto phi = reduction_surjection(meta(5, 2, 2, 1), meta(5, 1, 1, 1));
  // every fiber element over a nonzero element has order 25
  for (std::uint32_t t = 1; t < 25; ++t) {
    for (auto s : phi.fiber({t})) CHECK(element_order(phi.source(), s) == 25);
  }
  expect_error(ErrorKind::OrderPreservingLiftNotFound, [&] { lift_structure(phi, base_structure(5)); });
}

TEST_CASE("identity surjection") {
  auto g = meta(5, 1, 1, 1);
  const auto id = identity_surjection(g);
  const auto base = base_structure(5);
  const auto lifted = lift_structure(id, base);
  CHECK(lifted == base);
  const auto pushed = push_forward(id, base);
  CHECK(pushed.structure == base);
  // Frattini lift on (Z/5)^2 is along the identity
  CHECK(frattini_lift(g, base) == base);
}

TEST_CASE("push forward to the trivial group is refuted") {
  auto g = meta(5, 1, 1, 1);
  auto trivial = std::make_shared<const CayleyGroup>(1, std::vector<std::vector<std::uint32_t>>{{0}}, "trivial");
  const Surjection<MetacyclicGroup, CayleyGroup> phi(g, trivial, [](Element) { return Element{0}; });
  const auto r = push_forward(phi, base_structure(5));
  CHECK_FALSE(r.verified());
  REQUIRE(r.refutation);
  CHECK(r.refutation->condition == 3);
}

TEST_CASE("push forward along reduction keeps every structure") {
  // the order-5 subgroups of (Z/25)^2 are indexed by lines mod 5
  auto g = meta(5, 2, 2, 1);
  auto q = meta(5, 1, 1, 1);
  const auto phi = reduction_surjection(g, q);
  SearchOptions o;
  o.store_limit = 4000;
  const auto all = search(*g, o);
  REQUIRE(all.structures.size() == 4000);
  for (const auto& s : all.structures) CHECK(push_forward(phi, s).verified());
}

TEST_CASE("frattini lift on the metacyclic family") {
  auto g = meta(5, 2, 2, 6);
  const auto base = base_structure(5);
  const auto s = frattini_lift(g, base);
  CHECK(s.verified);
  CHECK(s.signature.balanced());
  CHECK(s.signature.orders[0] == 25);
  const auto phi = frattini_surjection(g);
  CHECK(phi(s.first) == base.first);
  CHECK(phi(s.second) == base.second);

  // generating elements all have order 25 here
  expect_error(ErrorKind::OrderPreservingLiftNotFound, [&] { lift_structure(phi, base); });

  expect_error(ErrorKind::UnsupportedFamily, [&] { frattini_lift(meta(3, 2, 2, 4), base); });
  expect_error(ErrorKind::UnsupportedFamily, [&] { frattini_lift(meta(5, 2, 1, 1), base); });
  auto cay = std::make_shared<const CayleyGroup>(to_cayley(*g));
  expect_error(ErrorKind::UnsupportedFamily, [&] { frattini_lift(cay, base); });
  expect_error(ErrorKind::MismatchedGroups, [&] { frattini_lift(meta(7, 2, 2, 8), base); });
}

TEST_CASE("frattini lift: many fiber choices on (7,2,2,8)") {
  auto g = meta(7, 2, 2, 8);
  const auto base = base_structure(7);
  const auto phi = frattini_surjection(g);
  for (std::uint64_t k = 0; k < 200; ++k) {
    FiberChoice c{{k, k * 3 + 1, k * 5 + 2, k * 11 + 3}};
    const auto s = frattini_lift(phi, base, c);
    CHECK(s.verified);
    CHECK(phi(s.first) == base.first);
  }
}

TEST_CASE("towers") {
  const auto one = build_tower(5, 1);
  REQUIRE(one.levels.size() == 1);
  CHECK(one.levels[0]->order() == 25);
  CHECK(one.structures[0].verified);

  std::vector<std::uint32_t> streamed;
  const auto t = build_tower(5, 3, LambdaRule::one_plus_p(), [&](std::uint32_t k, const BeauvilleStructure&) { streamed.push_back(k); });
  CHECK(streamed == std::vector<std::uint32_t>{1, 2, 3});
  REQUIRE(t.levels.size() == 3);
  CHECK(t.compatible);
  const std::uint64_t orders[] = {25, 625, 15625};
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(t.levels[k]->order() == orders[k]);
    CHECK(t.structures[k].verified);
    CHECK(t.structures[k].signature.orders[0] == oracle::pw(5, k + 1));
  }
  for (std::size_t k = 0; k + 1 < 3; ++k) {
    const auto pushed = push_forward(t.maps[k], t.structures[k + 1]);
    CHECK(pushed.verified());
    CHECK(pushed.structure.first == t.structures[k].first);
    CHECK(pushed.structure.second == t.structures[k].second);
  }

  const auto abelian = build_tower(7, 2, LambdaRule::one());
  CHECK(abelian.levels[1]->is_abelian());
  CHECK(abelian.compatible);

  expect_error(ErrorKind::UnsupportedFamily, [] { build_tower(3, 2); });
}
