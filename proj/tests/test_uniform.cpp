#include <catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include "beauville/all.hpp"
#include "oracle.hpp"

using namespace beauville;
using boost::multiprecision::cpp_int;

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

/// (1/p) Σ λ^{ix} over the integers, then reduced mod p^m.
std::uint64_t epsilon_exact(std::uint32_t p, std::uint32_t m, std::uint64_t lambda, std::uint64_t x) {
  cpp_int sum = 0;
  for (std::uint32_t i = 0; i < p; ++i) sum += boost::multiprecision::pow(cpp_int(lambda), static_cast<unsigned>(i * x));
  REQUIRE(sum % p == 0);
  return static_cast<std::uint64_t>((sum / p) % oracle::pw(p, m));
}

std::vector<std::uint64_t> valid_lambdas(std::uint32_t p, std::uint32_t m, std::uint32_t n) {
  std::vector<std::uint64_t> out;
  const auto A = oracle::pw(p, m);
  for (std::uint64_t l = 1; l < A; ++l) {
    if (std::gcd(l, A) == 1 && oracle::modpow(l, oracle::pw(p, n), A) == 1 % A) out.push_back(l);
  }
  return out;
}

/// Sorted multiset of element orders plus the size of the center.
std::pair<std::vector<std::uint64_t>, std::size_t> order_profile(const oracle::Table& t) {
  std::vector<std::uint64_t> orders;
  std::size_t center = 0;
  for (std::uint32_t g = 0; g < t.size(); ++g) {
    orders.push_back(oracle::order(t, g));
    bool central = true;
    for (std::uint32_t h = 0; h < t.size() && central; ++h) central = t[g][h] == t[h][g];
    center += central;
  }
  std::sort(orders.begin(), orders.end());
  return {orders, center};
}

}  // namespace

TEST_CASE("epsilon") {
  for (std::uint64_t x = 0; x < 30; ++x) CHECK(uniform::epsilon_lambda(5, 2, 1, x) == 1);
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 2}, {7, 2}, {3, 3}, {5, 3}}) {
    for (auto l : valid_lambdas(p, m, m)) {
      for (std::uint64_t x = 0; x < oracle::pw(p, m); ++x) {
        const auto e = uniform::epsilon_lambda(p, m, l, x);
        REQUIRE(e == epsilon_exact(p, m, l, x));
        CHECK(e % p == 1);
      }
    }
  }
  CHECK(uniform::epsilon_lambda(2, 2, 3, 1) == 2);
  CHECK(uniform::epsilon_lambda(2, 2, 3, 1) % 2 == 0);
  for (std::uint64_t l : {3, 7}) {
    for (std::uint64_t x = 0; x < 8; ++x) {
      const auto e = uniform::epsilon_lambda(2, 3, l, x);
      CHECK(e == epsilon_exact(2, 3, l, x));
      CHECK(e % 2 == (1 + x) % 2);
    }
  }
  expect_error(ErrorKind::InvalidLambda, [] { uniform::epsilon_lambda(5, 2, 2, 1); });
}

TEST_CASE("power map closed form") {
  const MetacyclicGroup g(5, 2, 2, 6);
  CHECK(epsilon_exact(5, 2, 6, 1) == 1555 / 5 % 25);
  const auto closed = uniform::power_map_closed_form(g, 1, g.make(1, 1));
  CHECK(g.a_of(closed) == 5);
  CHECK(g.x_of(closed) == 5);
  const auto t = oracle::metacyclic_table(5, 2, 2, 6);
  auto acc = g.make(1, 1).id;
  for (int i = 1; i < 5; ++i) acc = t[acc][g.make(1, 1).id];
  CHECK(acc == closed.id);

  struct Case {
    std::uint32_t p, m, n;
    std::uint64_t lambda;
  };
  for (auto c : {Case{5, 2, 2, 6}, Case{5, 1, 1, 1}, Case{2, 3, 3, 3}, Case{2, 3, 3, 5}, Case{3, 2, 2, 4}, Case{3, 3, 2, 4},
                 Case{2, 2, 2, 3}, Case{5, 2, 2, 1}}) {
    const MetacyclicGroup h(c.p, c.m, c.n, c.lambda);
    const auto table = oracle::metacyclic_table(c.p, c.m, c.n, c.lambda);
    for (std::uint32_t s = 0; s <= c.n; ++s) {
      const auto e = oracle::pw(c.p, s);
      for (std::uint32_t i = 0; i < h.order(); ++i) {
        std::uint32_t direct = 0;
        for (std::uint64_t k = 0; k < e; ++k) direct = table[direct][i];
        REQUIRE(uniform::power_map(h, s, {i}).id == direct);
      }
    }
  }
  // abelian case
  const MetacyclicGroup ab(5, 2, 2, 1);
  CHECK(uniform::power_map(ab, 1, ab.make(3, 4)) == ab.make(15, 20));
}

TEST_CASE("filtration levels") {
  const MetacyclicGroup g(5, 2, 2, 6);
  const auto t = oracle::metacyclic_table(5, 2, 2, 6);
  CHECK(uniform::FiltrationLevel{0}.members(g).size() == 625);
  for (std::uint32_t r = 0; r <= 2; ++r) {
    const auto mem = uniform::FiltrationLevel{r}.members(g);
    CHECK(mem.size() == oracle::pw(5, 2 * (2 - r)));
    std::vector<std::uint32_t> ids;
    for (auto e : mem) ids.push_back(e.id);
    CHECK(oracle::closure(t, ids) == ids);
    // normal
    for (auto e : ids) {
      for (std::uint32_t h = 0; h < 625; h += 7) {
        const auto c = t[t[h][e]][oracle::inverse(t, h)];
        CHECK(uniform::FiltrationLevel{r}.contains(g, {c}));
      }
    }
  }
}

TEST_CASE("filtration isomorphisms") {
  const MetacyclicGroup g(5, 2, 2, 6);
  const auto id = uniform::filtration_iso_check(g, 0, 0);
  CHECK(id.passed());
  const auto r = uniform::filtration_iso_check(g, 0, 1);
  CHECK(r.passed());
  CHECK(r.source_cosets == 25);
  CHECK(r.target_cosets == 25);
  const MetacyclicGroup two(2, 3, 3, 3);
  CHECK(uniform::filtration_iso_check(two, 1, 1).passed());
  expect_error(ErrorKind::PreconditionViolated, [&] { uniform::filtration_iso_check(two, 0, 1); });
  expect_error(ErrorKind::PreconditionViolated, [&] { uniform::filtration_iso_check(g, 1, 1); });
  // λ ≡ 1 mod 4 allows r = 0
  CHECK(uniform::filtration_iso_check(MetacyclicGroup(2, 3, 3, 5), 0, 2).passed());
}

TEST_CASE("existence criterion") {
  CHECK(uniform::admits_beauville(5, 2, 2, 6).admits);
  for (auto l : valid_lambdas(5, 3, 2)) {
    const auto v = uniform::admits_beauville(5, 3, 2, l);
    CHECK_FALSE(v.admits);
    CHECK(v.reason.find("n = 2 != m = 3") != std::string::npos);
  }
  const auto small = uniform::admits_beauville(3, 1, 1, 1);
  CHECK_FALSE(small.admits);
  CHECK(small.reason.find("p = 3 < 5") != std::string::npos);
  const auto two = uniform::admits_beauville(2, 2, 2, 3, true);
  CHECK_FALSE(two.admits);
  REQUIRE(two.audit_agrees);
  CHECK(*two.audit_agrees);
  expect_error(ErrorKind::InvalidLambda, [] { uniform::admits_beauville(5, 2, 2, 2); });

  // audit on every valid tuple up to order 625
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
    for (std::uint32_t m = 1; oracle::pw(p, m + 1) <= 625; ++m) {
      for (std::uint32_t n = 1; oracle::pw(p, m + n) <= 625; ++n) {
        for (auto l : valid_lambdas(p, m, n)) {
          const auto v = uniform::admits_beauville(p, m, n, l, true);
          INFO(p << " " << m << " " << n << " " << l);
          REQUIRE(v.audit_agrees);
          CHECK(*v.audit_agrees);
        }
      }
    }
  }
}

TEST_CASE("classification invariant") {
  CHECK(uniform::classify(5, 2, 1).abelian);
  const auto six = uniform::classify(5, 2, 6);
  CHECK_FALSE(six.abelian);
  CHECK(six.r == 1);
  CHECK(uniform::classify(5, 2, 11) == six);
  expect_error(ErrorKind::OddPrimeOnly, [] { uniform::classify(2, 3, 3); });
  // r is the order exponent of λ mod p^n
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 2}, {3, 3}, {7, 2}, {3, 4}}) {
    for (auto l : valid_lambdas(p, n, n)) {
      const auto inv = uniform::classify(p, n, l);
      const auto mod = oracle::pw(p, n);
      std::uint64_t ord = 1;
      for (auto acc = l % mod; acc != 1 % mod; acc = acc * l % mod) ++ord;
      CHECK(ord == oracle::pw(p, inv.r));
      CHECK(inv.abelian == (ord == 1));
      if (!inv.abelian) CHECK((0 < inv.r && inv.r < n));
    }
  }
}

TEST_CASE("isomorphism witnesses") {
  const auto same = uniform::isomorphism_witness(5, 2, 6, 6);
  REQUIRE(same.witness);
  CHECK(same.witness->unit == 1);
  const auto w = uniform::isomorphism_witness(5, 2, 6, 11);
  REQUIRE(w.witness);
  CHECK(oracle::modpow(11, w.witness->unit, 25) == 6);
  CHECK(w.audited_pairs == 625ULL * 625ULL);
  const auto no = uniform::isomorphism_witness(5, 2, 6, 1);
  CHECK_FALSE(no.witness);
  CHECK_FALSE(no.refutation.empty());

  // (3,3): witnesses exist exactly within classes; across classes the
  // order profiles (an isomorphism invariant) differ.
  const auto lambdas = valid_lambdas(3, 3, 3);
  for (auto l : lambdas) {
    for (auto lp : lambdas) {
      const auto r = uniform::isomorphism_witness(3, 3, l, lp);
      const bool same_class = uniform::classify(3, 3, l) == uniform::classify(3, 3, lp);
      CHECK(r.witness.has_value() == same_class);
      if (r.witness) {
        const MetacyclicGroup src(3, 3, 3, l), dst(3, 3, 3, lp);
        const auto ts = oracle::metacyclic_table(3, 3, 3, l);
        const auto td = oracle::metacyclic_table(3, 3, 3, lp);
        for (std::uint32_t i = 0; i < 729; i += 5) {
          for (std::uint32_t j = 0; j < 729; j += 7) {
            REQUIRE((*r.witness)(src, dst, {ts[i][j]}).id ==
                    td[(*r.witness)(src, dst, {i}).id][(*r.witness)(src, dst, {j}).id]);
          }
        }
      } else {
        CHECK(order_profile(oracle::metacyclic_table(3, 3, 3, l)) != order_profile(oracle::metacyclic_table(3, 3, 3, lp)));
      }
    }
  }
}
