#include <catch_amalgamated.hpp>

#include <array>
#include <map>

#include "beauville/all.hpp"
#include "oracle.hpp"

using namespace beauville;

namespace {

std::vector<std::uint32_t> ids(const Triple& t) { return {t.x.id, t.y.id, t.z.id}; }

/// Even permutations of 5 points in lex order, as a Cayley table.
oracle::Table alternating5_table() {
  std::vector<std::array<int, 5>> perms;
  std::array<int, 5> p{0, 1, 2, 3, 4};
  do {
    int inversions = 0;
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) inversions += p[i] > p[j];
    }
    if (inversions % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::array<int, 5>, std::uint32_t> index;
  for (std::uint32_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  oracle::Table t(perms.size(), std::vector<std::uint32_t>(perms.size()));
  for (std::size_t i = 0; i < perms.size(); ++i) {
    for (std::size_t j = 0; j < perms.size(); ++j) {
      std::array<int, 5> c{};
      for (int k = 0; k < 5; ++k) c[k] = perms[i][perms[j][k]];
      t[i][j] = index.at(c);
    }
  }
  return t;
}

SearchOptions exhaustive(std::size_t store = 10'000, unsigned threads = 1) {
  SearchOptions o;
  o.mode = SearchMode::Exhaustive;
  o.store_limit = store;
  o.threads = threads;
  return o;
}

SearchOptions first_found() {
  SearchOptions o;
  o.mode = SearchMode::FirstFound;
  return o;
}

}  // namespace

TEST_CASE("conjugate power sets") {
  const CayleyGroup trivial(1, {{0}}, "trivial");
  CHECK(conjugate_power_set(trivial, {{0}, {0}, {0}}).classes.empty());

  const MetacyclicGroup ab(5, 1, 1, 1);
  const auto t = make_triple(ab, ab.make(1, 0), ab.make(0, 1));
  CHECK(t.z == ab.make(4, 4));
  CHECK(conjugate_power_set(ab, t).classes.size() == 12);

  // Against the conjugator-loop oracle on (5,2,2,6): the class ids are
  // exactly the least members of classes that meet the power set.
  const MetacyclicGroup g(5, 2, 2, 6);
  const auto table = oracle::metacyclic_table(5, 2, 2, 6);
  const auto classes = oracle::conjugacy_classes(table);
  bool saw_collapse = false;
  for (std::uint32_t x = 1; x < g.order(); x += 37) {
    for (std::uint32_t y = 2; y < g.order(); y += 41) {
      const auto tr = make_triple(g, {x}, {y});
      const auto set = conjugate_power_set(g, tr);
      const auto mask = oracle::conjugate_powers(table, ids(tr));
      std::vector<Element> expected;
      for (const auto& cls : classes) {
        bool meets = false;
        for (auto e : cls) meets = meets || mask[e];
        if (meets) expected.push_back({cls.front()});
      }
      REQUIRE(set.classes == expected);
      CHECK_FALSE(set.contains(g.identity()));
      std::uint64_t powers = 0;
      for (auto e : tr.elements()) powers += element_order(g, e) - 1;
      saw_collapse = saw_collapse || set.classes.size() < powers;
    }
  }
  CHECK(saw_collapse);
}

TEST_CASE("verify refutations") {
  const MetacyclicGroup g(5, 2, 2, 6);
  const auto t = make_triple(g, g.make(1, 0), g.make(0, 1));
  const auto same = verify(g, t, t);
  REQUIRE(same.refutation);
  CHECK(same.refutation->condition == 3);
  CHECK(same.refutation->witness == g.class_id(t.x));
  CHECK_FALSE(same.verified());

  const Triple bad_product{g.make(1, 0), g.make(0, 1), g.make(0, 1)};
  const auto r1 = verify(g, t, bad_product);
  REQUIRE(r1.refutation);
  CHECK(r1.refutation->condition == 1);
  CHECK(r1.refutation->triple == 2);

  const auto nongen = make_triple(g, g.make(1, 0), g.make(2, 0));
  const auto r2 = verify(g, nongen, t);
  REQUIRE(r2.refutation);
  CHECK(r2.refutation->condition == 2);
  CHECK(r2.refutation->triple == 1);

  CHECK_THROWS_AS(verify(g, t, Triple{{0}, {0}, {625}}), Error);

  const CayleyGroup trivial(1, {{0}}, "trivial");
  const auto tr = verify(trivial, {{0}, {0}, {0}}, {{0}, {0}, {0}});
  REQUIRE(tr.refutation);
  CHECK(tr.refutation->condition == 3);
}

TEST_CASE("(Z/3)^2 admits nothing") {
  const MetacyclicGroup g(3, 1, 1, 1);
  const auto table = oracle::metacyclic_table(3, 1, 1, 1);
  for (std::uint32_t x = 0; x < 9; ++x) {
    for (std::uint32_t y = 0; y < 9; ++y) {
      for (std::uint32_t a = 0; a < 9; ++a) {
        for (std::uint32_t b = 0; b < 9; ++b) {
          const auto t1 = make_triple(g, {x}, {y});
          const auto t2 = make_triple(g, {a}, {b});
          const auto r = verify(g, t1, t2);
          CHECK_FALSE(r.verified());
          CHECK(r.refutation->condition == oracle::verify(table, ids(t1), ids(t2)));
        }
      }
    }
  }
  const auto s = search(g, exhaustive());
  CHECK(s.exhaustive);
  CHECK(*s.count == 0);
}

TEST_CASE("search counts agree with the brute-force oracle") {
  struct Case {
    std::uint32_t p, m, n;
    std::uint64_t lambda;
  };
  for (auto c : {Case{2, 1, 1, 1}, Case{3, 1, 1, 1}, Case{5, 1, 1, 1}, Case{7, 1, 1, 1}, Case{2, 2, 2, 3}, Case{2, 2, 2, 1},
                 Case{3, 1, 2, 1}, Case{2, 2, 1, 3}, Case{3, 2, 2, 4}}) {
    const MetacyclicGroup g(c.p, c.m, c.n, c.lambda);
    const auto table = oracle::metacyclic_table(c.p, c.m, c.n, c.lambda);
    const auto s = search(g, exhaustive(0));
    INFO(g.spec());
    CHECK(s.exhaustive);
    REQUIRE(s.count);
    CHECK(*s.count == oracle::count_structures(table));
  }
}

TEST_CASE("exhaustive search lists every structure in lex order") {
  const MetacyclicGroup g(5, 1, 1, 1);
  const auto table = oracle::metacyclic_table(5, 1, 1, 1);
  const auto s = search(g, exhaustive(1'000'000));
  const auto data = oracle::generating_triples(table);
  std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> expected;
  for (std::size_t i = 0; i < data.triples.size(); ++i) {
    for (std::size_t j = 0; j < data.triples.size(); ++j) {
      if (oracle::verify(table, data.triples[i], data.triples[j]) == 0) expected.emplace_back(data.triples[i], data.triples[j]);
    }
  }
  REQUIRE(s.structures.size() == expected.size());
  CHECK(*s.count == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    REQUIRE(ids(s.structures[k].first) == expected[k].first);
    REQUIRE(ids(s.structures[k].second) == expected[k].second);
    CHECK(s.structures[k].verified);
  }
}

TEST_CASE("search on non-p-groups through Cayley tables") {
  const auto t = alternating5_table();
  const CayleyGroup a5(60, t, "a5");
  CHECK(a5.p_group_prime() == 0);
  const auto s = search(a5, exhaustive(0));
  CHECK(*s.count == oracle::count_structures(t));
  // every hyperbolic generating type of A5 involves order 5, and both classes of 5-cycles meet <g>
  CHECK(*s.count == 0);
  const auto first = search(a5, first_found());
  CHECK(first.structures.empty());

  // S3 = cyclic-by-cyclic, not a p-group; the oracle decides
  oracle::Table s3(6, std::vector<std::uint32_t>(6));
  // (a, x) in Z/3 x Z/2 with (a,x)(b,y) = (a + (-1)^x b, x + y), id 2a + x
  for (std::uint32_t a = 0; a < 3; ++a) {
    for (std::uint32_t x = 0; x < 2; ++x) {
      for (std::uint32_t b = 0; b < 3; ++b) {
        for (std::uint32_t y = 0; y < 2; ++y) s3[2 * a + x][2 * b + y] = 2 * ((a + (x ? 2 * b : b)) % 3) + (x + y) % 2;
      }
    }
  }
  const CayleyGroup s3g(6, s3, "s3");
  CHECK(*search(s3g, exhaustive(0)).count == oracle::count_structures(s3));
}

TEST_CASE("search examples") {
  const auto z2 = search(MetacyclicGroup(2, 1, 1, 1), first_found());
  CHECK(z2.structures.empty());
  CHECK(z2.exhaustive);
  const MetacyclicGroup z5(5, 1, 1, 1);
  const auto f = search(z5, first_found());
  REQUIRE(f.structures.size() == 1);
  CHECK(f.structures[0].verified);
  CHECK(f.structures[0].signature.balanced());
  CHECK(f.structures[0].signature.orders[0] == 5);
  // first-found returns the least structure of the exhaustive listing
  const auto all = search(z5, exhaustive(1));
  REQUIRE(all.structures.size() == 1);
  CHECK(all.structures[0] == f.structures[0]);

  for (auto [p, l] : std::vector<std::pair<std::uint32_t, std::uint64_t>>{{2, 3}, {3, 4}}) {
    const auto none = search(MetacyclicGroup(p, 2, 2, l), exhaustive());
    CHECK(none.exhaustive);
    CHECK(*none.count == 0);
    CHECK(none.structures.empty());
  }
}

TEST_CASE("(Z/25)^2 structures have signature all 25") {
  const MetacyclicGroup g(5, 2, 2, 1);
  const auto s = search(g, first_found());
  REQUIRE(s.structures.size() == 1);
  for (auto o : s.structures[0].signature.orders) CHECK(o == 25);
  // every generating element already has order 25
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    if (g.frattini_coords({x}) != 0) REQUIRE(element_order(g, {x}) == 25);
  }
}

TEST_CASE("search is deterministic across thread counts") {
  const MetacyclicGroup g(5, 2, 2, 6);
  SearchOptions o = exhaustive(50, 1);
  const auto one = search(g, o);
  o.threads = 3;
  const auto three = search(g, o);
  CHECK(one.count == three.count);
  CHECK(one.structures == three.structures);
}

TEST_CASE("search budget") {
  SearchOptions o = first_found();
  o.budget.max_candidates = 10;
  const auto r = search(MetacyclicGroup(2, 2, 2, 3), o);
  CHECK(r.budget_exceeded);
  CHECK_FALSE(r.exhaustive);
  CHECK_FALSE(r.count);
}

TEST_CASE("verify properties: symmetry, conjugation invariance, Frattini rank") {
  const MetacyclicGroup g(5, 2, 2, 6);
  const auto s = search(g, exhaustive(200));
  REQUIRE(s.structures.size() == 200);
  std::uint32_t h = 3;
  for (const auto& st : s.structures) {
    CHECK(verify(g, st.second, st.first).verified());
    h = (h * 31 + 7) % g.order();
    const Element c{h};
    const Triple conj{conjugate(g, c, st.second.x), conjugate(g, c, st.second.y), conjugate(g, c, st.second.z)};
    CHECK(verify(g, st.first, conj).verified());
    CHECK(frattini_quotient(g).rank == 2);
    CHECK(signature_of(g, st) == st.signature);
  }
  // symmetry of refutations on arbitrary pairs
  const auto table = oracle::metacyclic_table(3, 2, 2, 4);
  const MetacyclicGroup h81(3, 2, 2, 4);
  for (std::uint32_t k = 0; k < 2000; ++k) {
    const auto t1 = make_triple(h81, {k * 7 % 81}, {k * 13 % 81});
    const auto t2 = make_triple(h81, {k * 29 % 81}, {k * 53 % 81});
    CHECK(verify(h81, t1, t2).verified() == verify(h81, t2, t1).verified());
    CHECK((oracle::verify(table, ids(t1), ids(t2)) == 0) == verify(h81, t1, t2).verified());
  }
}
