#pragma once

// Exhaustive / first-found search for Beauville structures.
//
// Condition (3) only depends on which conjugacy classes of prime-order
// subgroups sit inside <x>, <y>, <z>: a common nontrivial conjugate power
// always has a power of prime order, and two prime-order subgroups share a
// conjugate element exactly when the subgroups are conjugate.  Each
// generating triple is therefore reduced to a small key (the set of those
// subgroup classes), triples are tallied per key, and pairs are decided on
// keys.  Counts are exact; stored structures are re-checked with verify().

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "beauville/arith.hpp"
#include "beauville/error.hpp"
#include "beauville/group.hpp"
#include "beauville/structure.hpp"

namespace beauville {

enum class SearchMode { Exhaustive, FirstFound };

struct SearchBudget {
  std::uint64_t max_candidates = 1'000'000'000;
  double max_seconds = 600.0;
};

struct SearchOptions {
  SearchMode mode = SearchMode::Exhaustive;
  SearchBudget budget{};
  unsigned threads = 1;
  /// Upper bound on structures materialized in exhaustive mode; `count` is exact regardless.
  std::size_t store_limit = 10'000;
};

struct SearchResult {
  std::vector<BeauvilleStructure> structures;
  /// Number of ordered pairs of ordered triples; set only when the space was fully scanned.
  std::optional<std::uint64_t> count;
  /// Certificate that the whole space was decided.
  bool exhaustive = false;
  bool budget_exceeded = false;
  std::uint64_t candidates = 0;
  std::uint64_t generating_triples = 0;
};

namespace detail {

constexpr std::size_t kMaxKey = 24;

struct TripleKey {
  std::array<std::uint32_t, kMaxKey> ids{};
  std::uint32_t size = 0;

  void insert(std::uint32_t v) {
    auto* end = ids.data() + size;
    auto* pos = std::lower_bound(ids.data(), end, v);
    if (pos != end && *pos == v) return;
    std::copy_backward(pos, end, end + 1);
    *pos = v;
    ++size;
  }
  bool disjoint(const TripleKey& o) const {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    while (i < size && j < o.size) {
      if (ids[i] == o.ids[j]) return false;
      if (ids[i] < o.ids[j]) ++i; else ++j;
    }
    return true;
  }
  friend bool operator==(const TripleKey& a, const TripleKey& b) {
    return a.size == b.size && std::equal(a.ids.begin(), a.ids.begin() + a.size, b.ids.begin());
  }
  friend bool operator<(const TripleKey& a, const TripleKey& b) {
    return std::lexicographical_compare(a.ids.begin(), a.ids.begin() + a.size, b.ids.begin(), b.ids.begin() + b.size);
  }
};

/// Keys up to this size are paired by inclusion-exclusion over subsets;
/// wider ones fall back to comparing all pairs of keys.
constexpr std::uint32_t kMaxSubsetKey = 16;

/// Calls f(subset, odd) for every subset of k, where odd is the parity of its size.
template <class F>
void for_each_subset(const TripleKey& k, F&& f) {
  for (std::uint32_t mask = 0; mask < (1U << k.size); ++mask) {
    TripleKey sub;
    for (std::uint32_t i = 0; i < k.size; ++i) {
      if (mask & (1U << i)) sub.ids[sub.size++] = k.ids[i];
    }
    f(sub, (std::popcount(mask) & 1U) != 0);
  }
}

struct TripleKeyHash {
  std::size_t operator()(const TripleKey& k) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ k.size;
    for (std::uint32_t i = 0; i < k.size; ++i) h = (h ^ k.ids[i]) * 0x100000001b3ULL;
    return h;
  }
};

/// Per-element data shared read-only by all workers.
template <FiniteGroup G>
class SearchTables {
 public:
  explicit SearchTables(const G& group) : group_(group), n_(static_cast<std::uint32_t>(group.order())) {
    constexpr auto kUnset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> subgroup_label(n_, kUnset);
    std::unordered_map<std::uint32_t, std::uint32_t> dense;
    offsets_.assign(n_ + 1, 0);
    for (std::uint32_t t = 0; t < n_; ++t) {
      const auto o = element_order(group, {t});
      for (auto q : arith::prime_divisors(o)) {
        const auto u = power(group, {t}, o / q);
        if (subgroup_label[u.id] == kUnset) {
          // Least class id among the nontrivial elements of <u>: a label of
          // the conjugacy class of the subgroup.
          auto best = group.class_id(u);
          for (auto acc = group.mul(u, u); acc != group.identity(); acc = group.mul(acc, u)) {
            best = std::min(best, group.class_id(acc));
          }
          auto [it, _] = dense.emplace(best.id, static_cast<std::uint32_t>(dense.size()));
          subgroup_label[u.id] = it->second;
          for (auto acc = group.mul(u, u); acc != group.identity(); acc = group.mul(acc, u)) {
            subgroup_label[acc.id] = it->second;
          }
        }
        labels_.push_back(subgroup_label[u.id]);
      }
      offsets_[t + 1] = static_cast<std::uint32_t>(labels_.size());
    }
    p_ = group.p_group_prime();
    rank_ = group.frattini_rank();
    if (p_ != 0) {
      coords_.resize(n_);
      for (std::uint32_t t = 0; t < n_; ++t) coords_[t] = group.frattini_coords({t});
    }
  }

  std::uint32_t size() const { return n_; }

  bool generating(Element x, Element y, Element z) const {
    if (p_ != 0) {
      if (rank_ == 0) return true;
      if (rank_ > 3) return false;
      if (rank_ == 2) {
        // z's image is -(x + y), so {x, y} spans iff {x, y, z} does.
        const std::uint64_t x0 = coords_[x.id] % p_, x1 = coords_[x.id] / p_;
        const std::uint64_t y0 = coords_[y.id] % p_, y1 = coords_[y.id] / p_;
        return (x0 * y1 + (p_ - x1) * y0 % p_) % p_ != 0;
      }
      const std::array<std::uint32_t, 3> packed{coords_[x.id], coords_[y.id], coords_[z.id]};
      return spans(packed, p_, rank_);
    }
    const std::array<Element, 3> gens{x, y, z};
    return closure(group_, gens).size() == n_;
  }

  TripleKey key(Element x, Element y, Element z) const {
    TripleKey k;
    for (auto g : {x, y, z}) {
      for (auto i = offsets_[g.id]; i < offsets_[g.id + 1]; ++i) {
        if (k.size == kMaxKey) throw Error(ErrorKind::InvalidSpec, "element orders have too many prime divisors");
        k.insert(labels_[i]);
      }
    }
    return k;
  }

 private:
  const G& group_;
  std::uint32_t n_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> labels_;
  std::uint32_t p_ = 0;
  std::uint32_t rank_ = 0;
  std::vector<std::uint32_t> coords_;
};

class Deadline {
 public:
  explicit Deadline(double seconds) : start_(std::chrono::steady_clock::now()), seconds_(seconds) {}
  bool passed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > seconds_;
  }

 private:
  std::chrono::steady_clock::time_point start_;
  double seconds_;
};

}  // namespace detail

template <FiniteGroup G>
SearchResult search(const G& group, const SearchOptions& options = {}) {
  SearchResult result;
  const auto n = static_cast<std::uint64_t>(group.order());
  if (n <= 1) {
    result.exhaustive = true;
    result.count = 0;
    return result;
  }
  const detail::Deadline deadline(options.budget.max_seconds);
  const detail::SearchTables<G> tables(group);
  const auto spec = group.spec();

  auto materialize = [&](Element x, Element y, Element a, Element b) {
    const auto t1 = make_triple(group, x, y);
    const auto t2 = make_triple(group, a, b);
    auto checked = verify(group, t1, t2);
    if (!checked.verified()) {
      throw Error(ErrorKind::VerificationFailed, "search key reduction disagrees with verify() on " + spec);
    }
    return checked.structure;
  };

  // Phase 1: tally keys of all generating triples, unless the triple space
  // alone is beyond the candidate budget.
  const bool full_scan = n * n <= options.budget.max_candidates;
  if (full_scan) {
    const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(n)));
    std::vector<std::unordered_map<detail::TripleKey, std::uint64_t, detail::TripleKeyHash>> partial(threads);
    std::atomic<bool> timed_out{false};
    auto work = [&](unsigned w) {
      const auto lo = n * w / threads;
      const auto hi = n * (w + 1) / threads;
      auto& counts = partial[w];
      for (auto x = lo; x < hi && !timed_out.load(std::memory_order_relaxed); ++x) {
        for (std::uint64_t y = 0; y < n; ++y) {
          const Element ex{static_cast<std::uint32_t>(x)}, ey{static_cast<std::uint32_t>(y)};
          const auto ez = group.inv(group.mul(ex, ey));
          if (!tables.generating(ex, ey, ez)) continue;
          ++counts[tables.key(ex, ey, ez)];
        }
        if ((x & 63U) == 0 && deadline.passed()) timed_out = true;
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    result.candidates += n * n;
    if (timed_out) {
      result.budget_exceeded = true;
      return result;
    }

    std::unordered_map<detail::TripleKey, std::uint64_t, detail::TripleKeyHash> merged;
    for (auto& m : partial) {
      for (auto& [k, c] : m) merged[k] += c;
    }
    std::vector<std::pair<detail::TripleKey, std::uint64_t>> keys(merged.begin(), merged.end());
    std::sort(keys.begin(), keys.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    const auto m = keys.size();
    std::unordered_map<detail::TripleKey, std::uint32_t, detail::TripleKeyHash> index;
    for (std::uint32_t i = 0; i < m; ++i) {
      index.emplace(keys[i].first, i);
      result.generating_triples += keys[i].second;
    }
    // partners[i] = number of generating triples whose key is disjoint from
    // key i, by inclusion-exclusion over the subsets of key i.
    std::vector<std::uint64_t> partners(m, 0);
    std::uint32_t widest = 0;
    for (const auto& [k, c] : keys) widest = std::max(widest, k.size);
    if (widest <= detail::kMaxSubsetKey) {
      std::uint64_t work = 0;
      for (const auto& [k, c] : keys) work += std::uint64_t{1} << k.size;
      result.candidates += 2 * work;
      if (result.candidates > options.budget.max_candidates) {
        result.budget_exceeded = true;
        return result;
      }
      std::unordered_map<detail::TripleKey, std::uint64_t, detail::TripleKeyHash> containing;
      for (const auto& [k, c] : keys) {
        detail::for_each_subset(k, [&](const detail::TripleKey& sub, bool) { containing[sub] += c; });
      }
      for (std::size_t i = 0; i < m; ++i) {
        std::int64_t total = 0;
        detail::for_each_subset(keys[i].first, [&](const detail::TripleKey& sub, bool odd) {
          const auto v = static_cast<std::int64_t>(containing.at(sub));
          total += odd ? -v : v;
        });
        partners[i] = static_cast<std::uint64_t>(total);
      }
    } else {
      result.candidates += m * m;
      if (result.candidates > options.budget.max_candidates) {
        result.budget_exceeded = true;
        return result;
      }
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (keys[i].first.disjoint(keys[j].first)) partners[i] += keys[j].second;
        }
      }
    }
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < m; ++i) count += keys[i].second * partners[i];
    result.count = count;
    result.exhaustive = true;

    // Phase 2: materialize structures in lexicographic order.
    const std::size_t want = options.mode == SearchMode::FirstFound ? 1 : options.store_limit;
    if (count == 0 || want == 0) return result;
    for (std::uint64_t x = 0; x < n && result.structures.size() < want; ++x) {
      for (std::uint64_t y = 0; y < n && result.structures.size() < want; ++y) {
        const Element ex{static_cast<std::uint32_t>(x)}, ey{static_cast<std::uint32_t>(y)};
        const auto ez = group.inv(group.mul(ex, ey));
        if (!tables.generating(ex, ey, ez)) continue;
        const auto k1 = tables.key(ex, ey, ez);
        if (partners[index.at(k1)] == 0) continue;
        for (std::uint64_t a = 0; a < n && result.structures.size() < want; ++a) {
          for (std::uint64_t b = 0; b < n && result.structures.size() < want; ++b) {
            const Element ea{static_cast<std::uint32_t>(a)}, eb{static_cast<std::uint32_t>(b)};
            const auto ec = group.inv(group.mul(ea, eb));
            if (!tables.generating(ea, eb, ec)) continue;
            if (k1.disjoint(tables.key(ea, eb, ec))) result.structures.push_back(materialize(ex, ey, ea, eb));
          }
        }
      }
    }
    return result;
  }

  // Lazy scan: pairs in lexicographic order until the budget runs out.
  result.budget_exceeded = true;
  const std::size_t want = options.mode == SearchMode::FirstFound ? 1 : options.store_limit;
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::uint64_t y = 0; y < n; ++y) {
      const Element ex{static_cast<std::uint32_t>(x)}, ey{static_cast<std::uint32_t>(y)};
      const auto ez = group.inv(group.mul(ex, ey));
      if (!tables.generating(ex, ey, ez)) continue;
      const auto k1 = tables.key(ex, ey, ez);
      for (std::uint64_t a = 0; a < n; ++a) {
        for (std::uint64_t b = 0; b < n; ++b) {
          if (++result.candidates > options.budget.max_candidates) return result;
          if ((result.candidates & 0xFFFFU) == 0 && deadline.passed()) return result;
          const Element ea{static_cast<std::uint32_t>(a)}, eb{static_cast<std::uint32_t>(b)};
          const auto ec = group.inv(group.mul(ea, eb));
          if (!tables.generating(ea, eb, ec) || !k1.disjoint(tables.key(ea, eb, ec))) continue;
          result.structures.push_back(materialize(ex, ey, ea, eb));
          if (result.structures.size() >= want) {
            // A first-found hit is definitive even though the space was not covered.
            if (options.mode == SearchMode::FirstFound) result.budget_exceeded = false;
            return result;
          }
        }
      }
    }
  }
  result.budget_exceeded = false;
  result.exhaustive = result.structures.size() < want;
  if (result.exhaustive) result.count = result.structures.size();
  return result;
}

}  // namespace beauville
