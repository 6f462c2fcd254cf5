#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "beauville/arith.hpp"
#include "beauville/detail/algorithms.hpp"
#include "beauville/element.hpp"
#include "beauville/error.hpp"

namespace beauville {

/// A finite group given by its full multiplication table.
///
/// The identity always sits at index 0; a table whose identity lives elsewhere
/// is relabelled by swapping that index with 0.  Construction audits the
/// table: Latin rows, two-sided identity and inverses, and associativity via
/// Light's test over a generating set.
class CayleyGroup {
 public:
  CayleyGroup(std::uint32_t order, std::vector<std::vector<std::uint32_t>> rows, std::string source = "")
      : order_(order), source_(std::move(source)) {
    if (order == 0) throw Error(ErrorKind::NotAGroup, "order must be positive");
    if (rows.size() != order) throw Error(ErrorKind::NotAGroup, "table has " + std::to_string(rows.size()) + " rows");
    table_.resize(static_cast<std::size_t>(order) * order);
    for (std::uint32_t i = 0; i < order; ++i) {
      if (rows[i].size() != order) throw Error(ErrorKind::NotAGroup, "row " + std::to_string(i) + " has wrong length");
      for (std::uint32_t j = 0; j < order; ++j) {
        if (rows[i][j] >= order) throw Error(ErrorKind::NotAGroup, "entry out of range in row " + std::to_string(i));
        table_[static_cast<std::size_t>(i) * order + j] = rows[i][j];
      }
    }
    normalize_identity();
    audit();
    build_derived_data();
  }

  std::uint64_t order() const { return order_; }
  Element identity() const { return {0}; }
  Element mul(Element g, Element h) const { return {table_[static_cast<std::size_t>(g.id) * order_ + h.id]}; }
  Element inv(Element g) const { return {inverse_[g.id]}; }
  Element class_id(Element g) const { return {class_rep_[g.id]}; }

  std::vector<Element> generators() const {
    std::vector<Element> out;
    for (auto g : generators_) out.push_back({g});
    return out;
  }

  /// The prime p if this is a p-group, else 0.
  std::uint32_t p_group_prime() const { return prime_; }
  std::uint32_t frattini_rank() const { return frattini_.rank; }
  std::uint32_t frattini_coords(Element g) const { return frattini_.coords.empty() ? 0 : frattini_.coords[g.id]; }

  std::vector<std::vector<std::uint32_t>> rows() const {
    std::vector<std::vector<std::uint32_t>> out(order_, std::vector<std::uint32_t>(order_));
    for (std::uint32_t i = 0; i < order_; ++i) {
      for (std::uint32_t j = 0; j < order_; ++j) out[i][j] = table_[static_cast<std::size_t>(i) * order_ + j];
    }
    return out;
  }

  std::string spec() const { return "cayley:" + source_; }
  const std::string& source() const { return source_; }

 private:
  detail::RawOps raw_ops() const {
    return {order_, 0, [this](std::uint32_t a, std::uint32_t b) { return table_[static_cast<std::size_t>(a) * order_ + b]; },
            [this](std::uint32_t a) { return inverse_[a]; }};
  }

  void normalize_identity() {
    std::uint32_t e = order_;
    for (std::uint32_t c = 0; c < order_ && e == order_; ++c) {
      bool ok = true;
      for (std::uint32_t g = 0; g < order_ && ok; ++g) ok = at(c, g) == g && at(g, c) == g;
      if (ok) e = c;
    }
    if (e == order_) throw Error(ErrorKind::NotAGroup, "no two-sided identity");
    if (e == 0) return;
    auto swap_label = [e](std::uint32_t v) { return v == e ? 0U : (v == 0 ? e : v); };
    std::vector<std::uint32_t> relabelled(table_.size());
    for (std::uint32_t i = 0; i < order_; ++i) {
      for (std::uint32_t j = 0; j < order_; ++j) {
        relabelled[static_cast<std::size_t>(swap_label(i)) * order_ + swap_label(j)] = swap_label(at(i, j));
      }
    }
    table_ = std::move(relabelled);
  }

  void audit() {
    inverse_.assign(order_, order_);
    for (std::uint32_t g = 0; g < order_; ++g) {
      std::vector<char> seen(order_, 0);
      for (std::uint32_t h = 0; h < order_; ++h) {
        const auto v = at(g, h);
        if (seen[v]) throw Error(ErrorKind::NotAGroup, "row " + std::to_string(g) + " is not a permutation");
        seen[v] = 1;
        if (v == 0) inverse_[g] = h;
      }
      if (at(inverse_[g], g) != 0) throw Error(ErrorKind::NotAGroup, "element " + std::to_string(g) + " has no two-sided inverse");
    }
    generators_ = detail::greedy_generators(raw_ops());
    // Light's test: (x s) y == x (s y) for s in a generating set implies associativity.
    for (auto s : generators_) {
      for (std::uint32_t x = 0; x < order_; ++x) {
        const auto xs = at(x, s);
        for (std::uint32_t y = 0; y < order_; ++y) {
          if (at(xs, y) != at(x, at(s, y))) {
            throw Error(ErrorKind::NotAGroup, "associativity fails at (" + std::to_string(x) + ", " + std::to_string(s) +
                                                  ", " + std::to_string(y) + ")");
          }
        }
      }
    }
  }

  void build_derived_data() {
    const auto ops = raw_ops();
    class_rep_ = detail::conjugacy_representatives(ops, generators_);
    if (auto p = arith::prime_power_base(order_)) {
      prime_ = static_cast<std::uint32_t>(*p);
      frattini_ = detail::frattini(ops, prime_, generators_);
    }
  }

  std::uint32_t at(std::uint32_t g, std::uint32_t h) const { return table_[static_cast<std::size_t>(g) * order_ + h]; }

  std::uint32_t order_;
  std::string source_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> generators_;
  std::vector<std::uint32_t> class_rep_;
  std::uint32_t prime_ = 0;
  detail::FrattiniData frattini_;
};

}  // namespace beauville
