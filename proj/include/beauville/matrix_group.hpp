#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "beauville/arith.hpp"
#include "beauville/detail/algorithms.hpp"
#include "beauville/element.hpp"
#include "beauville/error.hpp"

namespace beauville {

/// Square matrix over F_p, row-major, entries reduced to [0, p).
using Matrix = std::vector<std::uint32_t>;

namespace detail {

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto v : m) h = (h ^ v) * 0x100000001b3ULL;
    return h;
  }
};

inline Matrix matrix_mul(const Matrix& a, const Matrix& b, std::uint32_t dim, std::uint32_t p) {
  Matrix c(static_cast<std::size_t>(dim) * dim, 0);
  for (std::uint32_t i = 0; i < dim; ++i) {
    for (std::uint32_t k = 0; k < dim; ++k) {
      const std::uint64_t aik = a[i * dim + k];
      if (aik == 0) continue;
      for (std::uint32_t j = 0; j < dim; ++j) c[i * dim + j] = static_cast<std::uint32_t>((c[i * dim + j] + aik * b[k * dim + j]) % p);
    }
  }
  return c;
}

inline Matrix identity_matrix(std::uint32_t dim) {
  Matrix id(static_cast<std::size_t>(dim) * dim, 0);
  for (std::uint32_t i = 0; i < dim; ++i) id[i * dim + i] = 1;
  return id;
}

/// Gauss-Jordan inverse mod p; empty result when singular.
inline Matrix matrix_inverse(Matrix a, std::uint32_t dim, std::uint32_t p) {
  Matrix inv = identity_matrix(dim);
  for (std::uint32_t col = 0; col < dim; ++col) {
    std::uint32_t pivot = col;
    while (pivot < dim && a[pivot * dim + col] == 0) ++pivot;
    if (pivot == dim) return {};
    for (std::uint32_t j = 0; j < dim; ++j) {
      std::swap(a[col * dim + j], a[pivot * dim + j]);
      std::swap(inv[col * dim + j], inv[pivot * dim + j]);
    }
    const auto scale = arith::powmod(a[col * dim + col], p - 2, p);
    for (std::uint32_t j = 0; j < dim; ++j) {
      a[col * dim + j] = static_cast<std::uint32_t>(a[col * dim + j] * scale % p);
      inv[col * dim + j] = static_cast<std::uint32_t>(inv[col * dim + j] * scale % p);
    }
    for (std::uint32_t r = 0; r < dim; ++r) {
      if (r == col || a[r * dim + col] == 0) continue;
      const std::uint64_t f = a[r * dim + col];
      for (std::uint32_t j = 0; j < dim; ++j) {
        a[r * dim + j] = static_cast<std::uint32_t>((a[r * dim + j] + (p - f) * a[col * dim + j]) % p);
        inv[r * dim + j] = static_cast<std::uint32_t>((inv[r * dim + j] + (p - f) * inv[col * dim + j]) % p);
      }
    }
  }
  return inv;
}

}  // namespace detail

/// Subgroup of GL_dim(F_p) generated by a list of invertible matrices.
///
/// The closure is enumerated once (breadth first, bounded by `cap`) and the
/// elements are sorted lexicographically, so element ids follow row-major
/// matrix order and equal matrices always share an id.
class MatrixGroup {
 public:
  static constexpr std::uint64_t kDefaultCap = 1'000'000;
  static constexpr std::uint64_t kDenseTableLimit = 1024;

  MatrixGroup(std::uint32_t p, std::uint32_t dim, std::vector<Matrix> gens, std::uint64_t cap = kDefaultCap)
      : p_(p), dim_(dim), cap_(cap) {
    if (!arith::is_prime(p)) throw Error(ErrorKind::InvalidSpec, "p = " + std::to_string(p) + " is not prime");
    if (dim == 0) throw Error(ErrorKind::InvalidSpec, "matrix dimension must be positive");
    if (gens.empty()) throw Error(ErrorKind::InvalidSpec, "at least one generator is required");
    for (auto& g : gens) {
      if (g.size() != static_cast<std::size_t>(dim) * dim) {
        throw Error(ErrorKind::InvalidSpec, "generator has " + std::to_string(g.size()) + " entries, expected " +
                                                std::to_string(dim * dim));
      }
      for (auto& v : g) v %= p;
      if (detail::matrix_inverse(g, dim, p).empty()) throw Error(ErrorKind::InvalidSpec, "generator is singular mod p");
    }
    gen_matrices_ = std::move(gens);
    enumerate();
    build_derived_data();
  }

  std::uint32_t field_prime() const { return p_; }
  std::uint32_t dim() const { return dim_; }
  std::uint64_t cap() const { return cap_; }
  const std::vector<Matrix>& generator_matrices() const { return gen_matrices_; }

  std::uint64_t order() const { return elements_.size(); }
  Element identity() const { return {identity_}; }
  const Matrix& matrix(Element g) const { return elements_[g.id]; }

  Element find(const Matrix& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw Error(ErrorKind::MismatchedGroups, "matrix is not an element of the group");
    return {it->second};
  }

  Element mul(Element g, Element h) const {
    if (!dense_.empty()) return {dense_[static_cast<std::size_t>(g.id) * elements_.size() + h.id]};
    return find(detail::matrix_mul(elements_[g.id], elements_[h.id], dim_, p_));
  }
  Element inv(Element g) const { return {inverse_[g.id]}; }
  Element class_id(Element g) const { return {class_rep_[g.id]}; }

  std::vector<Element> generators() const {
    std::vector<Element> out;
    for (const auto& m : gen_matrices_) out.push_back(find(m));
    return out;
  }

  std::uint32_t p_group_prime() const { return prime_; }
  std::uint32_t frattini_rank() const { return frattini_.rank; }
  std::uint32_t frattini_coords(Element g) const { return frattini_.coords.empty() ? 0 : frattini_.coords[g.id]; }

  std::string spec() const {
    std::string s = "matrix:p=" + std::to_string(p_) + ",dim=" + std::to_string(dim_) + ",gens=";
    for (std::size_t i = 0; i < gen_matrices_.size(); ++i) {
      if (i > 0) s += ';';
      for (std::size_t j = 0; j < gen_matrices_[i].size(); ++j) {
        if (j > 0) s += ',';
        s += std::to_string(gen_matrices_[i][j]);
      }
    }
    return s + ",cap=" + std::to_string(cap_);
  }

 private:
  void enumerate() {
    std::unordered_map<Matrix, std::uint32_t, detail::MatrixHash> seen;
    std::vector<Matrix> found{detail::identity_matrix(dim_)};
    seen.emplace(found.front(), 0);
    for (std::size_t head = 0; head < found.size(); ++head) {
      for (const auto& g : gen_matrices_) {
        auto next = detail::matrix_mul(found[head], g, dim_, p_);
        if (seen.contains(next)) continue;
        if (found.size() >= cap_) {
          throw Error(ErrorKind::ClosureCapExceeded, "closure exceeds cap of " + std::to_string(cap_) + " elements");
        }
        seen.emplace(next, static_cast<std::uint32_t>(found.size()));
        found.push_back(std::move(next));
      }
    }
    std::sort(found.begin(), found.end());
    elements_ = std::move(found);
    for (std::uint32_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
    identity_ = index_.at(detail::identity_matrix(dim_));
  }

  void build_derived_data() {
    const auto n = static_cast<std::uint32_t>(elements_.size());
    if (n <= kDenseTableLimit) {
      dense_.resize(static_cast<std::size_t>(n) * n);
      for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
          dense_[static_cast<std::size_t>(i) * n + j] = index_.at(detail::matrix_mul(elements_[i], elements_[j], dim_, p_));
        }
      }
    }
    inverse_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) inverse_[i] = index_.at(detail::matrix_inverse(elements_[i], dim_, p_));

    detail::RawOps ops{n, identity_, [this](std::uint32_t a, std::uint32_t b) { return mul({a}, {b}).id; },
                       [this](std::uint32_t a) { return inverse_[a]; }};
    std::vector<std::uint32_t> gen_ids;
    for (auto g : generators()) gen_ids.push_back(g.id);
    class_rep_ = detail::conjugacy_representatives(ops, gen_ids);
    if (auto q = arith::prime_power_base(n)) {
      prime_ = static_cast<std::uint32_t>(*q);
      frattini_ = detail::frattini(ops, prime_, gen_ids);
    }
  }

  std::uint32_t p_;
  std::uint32_t dim_;
  std::uint64_t cap_;
  std::vector<Matrix> gen_matrices_;
  std::vector<Matrix> elements_;
  std::unordered_map<Matrix, std::uint32_t, detail::MatrixHash> index_;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> dense_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> class_rep_;
  std::uint32_t prime_ = 0;
  detail::FrattiniData frattini_;
};

/// Upper unitriangular generators of the Heisenberg group mod p.
inline std::vector<Matrix> heisenberg_generators() {
  return {{1, 1, 0, 0, 1, 0, 0, 0, 1}, {1, 0, 0, 0, 1, 1, 0, 0, 1}};
}

}  // namespace beauville
