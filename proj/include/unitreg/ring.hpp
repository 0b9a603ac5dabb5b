#pragma once

// Finite rings with identity, built from a small construction tree:
// Z/n, full k x k matrices, upper triangular k x k matrices, and direct
// products. Elements are dense integer codes (see Element).

#include <algorithm>
#include <cassert>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "unitreg/element.hpp"

namespace unitreg {

inline constexpr std::uint64_t kDefaultSizeCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kDefaultAxiomCap = std::uint64_t{1} << 8;

/// Rings up to this size get precomputed Cayley tables.
inline constexpr std::uint64_t kTableCap = 512;

/// Matrix dimensions above this are rejected even over the zero ring.
inline constexpr std::size_t kMaxDimension = 64;

/// Thrown when a construction would exceed the configured size cap. Raised
/// before any carrier is allocated.
class SizeCapError : public std::runtime_error {
 public:
  SizeCapError(const std::string& ring, std::optional<std::uint64_t> cardinality,
               std::uint64_t cap)
      : std::runtime_error(ring + " has cardinality " +
                           (cardinality ? std::to_string(*cardinality)
                                        : std::string("> 2^64")) +
                           ", exceeding the size cap " + std::to_string(cap)),
        cardinality_(cardinality),
        cap_(cap) {}

  /// Absent when the cardinality overflows 64 bits.
  std::optional<std::uint64_t> cardinality() const noexcept {
    return cardinality_;
  }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::optional<std::uint64_t> cardinality_;
  std::uint64_t cap_;
};

namespace detail {

inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
  if (base <= 1) return exp == 0 ? 1 : base;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    auto next = checked_mul(r, base);
    if (!next) return std::nullopt;
    r = *next;
  }
  return r;
}

}  // namespace detail

/// Unit/inverse pairs, sorted by unit code.
class UnitTable {
 public:
  UnitTable() = default;
  explicit UnitTable(std::vector<UnitPair> pairs) : pairs_(std::move(pairs)) {
    std::ranges::sort(pairs_);
  }

  std::span<const UnitPair> pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }

  std::optional<Element> inverse_of(Element x) const {
    auto it = std::ranges::lower_bound(pairs_, x, {}, &UnitPair::unit);
    if (it == pairs_.end() || it->unit != x) return std::nullopt;
    return it->inverse;
  }

  bool contains(Element x) const { return inverse_of(x).has_value(); }

  std::vector<Element> units() const {
    std::vector<Element> out;
    out.reserve(pairs_.size());
    for (const auto& p : pairs_) out.push_back(p.unit);
    return out;
  }

 private:
  std::vector<UnitPair> pairs_;
};

/// The minimal arithmetic surface shared by FiniteRing, corner rings and test
/// fixtures. Elements are always codes of some ambient enumeration.
template <class R>
concept RingLike = requires(const R& r, Element x, Element y) {
  { r.size() } -> std::convertible_to<std::uint64_t>;
  { r.zero() } -> std::same_as<Element>;
  { r.one() } -> std::same_as<Element>;
  { r.add(x, y) } -> std::same_as<Element>;
  { r.neg(x) } -> std::same_as<Element>;
  { r.mul(x, y) } -> std::same_as<Element>;
  { r.contains(x) } -> std::same_as<bool>;
  { r.elements() } -> std::ranges::input_range;
};

template <class R>
concept RingWithUnits = RingLike<R> && requires(const R& r) {
  { r.units() } -> std::same_as<const UnitTable&>;
};

template <RingLike R>
Element sub(const R& r, Element x, Element y) {
  return r.add(x, r.neg(y));
}

template <RingLike R>
Element mul3(const R& r, Element x, Element y, Element z) {
  return r.mul(r.mul(x, y), z);
}

/// Two-sided inverse by linear scan. This is the reference oracle that every
/// fast path must agree with.
template <RingLike R>
std::optional<Element> find_inverse_scan(const R& r, Element x) {
  const Element one = r.one();
  for (Element v : r.elements()) {
    if (r.mul(x, v) == one && r.mul(v, x) == one) return v;
  }
  return std::nullopt;
}

template <RingLike R>
UnitTable scan_unit_table(const R& r) {
  std::vector<UnitPair> pairs;
  for (Element x : r.elements()) {
    if (auto inv = find_inverse_scan(r, x)) pairs.push_back({x, *inv});
  }
  return UnitTable(std::move(pairs));
}

enum class Construction { Zmod, Matrix, Triangular, Product };

class FiniteRing;
std::optional<Element> is_unit(const FiniteRing& r, Element x);

class FiniteRing {
 public:
  std::uint64_t size() const noexcept { return impl_->size; }
  Element zero() const noexcept { return Element{0}; }
  Element one() const noexcept { return impl_->one; }
  bool contains(Element x) const noexcept { return x.code < impl_->size; }

  auto elements() const {
    return std::views::iota(std::uint64_t{0}, impl_->size) |
           std::views::transform([](std::uint64_t c) { return Element{c}; });
  }

  Element add(Element x, Element y) const {
    assert(contains(x) && contains(y));
    if (!impl_->add_table.empty()) return Element{impl_->add_table[x.code * size() + y.code]};
    return impl_->add_structural(x, y);
  }

  Element neg(Element x) const {
    assert(contains(x));
    if (!impl_->neg_table.empty()) return Element{impl_->neg_table[x.code]};
    return impl_->neg_structural(x);
  }

  Element mul(Element x, Element y) const {
    assert(contains(x) && contains(y));
    if (!impl_->mul_table.empty()) return Element{impl_->mul_table[x.code * size() + y.code]};
    return impl_->mul_structural(x, y);
  }

  Element sub(Element x, Element y) const { return add(x, neg(y)); }

  Construction construction() const noexcept { return impl_->kind; }

  /// n for Z/n.
  std::uint64_t modulus() const noexcept { return impl_->modulus; }
  /// k for matrix and triangular rings.
  std::size_t dimension() const noexcept { return impl_->dim; }
  /// Entry ring of a matrix or triangular ring.
  const FiniteRing& base() const { return impl_->children.at(0); }
  const FiniteRing& left() const { return impl_->children.at(0); }
  const FiniteRing& right() const { return impl_->children.at(1); }

  /// True when the construction tree proves commutativity (Z/n and products
  /// of such rings).
  bool commutative_construction() const noexcept {
    switch (impl_->kind) {
      case Construction::Zmod:
        return true;
      case Construction::Product:
        return left().commutative_construction() &&
               right().commutative_construction();
      default:
        return false;
    }
  }

  /// Ring spec string in the CLI grammar, e.g. "M2(Z3)xZ2".
  std::string describe() const {
    switch (impl_->kind) {
      case Construction::Zmod:
        return "Z" + std::to_string(impl_->modulus);
      case Construction::Matrix:
        return "M" + std::to_string(impl_->dim) + "(" + base().describe() + ")";
      case Construction::Triangular:
        return "T" + std::to_string(impl_->dim) + "(" + base().describe() + ")";
      case Construction::Product: {
        std::string r = right().describe();
        if (right().construction() == Construction::Product) r = "(" + r + ")";
        return left().describe() + "x" + r;
      }
    }
    return {};
  }

  /// Structural components: the residue for Z/n, matrix slots in row-major
  /// order (upper triangle only for triangular rings), or the two factors of
  /// a product.
  std::vector<Element> decode(Element x) const { return impl_->decode(x); }
  Element encode(std::span<const Element> parts) const { return impl_->encode(parts); }
  Element encode(std::initializer_list<std::uint64_t> codes) const {
    std::vector<Element> parts;
    for (auto c : codes) parts.push_back(Element{c});
    return impl_->encode(parts);
  }

  /// Slot index of entry (i, j) in decode() output for matrix and triangular
  /// rings.
  std::size_t slot(std::size_t i, std::size_t j) const { return impl_->slot(i, j); }

  const UnitTable& units() const {
    std::call_once(impl_->units_once, [this] {
      std::vector<UnitPair> pairs;
      for (Element x : elements()) {
        if (auto inv = is_unit(*this, x)) pairs.push_back({x, *inv});
      }
      impl_->units_cache = UnitTable(std::move(pairs));
    });
    return impl_->units_cache;
  }

  /// All x with x*x = x, ascending.
  const std::vector<Element>& idempotent_elements() const {
    std::call_once(impl_->idempotents_once, [this] {
      for (Element x : elements()) {
        if (mul(x, x) == x) impl_->idempotents_cache.push_back(x);
      }
    });
    return impl_->idempotents_cache;
  }

  bool same_ring(const FiniteRing& other) const noexcept { return impl_ == other.impl_; }

 private:
  struct Impl {
    Construction kind = Construction::Zmod;
    std::uint64_t size = 1;
    std::uint64_t modulus = 1;
    std::size_t dim = 0;
    std::size_t slots = 0;
    Element one;
    std::vector<FiniteRing> children;

    std::vector<std::uint32_t> add_table;
    std::vector<std::uint32_t> mul_table;
    std::vector<std::uint32_t> neg_table;

    mutable std::once_flag units_once;
    mutable UnitTable units_cache;
    mutable std::once_flag idempotents_once;
    mutable std::vector<Element> idempotents_cache;

    std::size_t slot(std::size_t i, std::size_t j) const {
      if (kind == Construction::Matrix) return i * dim + j;
      assert(kind == Construction::Triangular && i <= j);
      // rows 0..i-1 hold dim, dim-1, ... entries
      return i * dim - i * (i - 1) / 2 + (j - i);
    }

    std::vector<Element> decode(Element x) const {
      switch (kind) {
        case Construction::Zmod:
          return {x};
        case Construction::Product: {
          const auto n2 = children[1].size();
          return {Element{x.code / n2}, Element{x.code % n2}};
        }
        default: {
          const auto b = children[0].size();
          std::vector<Element> out(slots);
          std::uint64_t c = x.code;
          for (std::size_t s = slots; s-- > 0;) {
            out[s] = Element{c % b};
            c /= b;
          }
          return out;
        }
      }
    }

    Element encode(std::span<const Element> parts) const {
      switch (kind) {
        case Construction::Zmod:
          if (parts.size() != 1 || parts[0].code >= modulus)
            throw std::invalid_argument("bad residue for " + std::to_string(modulus));
          return parts[0];
        case Construction::Product:
          if (parts.size() != 2 || !children[0].contains(parts[0]) ||
              !children[1].contains(parts[1]))
            throw std::invalid_argument("bad product components");
          return Element{parts[0].code * children[1].size() + parts[1].code};
        default: {
          if (parts.size() != slots) throw std::invalid_argument("wrong number of matrix slots");
          const auto b = children[0].size();
          std::uint64_t c = 0;
          for (auto p : parts) {
            if (p.code >= b) throw std::invalid_argument("matrix entry out of range");
            c = c * b + p.code;
          }
          return Element{c};
        }
      }
    }

    Element add_structural(Element x, Element y) const {
      switch (kind) {
        case Construction::Zmod:
          return Element{x.code >= modulus - y.code ? x.code - (modulus - y.code) : x.code + y.code};
        case Construction::Product: {
          auto a = decode(x), b = decode(y);
          std::vector<Element> r{children[0].add(a[0], b[0]), children[1].add(a[1], b[1])};
          return encode(r);
        }
        default: {
          auto a = decode(x), b = decode(y);
          const auto& base = children[0];
          for (std::size_t s = 0; s < slots; ++s) a[s] = base.add(a[s], b[s]);
          return encode(a);
        }
      }
    }

    Element neg_structural(Element x) const {
      switch (kind) {
        case Construction::Zmod:
          return Element{(modulus - x.code) % modulus};
        case Construction::Product: {
          auto a = decode(x);
          std::vector<Element> r{children[0].neg(a[0]), children[1].neg(a[1])};
          return encode(r);
        }
        default: {
          auto a = decode(x);
          for (auto& e : a) e = children[0].neg(e);
          return encode(a);
        }
      }
    }

    Element mul_structural(Element x, Element y) const {
      switch (kind) {
        case Construction::Zmod:
          return Element{static_cast<std::uint64_t>(
              static_cast<unsigned __int128>(x.code) * y.code % modulus)};
        case Construction::Product: {
          auto a = decode(x), b = decode(y);
          std::vector<Element> r{children[0].mul(a[0], b[0]), children[1].mul(a[1], b[1])};
          return encode(r);
        }
        case Construction::Matrix: {
          auto a = decode(x), b = decode(y);
          const auto& base = children[0];
          std::vector<Element> c(slots);
          for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
              Element acc = base.zero();
              for (std::size_t m = 0; m < dim; ++m)
                acc = base.add(acc, base.mul(a[i * dim + m], b[m * dim + j]));
              c[i * dim + j] = acc;
            }
          return encode(c);
        }
        case Construction::Triangular: {
          auto a = decode(x), b = decode(y);
          const auto& base = children[0];
          std::vector<Element> c(slots);
          for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i; j < dim; ++j) {
              Element acc = base.zero();
              for (std::size_t m = i; m <= j; ++m)
                acc = base.add(acc, base.mul(a[slot(i, m)], b[slot(m, j)]));
              c[slot(i, j)] = acc;
            }
          return encode(c);
        }
      }
      return Element{};
    }

    void build_tables() {
      if (size > kTableCap) return;
      const auto n = size;
      std::vector<std::uint32_t> at(n * n), mt(n * n), nt(n);
      for (std::uint64_t i = 0; i < n; ++i) {
        nt[i] = static_cast<std::uint32_t>(neg_structural(Element{i}).code);
        for (std::uint64_t j = 0; j < n; ++j) {
          at[i * n + j] = static_cast<std::uint32_t>(add_structural(Element{i}, Element{j}).code);
          mt[i * n + j] = static_cast<std::uint32_t>(mul_structural(Element{i}, Element{j}).code);
        }
      }
      add_table = std::move(at);
      mul_table = std::move(mt);
      neg_table = std::move(nt);
    }
  };

  explicit FiniteRing(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {
    impl_->build_tables();
  }

  std::shared_ptr<Impl> impl_;

  friend FiniteRing make_zmod(std::uint64_t, std::uint64_t);
  friend FiniteRing make_matrix_ring(std::size_t, const FiniteRing&, std::uint64_t);
  friend FiniteRing make_triangular_ring(std::size_t, const FiniteRing&, std::uint64_t);
  friend FiniteRing make_product_ring(const FiniteRing&, const FiniteRing&, std::uint64_t);
};

/// Z/nZ. Codes are the residues 0..n-1. n = 1 gives the zero ring.
inline FiniteRing make_zmod(std::uint64_t n, std::uint64_t size_cap = kDefaultSizeCap) {
  if (n == 0) throw std::invalid_argument("Z/n requires n >= 1");
  if (n > size_cap) throw SizeCapError("Z" + std::to_string(n), n, size_cap);
  auto impl = std::make_shared<FiniteRing::Impl>();
  impl->kind = Construction::Zmod;
  impl->size = n;
  impl->modulus = n;
  impl->one = Element{1 % n};
  return FiniteRing(std::move(impl));
}

/// Full k x k matrices over base. Codes are mixed-radix over the k*k entries
/// in row-major order, entry (0,0) most significant.
inline FiniteRing make_matrix_ring(std::size_t k, const FiniteRing& base,
                                   std::uint64_t size_cap = kDefaultSizeCap) {
  if (k == 0) throw std::invalid_argument("matrix size must be >= 1");
  const std::string name = "M" + std::to_string(k) + "(" + base.describe() + ")";
  if (k > kMaxDimension) throw SizeCapError(name, std::nullopt, size_cap);
  auto card = detail::checked_pow(base.size(), k * k);
  if (!card || *card > size_cap) throw SizeCapError(name, card, size_cap);
  auto impl = std::make_shared<FiniteRing::Impl>();
  impl->kind = Construction::Matrix;
  impl->size = *card;
  impl->dim = k;
  impl->slots = k * k;
  impl->children = {base};
  std::vector<Element> id(k * k, base.zero());
  for (std::size_t i = 0; i < k; ++i) id[i * k + i] = base.one();
  impl->one = impl->encode(id);
  return FiniteRing(std::move(impl));
}

/// Upper triangular k x k matrices over base; slots are the entries (i, j)
/// with i <= j in row-major order.
inline FiniteRing make_triangular_ring(std::size_t k, const FiniteRing& base,
                                       std::uint64_t size_cap = kDefaultSizeCap) {
  if (k == 0) throw std::invalid_argument("matrix size must be >= 1");
  const std::string name = "T" + std::to_string(k) + "(" + base.describe() + ")";
  if (k > kMaxDimension) throw SizeCapError(name, std::nullopt, size_cap);
  auto card = detail::checked_pow(base.size(), k * (k + 1) / 2);
  if (!card || *card > size_cap) throw SizeCapError(name, card, size_cap);
  auto impl = std::make_shared<FiniteRing::Impl>();
  impl->kind = Construction::Triangular;
  impl->size = *card;
  impl->dim = k;
  impl->slots = k * (k + 1) / 2;
  impl->children = {base};
  std::vector<Element> id(impl->slots, base.zero());
  for (std::size_t i = 0; i < k; ++i) id[impl->slot(i, i)] = base.one();
  impl->one = impl->encode(id);
  return FiniteRing(std::move(impl));
}

/// r1 x r2 with componentwise arithmetic; code = code1 * |r2| + code2.
inline FiniteRing make_product_ring(const FiniteRing& r1, const FiniteRing& r2,
                                    std::uint64_t size_cap = kDefaultSizeCap) {
  std::string rhs = r2.describe();
  if (r2.construction() == Construction::Product) rhs = "(" + rhs + ")";
  const std::string name = r1.describe() + "x" + rhs;
  auto card = detail::checked_mul(r1.size(), r2.size());
  if (!card || *card > size_cap) throw SizeCapError(name, card, size_cap);
  auto impl = std::make_shared<FiniteRing::Impl>();
  impl->kind = Construction::Product;
  impl->size = *card;
  impl->children = {r1, r2};
  impl->one = Element{r1.one().code * r2.size() + r2.one().code};
  return FiniteRing(std::move(impl));
}

namespace detail {

// Inverse of x modulo n when gcd(x, n) = 1.
inline std::optional<std::uint64_t> modular_inverse(std::uint64_t x, std::uint64_t n) {
  if (n == 1) return 0;
  std::int64_t old_r = static_cast<std::int64_t>(x), r = static_cast<std::int64_t>(n);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const auto q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  if (old_r != 1) return std::nullopt;
  const auto m = static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(((old_s % m) + m) % m);
}

// Laplace expansion along the first row; the base must be commutative.
inline Element determinant(const FiniteRing& base, const std::vector<Element>& m, std::size_t k) {
  if (k == 1) return m[0];
  Element det = base.zero();
  std::vector<Element> minor((k - 1) * (k - 1));
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t idx = 0;
    for (std::size_t i = 1; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (j != col) minor[idx++] = m[i * k + j];
    Element term = base.mul(m[col], determinant(base, minor, k - 1));
    det = (col % 2 == 0) ? base.add(det, term) : base.sub(det, term);
  }
  return det;
}

inline std::vector<Element> adjugate(const FiniteRing& base, const std::vector<Element>& m,
                                     std::size_t k) {
  std::vector<Element> adj(k * k, base.zero());
  if (k == 1) {
    adj[0] = base.one();
    return adj;
  }
  std::vector<Element> minor((k - 1) * (k - 1));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (i != r && j != c) minor[idx++] = m[i * k + j];
      Element cof = determinant(base, minor, k - 1);
      if ((r + c) % 2 == 1) cof = base.neg(cof);
      adj[c * k + r] = cof;
    }
  return adj;
}

}  // namespace detail

/// Two-sided inverse of x, if any. Uses the structure of the construction
/// where possible and falls back to find_inverse_scan otherwise.
inline std::optional<Element> is_unit(const FiniteRing& r, Element x) {
  if (!r.contains(x)) throw std::out_of_range("element not in ring");
  switch (r.construction()) {
    case Construction::Zmod: {
      auto inv = detail::modular_inverse(x.code, r.modulus());
      if (!inv) return std::nullopt;
      return Element{*inv};
    }
    case Construction::Product: {
      auto parts = r.decode(x);
      auto i1 = is_unit(r.left(), parts[0]);
      if (!i1) return std::nullopt;
      auto i2 = is_unit(r.right(), parts[1]);
      if (!i2) return std::nullopt;
      std::vector<Element> inv{*i1, *i2};
      return r.encode(inv);
    }
    case Construction::Matrix: {
      const auto& base = r.base();
      if (!base.commutative_construction()) return find_inverse_scan(r, x);
      const auto k = r.dimension();
      auto m = r.decode(x);
      auto det_inv = is_unit(base, detail::determinant(base, m, k));
      if (!det_inv) return std::nullopt;
      auto adj = detail::adjugate(base, m, k);
      for (auto& e : adj) e = base.mul(*det_inv, e);
      return r.encode(adj);
    }
    case Construction::Triangular: {
      const auto& base = r.base();
      const auto k = r.dimension();
      auto m = r.decode(x);
      std::vector<Element> diag_inv(k);
      for (std::size_t i = 0; i < k; ++i) {
        auto d = is_unit(base, m[r.slot(i, i)]);
        if (!d) return std::nullopt;
        diag_inv[i] = *d;
      }
      std::vector<Element> y(m.size(), base.zero());
      for (std::size_t i = k; i-- > 0;) {
        y[r.slot(i, i)] = diag_inv[i];
        for (std::size_t j = i + 1; j < k; ++j) {
          Element acc = base.zero();
          for (std::size_t mid = i + 1; mid <= j; ++mid)
            acc = base.add(acc, base.mul(m[r.slot(i, mid)], y[r.slot(mid, j)]));
          y[r.slot(i, j)] = base.neg(base.mul(diag_inv[i], acc));
        }
      }
      return r.encode(y);
    }
  }
  return std::nullopt;
}

/// Cached table of all units of r.
inline const UnitTable& unit_group(const FiniteRing& r) { return r.units(); }

}  // namespace unitreg
