#pragma once

// Idempotents, corner rings eRe and the Peirce decomposition relative to an
// idempotent. Corner carriers keep ambient codes, so corner elements can be
// mixed freely with ambient arithmetic.

#include <algorithm>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include "unitreg/ring.hpp"

namespace unitreg {

/// An idempotent e of a ring together with its complement f = 1 - e.
struct Idempotent {
  Element e;
  Element f;

  constexpr auto operator<=>(const Idempotent&) const = default;
};

/// Checks e*e = e and pairs e with 1 - e.
inline Idempotent make_idempotent(const FiniteRing& r, Element e) {
  if (!r.contains(e)) throw std::out_of_range("idempotent code out of range");
  if (r.mul(e, e) != e) throw std::invalid_argument("element is not idempotent");
  return {e, r.sub(r.one(), e)};
}

/// All idempotents of r in code order, including 0 and 1.
inline std::vector<Idempotent> idempotents(const FiniteRing& r) {
  std::vector<Idempotent> out;
  for (Element e : r.idempotent_elements()) out.push_back({e, r.sub(r.one(), e)});
  return out;
}

/// The corner ring eRe as a view on its ambient ring. Identity is e.
class CornerRing {
 public:
  CornerRing(FiniteRing ambient, Idempotent idem) : state_(std::make_shared<State>()) {
    state_->ambient = std::move(ambient);
    state_->idem = idem;
    const auto& r = state_->ambient;
    auto& carrier = state_->carrier;
    for (Element x : r.elements()) carrier.push_back(mul3(r, idem.e, x, idem.e));
    std::ranges::sort(carrier);
    auto dup = std::ranges::unique(carrier);
    carrier.erase(dup.begin(), dup.end());
  }

  const FiniteRing& ambient() const noexcept { return state_->ambient; }
  const Idempotent& idempotent() const noexcept { return state_->idem; }

  std::uint64_t size() const noexcept { return state_->carrier.size(); }
  Element zero() const noexcept { return state_->ambient.zero(); }
  Element one() const noexcept { return state_->idem.e; }
  Element add(Element x, Element y) const { return state_->ambient.add(x, y); }
  Element neg(Element x) const { return state_->ambient.neg(x); }
  Element mul(Element x, Element y) const { return state_->ambient.mul(x, y); }
  Element sub(Element x, Element y) const { return state_->ambient.sub(x, y); }

  bool contains(Element x) const {
    return std::ranges::binary_search(state_->carrier, x);
  }

  std::span<const Element> elements() const noexcept { return state_->carrier; }

  const UnitTable& units() const {
    std::call_once(state_->units_once, [this] { state_->units = scan_unit_table(*this); });
    return state_->units;
  }

 private:
  struct State {
    FiniteRing ambient = make_zmod(1);
    Idempotent idem;
    std::vector<Element> carrier;
    std::once_flag units_once;
    UnitTable units;
  };
  std::shared_ptr<State> state_;
};

inline CornerRing corner_ring(const FiniteRing& r, const Idempotent& e) {
  return CornerRing(r, e);
}

/// The complementary corner fRf.
inline CornerRing complement_corner(const FiniteRing& r, const Idempotent& e) {
  return CornerRing(r, Idempotent{e.f, e.e});
}

struct PeirceParts {
  Element ee;  // exe
  Element ef;  // exf
  Element fe;  // fxe
  Element ff;  // fxf

  constexpr auto operator<=>(const PeirceParts&) const = default;
};

inline PeirceParts peirce_decompose(const FiniteRing& r, const Idempotent& e, Element x) {
  return {mul3(r, e.e, x, e.e), mul3(r, e.e, x, e.f), mul3(r, e.f, x, e.e),
          mul3(r, e.f, x, e.f)};
}

inline Element peirce_sum(const FiniteRing& r, const PeirceParts& p) {
  return r.add(r.add(p.ee, p.ef), r.add(p.fe, p.ff));
}

/// The map eRe x fRf -> R, (x, y) -> x + y, with the checks that make it an
/// embedding of unital rings.
struct EmbeddingRecord {
  struct Entry {
    Element x;
    Element y;
    Element image;
  };

  std::vector<Entry> map;
  bool injective = false;
  bool additive = false;
  bool multiplicative = false;
  bool unital = false;        // (e, f) -> 1
  bool image_closed = false;  // image closed under +, -, *

  bool ok() const { return injective && additive && multiplicative && unital && image_closed; }
};

/// Checks are exhaustive over pairs of product elements, i.e. quadratic in
/// |eRe| * |fRf|.
inline EmbeddingRecord product_subring_embed(const FiniteRing& r, const Idempotent& e) {
  const CornerRing ce = corner_ring(r, e);
  const CornerRing cf = complement_corner(r, e);
  EmbeddingRecord rec;
  for (Element x : ce.elements())
    for (Element y : cf.elements()) rec.map.push_back({x, y, r.add(x, y)});

  std::vector<Element> image;
  for (const auto& m : rec.map) image.push_back(m.image);
  std::ranges::sort(image);
  rec.injective = std::ranges::adjacent_find(image) == image.end();

  auto embed = [&r](Element x, Element y) { return r.add(x, y); };
  rec.unital = embed(e.e, e.f) == r.one();
  rec.additive = true;
  rec.multiplicative = true;
  rec.image_closed = true;
  auto in_image = [&image](Element z) { return std::ranges::binary_search(image, z); };
  for (const auto& p : rec.map) {
    if (!in_image(r.neg(p.image))) rec.image_closed = false;
    for (const auto& q : rec.map) {
      const Element s = r.add(p.image, q.image);
      const Element m = r.mul(p.image, q.image);
      if (embed(r.add(p.x, q.x), r.add(p.y, q.y)) != s) rec.additive = false;
      if (embed(r.mul(p.x, q.x), r.mul(p.y, q.y)) != m) rec.multiplicative = false;
      if (!in_image(s) || !in_image(m)) rec.image_closed = false;
    }
  }
  return rec;
}

}  // namespace unitreg
