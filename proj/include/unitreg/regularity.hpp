#pragma once

// Von Neumann regularity, unit regularity and the one-sided variants, each
// with explicit witnesses. Every search runs in ascending code order, so the
// first witness found is reproducible.

#include <optional>
#include <stdexcept>
#include <vector>

#include "unitreg/ring.hpp"

namespace unitreg {

enum class RegularityKind { NotRegular, Regular, RightUnitRegular, LeftUnitRegular, UnitRegular };

enum class Side { Left, Right };

inline const char* to_string(RegularityKind k) {
  switch (k) {
    case RegularityKind::NotRegular: return "not_regular";
    case RegularityKind::Regular: return "regular";
    case RegularityKind::RightUnitRegular: return "right_unit_regular";
    case RegularityKind::LeftUnitRegular: return "left_unit_regular";
    case RegularityKind::UnitRegular: return "unit_regular";
  }
  return "?";
}

struct RegularityWitness {
  RegularityKind kind = RegularityKind::NotRegular;
  std::optional<Element> t;          // a = a t a
  std::optional<Element> u;          // a = a u a
  std::optional<Element> u_partner;  // inverse of u, or its one-sided inverse
};

struct ZeroDivisorStatus {
  bool left = false;   // b c = 0 for some c != 0
  bool right = false;  // c b = 0 for some c != 0

  constexpr bool operator==(const ZeroDivisorStatus&) const = default;
};

template <RingLike R>
bool fixes(const R& r, Element a, Element middle) {
  return r.mul(r.mul(a, middle), a) == a;
}

/// First t with a = a t a.
template <RingLike R>
std::optional<Element> regular_witness(const R& r, Element a) {
  for (Element t : r.elements())
    if (fixes(r, a, t)) return t;
  return std::nullopt;
}

/// First unit u (in code order) with a = a u a, together with u^-1.
template <RingWithUnits R>
std::optional<UnitPair> unit_regular_witness(const R& r, Element a) {
  for (const auto& p : r.units().pairs())
    if (fixes(r, a, p.unit)) return p;
  return std::nullopt;
}

/// First element with a one-sided inverse on the given side that fixes a.
/// For Side::Right the partner v satisfies u v = 1; for Side::Left, v u = 1.
template <RingLike R>
std::optional<std::pair<Element, Element>> one_sided_unit_regular_witness(const R& r, Element a,
                                                                          Side side) {
  const Element one = r.one();
  for (Element u : r.elements()) {
    if (!fixes(r, a, u)) continue;
    for (Element v : r.elements()) {
      const Element p = side == Side::Right ? r.mul(u, v) : r.mul(v, u);
      if (p == one) return std::pair{u, v};
    }
  }
  return std::nullopt;
}

/// Strongest applicable label with witnesses.
template <RingWithUnits R>
RegularityWitness classify(const R& r, Element a) {
  RegularityWitness w;
  w.t = regular_witness(r, a);
  if (!w.t) return w;
  if (auto up = unit_regular_witness(r, a)) {
    w.kind = RegularityKind::UnitRegular;
    w.u = up->unit;
    w.u_partner = up->inverse;
  } else if (auto rp = one_sided_unit_regular_witness(r, a, Side::Right)) {
    w.kind = RegularityKind::RightUnitRegular;
    w.u = rp->first;
    w.u_partner = rp->second;
  } else if (auto lp = one_sided_unit_regular_witness(r, a, Side::Left)) {
    w.kind = RegularityKind::LeftUnitRegular;
    w.u = lp->first;
    w.u_partner = lp->second;
  } else {
    w.kind = RegularityKind::Regular;
  }
  return w;
}

/// Zero-divisor flags of b, computed inside s (which may be a corner).
template <RingLike R>
ZeroDivisorStatus zero_divisor_status(const R& s, Element b) {
  if (!s.contains(b)) throw std::invalid_argument("element is outside the ring's carrier");
  ZeroDivisorStatus st;
  const Element zero = s.zero();
  for (Element c : s.elements()) {
    if (c == zero) continue;
    if (s.mul(b, c) == zero) st.left = true;
    if (s.mul(c, b) == zero) st.right = true;
    if (st.left && st.right) break;
  }
  return st;
}

template <RingLike R>
std::vector<Element> regular_set(const R& r) {
  std::vector<Element> out;
  for (Element a : r.elements())
    if (regular_witness(r, a)) out.push_back(a);
  return out;
}

/// ur(R), ascending.
template <RingWithUnits R>
std::vector<Element> ur_set(const R& r) {
  std::vector<Element> out;
  for (Element a : r.elements())
    if (unit_regular_witness(r, a)) out.push_back(a);
  return out;
}

template <RingWithUnits R>
bool is_unit_regular_ring(const R& r) {
  return ur_set(r).size() == r.size();
}

}  // namespace unitreg
