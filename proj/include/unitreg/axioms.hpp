#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "unitreg/ring.hpp"

namespace unitreg {

struct AxiomResult {
  AxiomResult() = default;
  explicit AxiomResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  /// First (x, y, z) in code order that breaks the axiom; unused slots are zero.
  std::optional<std::array<Element, 3>> counterexample;
};

struct AxiomReport {
  bool capped = false;
  std::uint64_t size = 0;
  std::vector<AxiomResult> results;

  bool all_passed() const {
    if (capped) return false;
    for (const auto& r : results)
      if (!r.passed) return false;
    return true;
  }

  const AxiomResult* find(const std::string& name) const {
    for (const auto& r : results)
      if (r.name == name) return &r;
    return nullptr;
  }
};

/// Exhaustively checks the ring axioms. Cubic in |R|, so rings larger than
/// axiom_cap are reported as capped without being checked.
template <RingLike R>
AxiomReport check_ring_axioms(const R& r, std::uint64_t axiom_cap = kDefaultAxiomCap) {
  AxiomReport rep;
  rep.size = r.size();
  if (rep.size > axiom_cap) {
    rep.capped = true;
    return rep;
  }
  std::vector<Element> elems;
  for (Element x : r.elements()) elems.push_back(x);

  AxiomResult closure{"closure"}, add_assoc{"add_associative"}, add_comm{"add_commutative"},
      add_zero{"add_identity"}, add_inv{"add_inverse"}, mul_assoc{"mul_associative"},
      mul_one{"mul_identity"}, left_dist{"left_distributive"},
      right_dist{"right_distributive"};

  auto fail = [](AxiomResult& a, Element x, Element y, Element z) {
    if (a.passed) {
      a.passed = false;
      a.counterexample = std::array<Element, 3>{x, y, z};
    }
  };

  const Element zero = r.zero(), one = r.one();
  if (!r.contains(zero) || !r.contains(one)) fail(closure, zero, one, zero);
  for (Element x : elems) {
    if (!r.contains(r.neg(x))) fail(closure, x, zero, zero);
    if (r.add(zero, x) != x || r.add(x, zero) != x) fail(add_zero, x, zero, zero);
    if (r.add(x, r.neg(x)) != zero) fail(add_inv, x, zero, zero);
    if (r.mul(one, x) != x || r.mul(x, one) != x) fail(mul_one, x, zero, zero);
    for (Element y : elems) {
      const Element s = r.add(x, y), p = r.mul(x, y);
      if (!r.contains(s) || !r.contains(p)) fail(closure, x, y, zero);
      if (s != r.add(y, x)) fail(add_comm, x, y, zero);
      for (Element z : elems) {
        if (r.add(s, z) != r.add(x, r.add(y, z))) fail(add_assoc, x, y, z);
        if (r.mul(p, z) != r.mul(x, r.mul(y, z))) fail(mul_assoc, x, y, z);
        if (r.mul(x, r.add(y, z)) != r.add(p, r.mul(x, z))) fail(left_dist, x, y, z);
        if (r.mul(s, z) != r.add(r.mul(x, z), r.mul(y, z))) fail(right_dist, x, y, z);
      }
    }
  }
  rep.results = {closure, add_assoc, add_comm, add_zero, add_inv,
                 mul_assoc, mul_one, left_dist, right_dist};
  return rep;
}

}  // namespace unitreg
