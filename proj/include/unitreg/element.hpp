#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace unitreg {

/// A ring element, identified by its position in the ring's enumeration order.
///
/// Codes are only meaningful relative to the ring that produced them. Code 0
/// is always the zero element.
struct Element {
  std::uint64_t code = 0;

  constexpr Element() = default;
  constexpr explicit Element(std::uint64_t c) : code(c) {}

  constexpr auto operator<=>(const Element&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, Element x) {
  return os << x.code;
}

/// A unit together with its two-sided inverse.
struct UnitPair {
  Element unit;
  Element inverse;

  constexpr auto operator<=>(const UnitPair&) const = default;
};

}  // namespace unitreg

template <>
struct std::hash<unitreg::Element> {
  std::size_t operator()(unitreg::Element x) const noexcept {
    return std::hash<std::uint64_t>{}(x.code);
  }
};
