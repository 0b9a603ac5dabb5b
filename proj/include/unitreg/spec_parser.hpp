#pragma once

// Ring specification strings:
//
//   spec := term ("x" term)*          products associate to the left
//   term := "Z" nat | "M" nat "(" spec ")" | "T" nat "(" spec ")" | "(" spec ")"
//
// Keywords are case-insensitive and whitespace between tokens is ignored.

#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "unitreg/ring.hpp"

namespace unitreg {

struct RingSpec {
  enum class Kind { Zmod, Matrix, Triangular, Product };

  Kind kind = Kind::Zmod;
  std::uint64_t n = 1;  // modulus for Zmod, dimension for Matrix/Triangular
  std::vector<RingSpec> children;

  static RingSpec zmod(std::uint64_t n) { return {Kind::Zmod, n, {}}; }
  static RingSpec matrix(std::uint64_t k, RingSpec base) { return {Kind::Matrix, k, {std::move(base)}}; }
  static RingSpec triangular(std::uint64_t k, RingSpec base) {
    return {Kind::Triangular, k, {std::move(base)}};
  }
  static RingSpec product(RingSpec l, RingSpec r) {
    return {Kind::Product, 0, {std::move(l), std::move(r)}};
  }

  bool operator==(const RingSpec&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
      : std::runtime_error(format(offset, expected, detail)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(std::size_t offset, const std::vector<std::string>& expected,
                            const std::string& detail) {
    std::string s = "parse error at byte " + std::to_string(offset) + ": " + detail;
    if (!expected.empty()) {
      s += "; expected one of:";
      for (const auto& e : expected) s += " " + e;
    }
    return s;
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
};

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  RingSpec parse() {
    RingSpec spec = product();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, {"'x'", "end of input"}, "unexpected character");
    return spec;
  }

 private:
  RingSpec product() {
    RingSpec left = term();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && lower(text_[pos_]) == 'x') {
        ++pos_;
        left = RingSpec::product(std::move(left), term());
      } else {
        return left;
      }
    }
  }

  RingSpec term() {
    skip_ws();
    if (pos_ >= text_.size())
      throw ParseError(pos_, {"'Z'", "'M'", "'T'", "'('"}, "unexpected end of input");
    const char c = lower(text_[pos_]);
    switch (c) {
      case 'z':
        ++pos_;
        return RingSpec::zmod(nat());
      case 'm':
      case 't': {
        ++pos_;
        const auto k = nat();
        expect('(');
        RingSpec inner = product();
        expect(')');
        return c == 'm' ? RingSpec::matrix(k, std::move(inner))
                        : RingSpec::triangular(k, std::move(inner));
      }
      case '(': {
        ++pos_;
        RingSpec inner = product();
        expect(')');
        return inner;
      }
      default:
        throw ParseError(pos_, {"'Z'", "'M'", "'T'", "'('"}, "unexpected character");
    }
  }

  std::uint64_t nat() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > 100'000'000'000'000'000ULL)
        throw ParseError(start, {"positive integer"}, "number too large");
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) throw ParseError(pos_, {"positive integer"}, "missing number");
    if (v == 0) throw ParseError(start, {"positive integer"}, "size must be at least 1");
    return v;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(pos_, {std::string("'") + c + "'"},
                       pos_ >= text_.size() ? "unexpected end of input" : "unexpected character");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RingSpec parse_ring_spec(std::string_view text) { return detail::SpecParser(text).parse(); }

/// Canonical text form; parse_ring_spec(to_string(s)) == s.
inline std::string to_string(const RingSpec& s) {
  switch (s.kind) {
    case RingSpec::Kind::Zmod:
      return "Z" + std::to_string(s.n);
    case RingSpec::Kind::Matrix:
      return "M" + std::to_string(s.n) + "(" + to_string(s.children[0]) + ")";
    case RingSpec::Kind::Triangular:
      return "T" + std::to_string(s.n) + "(" + to_string(s.children[0]) + ")";
    case RingSpec::Kind::Product: {
      std::string r = to_string(s.children[1]);
      if (s.children[1].kind == RingSpec::Kind::Product) r = "(" + r + ")";
      return to_string(s.children[0]) + "x" + r;
    }
  }
  return {};
}

/// |R| for the ring described by s, or nothing on 64-bit overflow.
inline std::optional<std::uint64_t> cardinality(const RingSpec& s) {
  switch (s.kind) {
    case RingSpec::Kind::Zmod:
      return s.n;
    case RingSpec::Kind::Matrix:
    case RingSpec::Kind::Triangular: {
      auto base = cardinality(s.children[0]);
      if (!base) return std::nullopt;
      const std::uint64_t k = s.n;
      if (k > (std::uint64_t{1} << 31)) return *base <= 1 ? base : std::nullopt;
      const std::uint64_t slots = s.kind == RingSpec::Kind::Matrix ? k * k : k * (k + 1) / 2;
      return detail::checked_pow(*base, slots);
    }
    case RingSpec::Kind::Product: {
      auto l = cardinality(s.children[0]);
      auto r = cardinality(s.children[1]);
      if (!l || !r) return std::nullopt;
      return detail::checked_mul(*l, *r);
    }
  }
  return std::nullopt;
}

namespace detail {

inline FiniteRing build(const RingSpec& s, std::uint64_t cap) {
  switch (s.kind) {
    case RingSpec::Kind::Zmod:
      return make_zmod(s.n, cap);
    case RingSpec::Kind::Matrix:
      return make_matrix_ring(s.n, build(s.children[0], cap), cap);
    case RingSpec::Kind::Triangular:
      return make_triangular_ring(s.n, build(s.children[0], cap), cap);
    case RingSpec::Kind::Product:
      return make_product_ring(build(s.children[0], cap), build(s.children[1], cap), cap);
  }
  throw std::logic_error("unknown ring spec kind");
}

}  // namespace detail

/// Builds the ring, rejecting oversized specs before anything is allocated.
inline FiniteRing instantiate(const RingSpec& s, std::uint64_t size_cap = kDefaultSizeCap) {
  auto card = cardinality(s);
  if (!card || *card > size_cap) throw SizeCapError(to_string(s), card, size_cap);
  return detail::build(s, size_cap);
}

}  // namespace unitreg
