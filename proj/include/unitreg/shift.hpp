#pragma once

// Banded endomorphisms of the F2-vector space with basis e_0, e_1, ...
//
// An operator is a finite set of diagonals (offset d, start m), each sending
// e_i to e_{i+d} for every i >= m, plus finitely many exceptional columns that
// override the diagonals. Targets below zero are dropped, which is how the
// left shift kills e_0. The stored form is canonical, so == on BandOperator is
// equality of linear maps.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace unitreg::shift {

using Index = std::int64_t;
using Vector = std::set<Index>;  // support of an F2 vector

inline Vector symmetric_difference(const Vector& x, const Vector& y) {
  Vector out;
  std::ranges::set_symmetric_difference(x, y, std::inserter(out, out.end()));
  return out;
}

class BandOperator {
 public:
  using Diagonals = std::map<Index, Index>;    // offset -> start
  using Exceptions = std::map<Index, Vector>;  // column -> image

  BandOperator() = default;

  /// Any (diagonals, exceptions) description; the result is normalized.
  static BandOperator from_parts(const Diagonals& diagonals, const Exceptions& exceptions) {
    BandOperator raw;
    raw.diagonals_ = diagonals;
    raw.exceptions_ = exceptions;
    for (const auto& [i, image] : exceptions) {
      if (i < 0) throw std::invalid_argument("negative column index");
      for (Index j : image)
        if (j < 0) throw std::invalid_argument("negative target index");
    }
    std::set<Index> offsets;
    for (const auto& [d, m] : diagonals) {
      if (m < 0) throw std::invalid_argument("negative diagonal start");
      offsets.insert(d);
    }
    return normalize(offsets, raw.bound(), [&raw](Index i) { return raw.column(i); });
  }

  static BandOperator identity() { return from_parts({{0, 0}}, {}); }
  /// e_i -> e_{i+1}
  static BandOperator right_shift() { return from_parts({{1, 0}}, {}); }
  /// e_0 -> 0, e_i -> e_{i-1}
  static BandOperator left_shift() { return from_parts({{-1, 0}}, {}); }
  /// e_i -> e_i, everything else -> 0
  static BandOperator projection(Index i) { return from_parts({}, {{i, {i}}}); }

  const Diagonals& diagonals() const noexcept { return diagonals_; }
  const Exceptions& exceptions() const noexcept { return exceptions_; }

  bool is_zero() const noexcept { return diagonals_.empty() && exceptions_.empty(); }

  /// Image of e_i.
  Vector column(Index i) const {
    if (i < 0) throw std::out_of_range("negative basis index");
    if (auto it = exceptions_.find(i); it != exceptions_.end()) return it->second;
    Vector out;
    for (const auto& [d, m] : diagonals_)
      if (i >= m && i + d >= 0) out.insert(i + d);
    return out;
  }

  /// From this index on, column(i) = { i + d : d in offsets }.
  Index bound() const {
    Index b = 0;
    for (const auto& [d, m] : diagonals_) b = std::max({b, m, -d});
    if (!exceptions_.empty()) b = std::max(b, exceptions_.rbegin()->first + 1);
    return b;
  }

  Vector apply(const Vector& x) const {
    Vector out;
    for (Index i : x) out = symmetric_difference(out, column(i));
    return out;
  }

  friend bool operator==(const BandOperator&, const BandOperator&) = default;

  friend BandOperator operator+(const BandOperator& p, const BandOperator& q) {
    std::set<Index> offsets;
    for (const auto& [d, m] : p.diagonals_) offsets.insert(d);
    for (const auto& [d, m] : q.diagonals_) {
      if (!offsets.erase(d)) offsets.insert(d);
    }
    return normalize(offsets, std::max(p.bound(), q.bound()),
                     [&](Index i) { return symmetric_difference(p.column(i), q.column(i)); });
  }

  /// Composition: (p * q)(x) = p(q(x)).
  friend BandOperator operator*(const BandOperator& p, const BandOperator& q) {
    std::map<Index, int> parity;
    for (const auto& [dq, mq] : q.diagonals_)
      for (const auto& [dp, mp] : p.diagonals_) parity[dp + dq] ^= 1;
    std::set<Index> offsets;
    for (const auto& [d, odd] : parity)
      if (odd) offsets.insert(d);
    Index b = q.bound();
    if (!q.diagonals_.empty()) b = std::max(b, p.bound() - q.diagonals_.begin()->first);
    return normalize(offsets, b, [&](Index i) { return p.apply(q.column(i)); });
  }

  std::string to_string() const {
    std::string s = "{diagonals:[";
    bool first = true;
    for (const auto& [d, m] : diagonals_) {
      s += (first ? "" : ",") + std::string("(") + std::to_string(d) + "@" + std::to_string(m) + ")";
      first = false;
    }
    s += "], exceptions:[";
    first = true;
    for (const auto& [i, image] : exceptions_) {
      s += (first ? "" : ",") + std::to_string(i) + "->{";
      bool f2 = true;
      for (Index j : image) {
        s += (f2 ? "" : ",") + std::to_string(j);
        f2 = false;
      }
      s += "}";
      first = false;
    }
    return s + "]}";
  }

 private:
  // Canonical form of the map with tail offsets `offsets` that agrees with
  // col(i) below `tail` and is purely diagonal from `tail` on.
  static BandOperator normalize(const std::set<Index>& offsets, Index tail,
                                const std::function<Vector(Index)>& col) {
    tail = std::max<Index>(tail, 0);
    std::vector<Vector> head(static_cast<std::size_t>(tail));
    for (Index i = 0; i < tail; ++i) head[static_cast<std::size_t>(i)] = col(i);

    BandOperator out;
    for (Index d : offsets) {
      Index m = tail;
      while (m > 0) {
        const Index i = m - 1;
        if (i + d >= 0 && !head[static_cast<std::size_t>(i)].contains(i + d)) break;
        m = i;
      }
      out.diagonals_.emplace(d, m);
    }
    for (Index i = 0; i < tail; ++i) {
      Vector predicted;
      for (const auto& [d, m] : out.diagonals_)
        if (i >= m && i + d >= 0) predicted.insert(i + d);
      if (predicted != head[static_cast<std::size_t>(i)])
        out.exceptions_.emplace(i, head[static_cast<std::size_t>(i)]);
    }
    return out;
  }

  Diagonals diagonals_;
  Exceptions exceptions_;
};

/// 2 x 2 matrices over banded operators, row-major.
struct BandMatrix2 {
  std::array<BandOperator, 4> entries;

  const BandOperator& at(int i, int j) const { return entries[static_cast<std::size_t>(2 * i + j)]; }

  static BandMatrix2 identity() {
    return {{BandOperator::identity(), BandOperator(), BandOperator(), BandOperator::identity()}};
  }

  friend bool operator==(const BandMatrix2&, const BandMatrix2&) = default;

  friend BandMatrix2 operator+(const BandMatrix2& x, const BandMatrix2& y) {
    BandMatrix2 out;
    for (std::size_t k = 0; k < 4; ++k) out.entries[k] = x.entries[k] + y.entries[k];
    return out;
  }

  friend BandMatrix2 operator*(const BandMatrix2& x, const BandMatrix2& y) {
    BandMatrix2 out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out.entries[static_cast<std::size_t>(2 * i + j)] =
            x.at(i, 0) * y.at(0, j) + x.at(i, 1) * y.at(1, j);
    return out;
  }
};

/// Checks pq against direct evaluation p(q(e_i)) for i <= bound + 5.
inline bool evaluation_consistent(const BandOperator& p, const BandOperator& q,
                                  const BandOperator& pq) {
  const Index k = std::max({p.bound(), q.bound(), pq.bound()}) + 5;
  for (Index i = 0; i <= k; ++i)
    if (p.apply(q.column(i)) != pq.column(i)) return false;
  return true;
}

inline bool evaluation_consistent(const BandMatrix2& x, const BandMatrix2& y,
                                  const BandMatrix2& xy) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto& target = xy.at(i, j);
      Index k = target.bound();
      for (int m = 0; m < 2; ++m) k = std::max({k, x.at(i, m).bound(), y.at(m, j).bound()});
      k += 5;
      for (Index n = 0; n <= k; ++n) {
        Vector direct = symmetric_difference(x.at(i, 0).apply(y.at(0, j).column(n)),
                                             x.at(i, 1).apply(y.at(1, j).column(n)));
        if (direct != target.column(n)) return false;
      }
    }
  return true;
}

/// Rank over F2 of op restricted to span(e_0..e_{domain-1}), keeping only the
/// coordinates e_0..e_{codomain-1}.
inline Index truncated_rank(const BandOperator& op, Index domain, Index codomain) {
  const auto words = static_cast<std::size_t>((codomain + 63) / 64);
  std::vector<std::vector<std::uint64_t>> rows;
  for (Index c = 0; c < domain; ++c) {
    std::vector<std::uint64_t> v(words, 0);
    for (Index r : op.column(c))
      if (r < codomain) v[static_cast<std::size_t>(r / 64)] |= std::uint64_t{1} << (r % 64);
    rows.push_back(std::move(v));
  }
  Index rank = 0;
  for (Index bit = 0; bit < codomain && rank < static_cast<Index>(rows.size()); ++bit) {
    const auto w = static_cast<std::size_t>(bit / 64);
    const auto mask = std::uint64_t{1} << (bit % 64);
    auto pivot = std::find_if(rows.begin() + rank, rows.end(),
                              [&](const auto& v) { return (v[w] & mask) != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (auto it = rows.begin(); it != rows.end(); ++it) {
      if (it == rows.begin() + rank || ((*it)[w] & mask) == 0) continue;
      for (std::size_t k = 0; k < words; ++k) (*it)[k] ^= rows[static_cast<std::size_t>(rank)][k];
    }
    ++rank;
  }
  return rank;
}

struct TruncationRow {
  Index n = 0;  // domain span(e_0..e_n), codomain span(e_0..e_{n+1})
  Index rank = 0;
  Index kernel_dim = 0;
  Index cokernel_dim = 0;
};

inline TruncationRow shift_truncation(Index n) {
  const auto s = BandOperator::right_shift();
  TruncationRow row;
  row.n = n;
  row.rank = truncated_rank(s, n + 1, n + 2);
  row.kernel_dim = (n + 1) - row.rank;
  row.cokernel_dim = (n + 2) - row.rank;
  return row;
}

inline constexpr const char* kKernelCokernelNote =
    "s is regular (s = sts) but not unit regular: an endomorphism of a vector space is unit "
    "regular exactly when its kernel and cokernel have equal dimension, and s is injective "
    "with a one-dimensional cokernel. This criterion is a classical fact cited as evidence, "
    "not re-proved here.";

struct ShiftDemoReport {
  Index truncation = 0;
  bool ts_identity = false;
  bool st_kills_e0 = false;   // st = 1 - projection onto e_0
  bool st_not_identity = false;
  bool sts_eq_s = false;
  bool aua_eq_a = false;
  bool uv_identity = false;
  bool vu_identity = false;
  bool corner_shape = false;  // e a e keeps only the (0,0) entry
  bool evaluation_consistent = false;
  std::vector<TruncationRow> rows;  // n = 2..truncation
  bool kernel_cokernel_ok = false;
  std::string note = kKernelCokernelNote;

  bool ok() const {
    return ts_identity && st_kills_e0 && st_not_identity && sts_eq_s && aua_eq_a && uv_identity &&
           vu_identity && corner_shape && evaluation_consistent && kernel_cokernel_ok;
  }
};

struct BandScaffold {
  BandMatrix2 a;
  BandMatrix2 u;
  BandMatrix2 v;
  BandMatrix2 e;
  bool aua_eq_a = false;
  bool uv_identity = false;
  bool vu_identity = false;
  /// Unit regularity of a in eRe cannot be decided by enumeration here.
  static constexpr bool decidable = false;

  bool scaffold_ok() const { return aua_eq_a && uv_identity && vu_identity; }
};

/// a = [[s,0],[0,0]], u = [[t,1],[1,0]], v = [[0,1],[1,t]] (-t = t over F2).
inline BandScaffold build_m2_counterexample(const BandOperator& s, const BandOperator& t) {
  if (s * t * s != s) throw std::invalid_argument("s != sts");
  const BandOperator zero, one = BandOperator::identity();
  BandScaffold sc;
  sc.a = {{s, zero, zero, zero}};
  sc.u = {{t, one, one, zero}};
  sc.v = {{zero, one, one, t}};
  sc.e = {{one, zero, zero, zero}};
  sc.aua_eq_a = sc.a * sc.u * sc.a == sc.a;
  sc.uv_identity = sc.u * sc.v == BandMatrix2::identity();
  sc.vu_identity = sc.v * sc.u == BandMatrix2::identity();
  return sc;
}

inline ShiftDemoReport run_shift_demo(Index truncation) {
  if (truncation < 2) throw std::invalid_argument("truncation must be >= 2");
  const auto s = BandOperator::right_shift();
  const auto t = BandOperator::left_shift();
  const auto one = BandOperator::identity();
  ShiftDemoReport rep;
  rep.truncation = truncation;

  const auto ts = t * s, st = s * t, sts = st * s;
  rep.ts_identity = ts == one;
  rep.st_kills_e0 = st == one + BandOperator::projection(0);
  rep.st_not_identity = st != one;
  rep.sts_eq_s = sts == s;

  const auto sc = build_m2_counterexample(s, t);
  rep.aua_eq_a = sc.aua_eq_a;
  rep.uv_identity = sc.uv_identity;
  rep.vu_identity = sc.vu_identity;

  const auto au = sc.a * sc.u;
  const auto eae = sc.e * sc.a * sc.e;
  rep.corner_shape = eae.at(0, 0) == s && eae.at(0, 1).is_zero() && eae.at(1, 0).is_zero() &&
                     eae.at(1, 1).is_zero();
  rep.evaluation_consistent = evaluation_consistent(t, s, ts) && evaluation_consistent(s, t, st) &&
                              evaluation_consistent(st, s, sts) &&
                              evaluation_consistent(sc.a, sc.u, au) &&
                              evaluation_consistent(au, sc.a, au * sc.a) &&
                              evaluation_consistent(sc.u, sc.v, sc.u * sc.v) &&
                              evaluation_consistent(sc.v, sc.u, sc.v * sc.u);

  rep.kernel_cokernel_ok = true;
  for (Index n = 2; n <= truncation; ++n) {
    auto row = shift_truncation(n);
    if (row.kernel_dim != 0 || row.cokernel_dim != 1) rep.kernel_cokernel_ok = false;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace unitreg::shift
