// SPDX-License-Identifier: MIT
// Integer intervals with infinite bounds, and finite unions of them.
#pragma once

#include <string>
#include <vector>

#include "fpmfp/ir.h"

namespace fpmfp {

class Bound {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  Bound() = default;
  Bound(Int v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT: implicit by design
  Bound(long v) : kind_(Kind::Finite), value_(v) {}             // NOLINT
  Bound(int v) : kind_(Kind::Finite), value_(v) {}              // NOLINT
  static Bound neg_inf() { return Bound(Kind::NegInf); }
  static Bound pos_inf() { return Bound(Kind::PosInf); }

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::Finite; }
  const Int& value() const { return value_; }

  friend bool operator==(const Bound& a, const Bound& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend bool operator<(const Bound& a, const Bound& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
    return a.kind_ == Kind::Finite && a.value_ < b.value_;
  }
  friend bool operator<=(const Bound& a, const Bound& b) { return !(b < a); }
  friend bool operator>(const Bound& a, const Bound& b) { return b < a; }
  friend bool operator>=(const Bound& a, const Bound& b) { return !(a < b); }
  // Finite + infinite keeps the infinity; opposite infinities must not meet.
  friend Bound operator+(const Bound& a, const Bound& b);
  friend Bound operator-(const Bound& a);

  std::string str() const;

 private:
  explicit Bound(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  Int value_;
};

struct Interval {
  Bound lo;
  Bound hi;

  static Interval full() { return {Bound::neg_inf(), Bound::pos_inf()}; }
  static Interval empty() { return {Bound::pos_inf(), Bound::neg_inf()}; }
  static Interval point(const Int& v) { return {v, v}; }

  bool is_empty() const { return hi < lo; }
  bool is_full() const { return lo == Bound::neg_inf() && hi == Bound::pos_inf(); }
  bool contains(const Int& v) const { return lo <= Bound(v) && Bound(v) <= hi; }
  // Every value of o lies in *this.
  bool contains(const Interval& o) const;
  Interval hull(const Interval& o) const;
  Interval intersect(const Interval& o) const;
  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator-() const;

  friend bool operator==(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
    return a.lo == b.lo && a.hi == b.hi;
  }
  std::string str() const;
};

// Finite union of disjoint, non-adjacent, ascending intervals.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(Interval i);
  static IntervalSet all() { return IntervalSet(Interval::full()); }
  // {x | x op c}
  static IntervalSet from_relop(RelOp op, const Int& c);

  bool is_empty() const { return parts_.empty(); }
  IntervalSet complement() const;
  IntervalSet intersect(const IntervalSet& o) const;
  bool subset_of(const IntervalSet& o) const;
  bool contains(const Int& v) const;
  const std::vector<Interval>& parts() const { return parts_; }
  friend bool operator==(const IntervalSet& a, const IntervalSet& b) { return a.parts_ == b.parts_; }
  std::string str() const;

 private:
  void normalize();
  std::vector<Interval> parts_;
};

}  // namespace fpmfp
