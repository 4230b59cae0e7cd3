// SPDX-License-Identifier: MIT
#include "fpmfp/interval.h"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace fpmfp {

Bound operator+(const Bound& a, const Bound& b) {
  if (a.finite() && b.finite()) return Bound(a.value_ + b.value_);
  assert(!(a.kind_ == Bound::Kind::NegInf && b.kind_ == Bound::Kind::PosInf));
  assert(!(a.kind_ == Bound::Kind::PosInf && b.kind_ == Bound::Kind::NegInf));
  return a.finite() ? b : a;
}

Bound operator-(const Bound& a) {
  switch (a.kind_) {
    case Bound::Kind::NegInf: return Bound::pos_inf();
    case Bound::Kind::PosInf: return Bound::neg_inf();
    case Bound::Kind::Finite: return Bound(Int(-a.value_));
  }
  return a;
}

std::string Bound::str() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    case Kind::Finite: return value_.str();
  }
  return "";
}

bool Interval::contains(const Interval& o) const {
  if (o.is_empty()) return true;
  if (is_empty()) return false;
  return lo <= o.lo && o.hi <= hi;
}

Interval Interval::hull(const Interval& o) const {
  if (is_empty()) return o;
  if (o.is_empty()) return *this;
  return {std::min(lo, o.lo), std::max(hi, o.hi)};
}

Interval Interval::intersect(const Interval& o) const {
  Interval r{std::max(lo, o.lo), std::min(hi, o.hi)};
  return r.is_empty() ? empty() : r;
}

Interval Interval::operator+(const Interval& o) const {
  if (is_empty() || o.is_empty()) return empty();
  return {lo + o.lo, hi + o.hi};
}

Interval Interval::operator-() const {
  if (is_empty()) return empty();
  return {-hi, -lo};
}

Interval Interval::operator-(const Interval& o) const { return *this + (-o); }

std::string Interval::str() const {
  if (is_empty()) return "[+inf, -inf]";
  return "[" + lo.str() + ", " + hi.str() + "]";
}

IntervalSet::IntervalSet(Interval i) {
  if (!i.is_empty()) parts_.push_back(std::move(i));
}

IntervalSet IntervalSet::from_relop(RelOp op, const Int& c) {
  switch (op) {
    case RelOp::Lt: return IntervalSet(Interval{Bound::neg_inf(), Bound(Int(c - 1))});
    case RelOp::Le: return IntervalSet(Interval{Bound::neg_inf(), Bound(c)});
    case RelOp::Gt: return IntervalSet(Interval{Bound(Int(c + 1)), Bound::pos_inf()});
    case RelOp::Ge: return IntervalSet(Interval{Bound(c), Bound::pos_inf()});
    case RelOp::Eq: return IntervalSet(Interval::point(c));
    case RelOp::Ne: return IntervalSet(Interval::point(c)).complement();
  }
  return {};
}

void IntervalSet::normalize() {
  std::vector<Interval> in;
  for (auto& p : parts_)
    if (!p.is_empty()) in.push_back(p);
  std::sort(in.begin(), in.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (auto& p : in) {
    if (!out.empty()) {
      Interval& last = out.back();
      bool touches = !last.hi.finite() || !p.lo.finite() || last.hi + Bound(1) >= p.lo;
      if (touches) {
        last.hi = std::max(last.hi, p.hi);
        continue;
      }
    }
    out.push_back(p);
  }
  parts_ = std::move(out);
}

IntervalSet IntervalSet::complement() const {
  IntervalSet r;
  Bound cur = Bound::neg_inf();
  bool open = true;  // cur is an inclusive lower bound still to be covered
  for (const auto& p : parts_) {
    if (open && cur < p.lo) {
      Bound hi = p.lo.finite() ? Bound(Int(p.lo.value() - 1)) : p.lo;
      r.parts_.push_back({cur, hi});
    }
    if (!p.hi.finite()) {
      open = false;
      break;
    }
    cur = Bound(Int(p.hi.value() + 1));
  }
  if (open) r.parts_.push_back({cur, Bound::pos_inf()});
  r.normalize();
  return r;
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  IntervalSet r;
  for (const auto& a : parts_)
    for (const auto& b : o.parts_) r.parts_.push_back(a.intersect(b));
  r.normalize();
  return r;
}

bool IntervalSet::subset_of(const IntervalSet& o) const {
  return intersect(o.complement()).is_empty();
}

bool IntervalSet::contains(const Int& v) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& p) { return p.contains(v); });
}

std::string IntervalSet::str() const {
  if (parts_.empty()) return "{}";
  std::string s;
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += " U ";
    s += parts_[i].str();
  }
  return s;
}

}  // namespace fpmfp
