// SPDX-License-Identifier: MIT
// Lifted lattice: sparse maps from MIPS sets to base values. An absent key is
// top, so no stored value is ever top.
#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "fpmfp/mips.h"

namespace fpmfp {

template <class V>
using LiftedValue = std::map<MipsSet, V>;

struct OptConfig {
  bool opt1 = true;  // merge end-edge-equivalent keys whose MIPS satisfy P
  bool opt2 = true;  // merge equal values via the contains-suffix-of relation
  bool opt3 = true;  // drop top pairs; inherent to the sparse map

  static OptConfig all() { return {}; }
  static OptConfig none() { return {false, false, false}; }
  friend bool operator==(const OptConfig& a, const OptConfig& b) {
    return a.opt1 == b.opt1 && a.opt2 == b.opt2 && a.opt3 == b.opt3;
  }
};

struct PairStats {
  std::vector<size_t> max_pairs;  // per edge, over all evaluations
  size_t evaluations = 0;
  size_t total_pairs = 0;

  void record(int edge, size_t pairs) {
    if (static_cast<size_t>(edge) >= max_pairs.size()) max_pairs.resize(edge + 1, 0);
    max_pairs[edge] = std::max(max_pairs[edge], pairs);
    ++evaluations;
    total_pairs += pairs;
  }
  double average() const { return evaluations ? double(total_pairs) / double(evaluations) : 0.0; }
};

template <class A>
class Lifted {
 public:
  using Base = typename A::Value;
  using Value = LiftedValue<Base>;
  // Opt1 and Opt2 test value equality, which is not monotone.
  static constexpr bool kCheckCycles = true;

  Lifted(const A& a, const MipsUniverse& u, OptConfig opts, PairStats* stats)
      : a_(a), u_(u), opts_(opts), stats_(stats) {}

  const A& base() const { return a_; }
  Value top() const { return {}; }

  Value lift(const Base& d) const {
    Value v;
    if (!(d == a_.top())) v.emplace(MipsSet{}, d);
    return v;
  }

  Base fold(const Value& v) const {
    Base r = a_.top();
    for (const auto& [m, d] : v) r = a_.meet(r, d);
    return r;
  }

  Value meet(const Value& x, const Value& y) const {
    Value r = x;
    for (const auto& [m, d] : y) accumulate(r, m, d);
    return r;
  }

  // Keywise order with absent keys read as top.
  bool leq(const Value& x, const Value& y) const {
    for (const auto& [m, d] : y) {
      auto it = x.find(m);
      if (it == x.end() || !a_.leq(it->second, d)) return false;
    }
    return true;
  }

  Value transfer(int node, const Value& v) const {
    Value r;
    for (const auto& [m, d] : v) {
      Base t = a_.transfer(node, d);
      if (!(t == a_.top())) r.emplace(m, std::move(t));
    }
    return r;
  }

  Value edge(int e, const Value& v) const {
    Value r;
    for (const auto& [m, d] : v) {
      Base g = a_.edge(e, d);
      if (g == a_.top()) continue;
      MipsSet next = u_.ext(e, m);
      if (u_.endof(next, e)) continue;  // blocked
      accumulate(r, next, g);
    }
    if (opts_.opt1) opt1(r);
    if (opts_.opt2) opt2(r, e);
    if (stats_) stats_->record(e, r.size());
    return r;
  }

  Value widen(const Value& prev, const Value& next) const {
    Value r = next;
    for (auto& [m, d] : r) {
      auto it = prev.find(m);
      if (it != prev.end()) d = a_.widen(it->second, d);
    }
    return r;
  }

  // Per-node widening limits: every pair stays below limits[node].
  void set_limits(const std::vector<Base>* limits) { limits_ = limits; }

  Value widen_at(int node, const Value& prev, const Value& next) const {
    if (!limits_) return widen(prev, next);
    const Base& lim = (*limits_)[node];
    Value r = next;
    for (auto& [m, d] : r) {
      auto it = prev.find(m);
      if (it != prev.end()) d = a_.widen(it->second, d, &lim);
    }
    return r;
  }

  void opt1(Value& v) const {
    std::map<std::vector<int>, std::vector<MipsSet>> groups;
    for (const auto& [m, d] : v)
      if (!m.empty() && u_.all_satisfy_p(m)) groups[u_.end_edges(m)].push_back(m);
    for (const auto& [ends, keys] : groups) {
      if (keys.size() < 2) continue;
      MipsSet merged;
      Base d = a_.top();
      for (const auto& k : keys) {
        MipsSet tmp;
        std::set_union(merged.begin(), merged.end(), k.begin(), k.end(), std::back_inserter(tmp));
        merged.swap(tmp);
        d = a_.meet(d, v.at(k));
        v.erase(k);
      }
      accumulate(v, merged, d);
    }
  }

  void opt2(Value& v, int e) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (auto i = v.begin(); i != v.end() && !changed; ++i) {
        for (auto j = std::next(i); j != v.end(); ++j) {
          if (!(i->second == j->second)) continue;
          MipsSet m3 = cso_merge(i->first, j->first, e);
          Base d = i->second;
          MipsSet k1 = i->first, k2 = j->first;
          v.erase(k1);
          v.erase(k2);
          accumulate(v, m3, d);
          changed = true;
          break;
        }
      }
    }
  }

 private:
  void accumulate(Value& v, const MipsSet& m, const Base& d) const {
    auto it = v.find(m);
    if (it == v.end())
      v.emplace(m, d);
    else
      it->second = a_.meet(it->second, d);
  }

  // MIPS of either key that contain the suffix of some MIPS in the other key.
  MipsSet cso_merge(const MipsSet& m1, const MipsSet& m2, int e) const {
    MipsSet out;
    auto keep = [&](const MipsSet& from, const MipsSet& other) {
      for (int mu : from) {
        MipsSet c = u_.cso(e, mu);
        bool hit = std::any_of(other.begin(), other.end(),
                               [&](int o) { return std::binary_search(c.begin(), c.end(), o); });
        if (hit) out.push_back(mu);
      }
    };
    keep(m1, m2);
    keep(m2, m1);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  const A& a_;
  const MipsUniverse& u_;
  OptConfig opts_;
  PairStats* stats_;
  const std::vector<Base>* limits_ = nullptr;
};

}  // namespace fpmfp
