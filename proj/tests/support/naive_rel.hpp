#ifndef SCOPEFORGE_TESTS_NAIVE_REL_HPP
#define SCOPEFORGE_TESTS_NAIVE_REL_HPP

// Test-only oracle: recomputes the subordination relation of a store by
// plain fixpoint saturation over (lower, upper, strict) triples. Kept
// independent of the Closure implementation on purpose.

#include <map>
#include <set>
#include <tuple>
#include <variant>
#include <vector>

#include "scopeforge/core.hpp"

namespace scopeforge::testsupport {

struct NaiveRel {
  // (lower id, upper id) -> strict?
  std::map<std::pair<std::uint32_t, std::uint32_t>, bool> pairs;

  bool leq(Label a, Label b) const { return pairs.count({a.id, b.id}) > 0; }
  bool lt(Label a, Label b) const {
    auto it = pairs.find({a.id, b.id});
    return it != pairs.end() && it->second;
  }
  bool consistent() const {
    for (const auto& [key, strict] : pairs)
      if (key.first == key.second && strict) return false;
    return true;
  }
};

inline NaiveRel naiveRelation(const UdrsStore& store) {
  std::vector<Label> labels = collectLabels(store);

  // Identity constraints first, by repeated substitution into a class map.
  std::map<std::uint32_t, std::uint32_t> cls;
  for (const auto& l : labels) cls[l.id] = l.id;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& tc : store.subord) {
      if (tc.discarded) continue;
      if (auto* eq = std::get_if<SubordEq>(&tc.form)) {
        std::uint32_t a = cls[eq->a.id], b = cls[eq->b.id];
        if (a != b) {
          std::uint32_t lo = a < b ? a : b, hi = a < b ? b : a;
          for (auto& [k, v] : cls)
            if (v == hi) v = lo;
          changed = true;
        }
      }
    }
  }

  std::set<std::tuple<std::uint32_t, std::uint32_t, bool>> facts;
  auto add = [&](Label lo, Label up, bool strict) {
    facts.insert({cls[lo.id], cls[up.id], strict});
  };
  for (const auto& l : labels) {
    add(l, l, false);
    add(l, store.top, false);
  }
  for (const auto& tc : store.subord) {
    if (tc.discarded) continue;
    if (auto* leq = std::get_if<SubordLeq>(&tc.form)) add(leq->lower, leq->upper, false);
    if (auto* lt = std::get_if<SubordLt>(&tc.form)) add(lt->lower, lt->upper, true);
  }
  for (const auto& c : store.conds) {
    if (auto* imp = std::get_if<CondImplies>(&c.body)) {
      add(imp->restrictor, c.label, false);
      add(imp->scope, c.label, false);
    } else if (auto* neg = std::get_if<CondNeg>(&c.body)) {
      add(neg->inner, c.label, false);
    } else if (auto* dia = std::get_if<CondDiamond>(&c.body)) {
      add(dia->restrictor, c.label, false);
      add(dia->scope, c.label, false);
    } else if (auto* gen = std::get_if<CondGen>(&c.body)) {
      add(gen->restrictor, c.label, false);
      add(gen->scope, c.label, false);
    }
  }

  changed = true;
  while (changed) {
    changed = false;
    std::vector<std::tuple<std::uint32_t, std::uint32_t, bool>> snapshot(facts.begin(),
                                                                         facts.end());
    for (const auto& [a, b, s1] : snapshot)
      for (const auto& [c, d, s2] : snapshot) {
        if (b != c) continue;
        auto f = std::make_tuple(a, d, s1 || s2);
        if (!facts.count(f)) {
          facts.insert(f);
          changed = true;
        }
      }
  }

  NaiveRel rel;
  for (const auto& [a, b, strict] : facts) {
    auto key = std::make_pair(a, b);
    auto it = rel.pairs.find(key);
    if (it == rel.pairs.end())
      rel.pairs[key] = strict;
    else
      it->second = it->second || strict;
  }
  // Re-expand classes so callers may query any original label.
  NaiveRel out;
  for (const auto& la : labels)
    for (const auto& lb : labels) {
      auto it = rel.pairs.find({cls[la.id], cls[lb.id]});
      if (it != rel.pairs.end()) out.pairs[{la.id, lb.id}] = it->second;
    }
  return out;
}

}  // namespace scopeforge::testsupport

#endif
