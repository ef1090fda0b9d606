#include "scopeforge/core.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>

namespace scopeforge {

const char* provenanceTag(Provenance p) {
  switch (p) {
    case Provenance::Lexicon: return "lex";
    case Provenance::ClosedFormula: return "IV";
    case Provenance::DomainBound: return "V";
    case Provenance::PrecedenceScope: return "VI";
    case Provenance::PluralChoice: return "pl_dis";
    case Provenance::User: return "user";
  }
  return "?";
}

namespace {
// Process-wide counters so ids are never reused, even across analyses.
std::atomic<std::uint32_t> g_next_label{1};
std::atomic<std::uint32_t> g_next_ref{1};
std::atomic<std::uint32_t> g_next_slot{1};
}  // namespace

Analysis::Analysis() {
  top_ = Label{g_next_label.fetch_add(1), "l_top"};
}

Label Analysis::makeLabel(std::string hint) {
  return Label{g_next_label.fetch_add(1), std::move(hint)};
}

Referent Analysis::makeRef(RefSort sort, std::string hint) {
  return Referent{g_next_ref.fetch_add(1), sort, std::move(hint)};
}

SlotId Analysis::makeSlot() { return g_next_slot.fetch_add(1); }

std::vector<Label> collectLabels(const UdrsStore& store) {
  std::map<std::uint32_t, Label> seen;
  auto add = [&](const Label& l) { seen.emplace(l.id, l); };
  add(store.top);
  add(store.ls.lmax);
  add(store.ls.lmin);
  for (const auto& c : store.conds) {
    add(c.label);
    if (auto* imp = std::get_if<CondImplies>(&c.body)) {
      add(imp->restrictor);
      add(imp->scope);
    } else if (auto* neg = std::get_if<CondNeg>(&c.body)) {
      add(neg->inner);
    } else if (auto* dia = std::get_if<CondDiamond>(&c.body)) {
      add(dia->restrictor);
      add(dia->scope);
    } else if (auto* gen = std::get_if<CondGen>(&c.body)) {
      add(gen->restrictor);
      add(gen->scope);
    }
  }
  auto addForm = [&](const SubordForm& f, auto&& self) -> void {
    if (auto* leq = std::get_if<SubordLeq>(&f)) {
      add(leq->lower);
      add(leq->upper);
    } else if (auto* lt = std::get_if<SubordLt>(&f)) {
      add(lt->lower);
      add(lt->upper);
    } else if (auto* eq = std::get_if<SubordEq>(&f)) {
      add(eq->a);
      add(eq->b);
    } else if (auto* cond = std::get_if<SubordCond>(&f)) {
      add(cond->antecedent.lower);
      add(cond->antecedent.upper);
      if (cond->inner_antecedent) {
        add(cond->inner_antecedent->lower);
        add(cond->inner_antecedent->upper);
      }
      self(SubordForm{cond->consequent}, self);
    }
  };
  for (const auto& tc : store.subord) addForm(tc.form, addForm);
  for (const auto& link : store.plural_links) {
    add(link.lmax);
    add(link.lmin);
  }
  for (const auto& slot : store.deferred) {
    if (slot.source_ls) {
      add(slot.source_ls->lmax);
      add(slot.source_ls->lmin);
    }
  }
  std::vector<Label> out;
  out.reserve(seen.size());
  for (auto& [id, l] : seen) out.push_back(l);
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Closure::Closure(const UdrsStore& store) {
  labels_ = collectLabels(store);
  const int n = static_cast<int>(labels_.size());
  std::map<std::uint32_t, int> index;
  for (int i = 0; i < n; ++i) index[labels_[i].id] = i;
  auto idx = [&](const Label& l) { return index.at(l.id); };

  UnionFind uf(n);
  for (const auto& tc : store.subord) {
    if (tc.discarded) continue;
    if (auto* eq = std::get_if<SubordEq>(&tc.form)) uf.merge(idx(eq->a), idx(eq->b));
  }

  // Map each label to a dense class index.
  std::map<int, int> root_to_class;
  class_of_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    auto [it, inserted] = root_to_class.emplace(r, static_cast<int>(root_to_class.size()));
    class_of_[i] = it->second;
  }
  const int m = static_cast<int>(root_to_class.size());
  class_rep_.assign(m, Label{});
  std::vector<bool> rep_set(m, false);
  for (int i = 0; i < n; ++i) {
    int c = class_of_[i];
    if (!rep_set[c] || labels_[i].id < class_rep_[c].id) {
      class_rep_[c] = labels_[i];
      rep_set[c] = true;
    }
  }

  reach_.assign(m, std::vector<int>(m, 0));
  for (int i = 0; i < m; ++i) reach_[i][i] = 1;
  auto addEdge = [&](const Label& lower, const Label& upper, bool strict) {
    int a = class_of_[idx(lower)];
    int b = class_of_[idx(upper)];
    reach_[a][b] = std::max(reach_[a][b], strict ? 2 : 1);
  };

  for (const auto& tc : store.subord) {
    if (tc.discarded) continue;
    if (auto* leq = std::get_if<SubordLeq>(&tc.form)) {
      addEdge(leq->lower, leq->upper, false);
    } else if (auto* lt = std::get_if<SubordLt>(&tc.form)) {
      addEdge(lt->lower, lt->upper, true);
    }
  }
  for (const auto& c : store.conds) {
    if (auto* imp = std::get_if<CondImplies>(&c.body)) {
      addEdge(imp->restrictor, c.label, false);
      addEdge(imp->scope, c.label, false);
    } else if (auto* neg = std::get_if<CondNeg>(&c.body)) {
      addEdge(neg->inner, c.label, false);
    } else if (auto* dia = std::get_if<CondDiamond>(&c.body)) {
      addEdge(dia->restrictor, c.label, false);
      addEdge(dia->scope, c.label, false);
    } else if (auto* gen = std::get_if<CondGen>(&c.body)) {
      addEdge(gen->restrictor, c.label, false);
      addEdge(gen->scope, c.label, false);
    }
  }
  for (int i = 0; i < n; ++i) addEdge(labels_[i], store.top, false);

  // Strictness propagates through any chain containing a strict link.
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i) {
      if (reach_[i][k] == 0) continue;
      for (int j = 0; j < m; ++j) {
        if (reach_[k][j] == 0) continue;
        int via = std::max(reach_[i][k], reach_[k][j]);
        reach_[i][j] = std::max(reach_[i][j], via);
      }
    }
}

int Closure::classIndex(Label l) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i].id == l.id) return class_of_[i];
  fail(ErrorCode::Internal, "label not part of this store: " + std::to_string(l.id));
}

bool Closure::leq(Label a, Label b) const { return reach_[classIndex(a)][classIndex(b)] >= 1; }
bool Closure::lt(Label a, Label b) const { return reach_[classIndex(a)][classIndex(b)] == 2; }
bool Closure::same(Label a, Label b) const { return classIndex(a) == classIndex(b); }

bool Closure::consistent() const {
  for (std::size_t i = 0; i < reach_.size(); ++i)
    if (reach_[i][i] == 2) return false;
  return true;
}

Label Closure::classRep(Label l) const { return class_rep_[classIndex(l)]; }

std::vector<Label> Closure::classMembers(Label l) const {
  std::vector<Label> out;
  int c = classIndex(l);
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (class_of_[i] == c) out.push_back(labels_[i]);
  return out;
}

std::vector<Label> Closure::allLabels() const { return labels_; }

std::vector<Closure::Edge> Closure::relation() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (std::size_t j = 0; j < labels_.size(); ++j) {
      int r = reach_[class_of_[i]][class_of_[j]];
      if (r >= 1) out.push_back(Edge{labels_[i], labels_[j], r == 2});
    }
  return out;
}

UdrsStore emptyStore(const Analysis& analysis) {
  UdrsStore s;
  s.top = analysis.top();
  s.ls = LsPair{analysis.top(), analysis.top()};
  return s;
}

void checkConsistent(const UdrsStore& store) {
  Closure cl(store);
  if (!cl.consistent())
    fail(ErrorCode::InconsistentStore, "subordination constraints form a strict cycle");
}

UdrsStore merge(const UdrsStore& a, const UdrsStore& b, LsFrom ls_from) {
  if (a.top != b.top) fail(ErrorCode::TopMismatch, "stores built over different top labels");
  UdrsStore out;
  out.top = a.top;
  out.ls = ls_from == LsFrom::First ? a.ls : b.ls;
  out.conds = a.conds;
  out.conds.insert(out.conds.end(), b.conds.begin(), b.conds.end());
  out.subord = a.subord;
  out.subord.insert(out.subord.end(), b.subord.begin(), b.subord.end());
  out.deferred = a.deferred;
  out.deferred.insert(out.deferred.end(), b.deferred.begin(), b.deferred.end());
  out.plural_links = a.plural_links;
  out.plural_links.insert(out.plural_links.end(), b.plural_links.begin(), b.plural_links.end());
  checkConsistent(out);
  return out;
}

UdrsStore addConstraint(const UdrsStore& store, SubordForm form, Provenance prov) {
  UdrsStore out = store;
  out.subord.push_back(TaggedConstraint{std::move(form), prov, false});
  checkConsistent(out);
  return out;
}

std::optional<Condition> structuralConditionAt(const UdrsStore& store, Label l) {
  Closure cl(store);
  std::optional<Condition> found;
  for (const auto& c : store.conds) {
    if (!cl.same(c.label, l)) continue;
    bool structural = std::holds_alternative<CondImplies>(c.body) ||
                      std::holds_alternative<CondNeg>(c.body) ||
                      std::holds_alternative<CondDiamond>(c.body) ||
                      std::holds_alternative<CondGen>(c.body);
    if (!structural) continue;
    if (found)
      fail(ErrorCode::InconsistentStore, "two complex conditions share one label class");
    found = c;
  }
  return found;
}

namespace {

// The plural link whose upper label sits in l's class, if any.
std::optional<PluralLink> pluralLinkAt(const UdrsStore& store, const Closure& cl, Label l) {
  for (const auto& link : store.plural_links)
    if (cl.same(link.lmax, l)) return link;
  return std::nullopt;
}

bool groupIntroAt(const UdrsStore& store, const Closure& cl, Label l) {
  for (const auto& c : store.conds) {
    if (!cl.same(c.label, l)) continue;
    if (auto* intro = std::get_if<CondIntro>(&c.body))
      if (intro->ref.sort == RefSort::Group) return true;
  }
  return false;
}

}  // namespace

std::optional<Label> scopeOf(const UdrsStore& store, Label l) {
  Closure cl(store);
  // Complex condition at l: negation maps to its inner box, a duplex to its
  // scope box.
  for (const auto& c : store.conds) {
    if (!cl.same(c.label, l)) continue;
    if (auto* neg = std::get_if<CondNeg>(&c.body)) return neg->inner;
    if (auto* imp = std::get_if<CondImplies>(&c.body)) return imp->scope;
    if (auto* dia = std::get_if<CondDiamond>(&c.body)) return dia->scope;
    if (auto* gen = std::get_if<CondGen>(&c.body)) return gen->scope;
  }
  if (groupIntroAt(store, cl, l)) {
    auto link = pluralLinkAt(store, cl, l);
    if (link && !cl.same(link->lmax, link->lmin)) return std::nullopt;
    if (!link) return std::nullopt;  // group intro with no resolved pattern
  }
  return cl.classRep(l);
}

std::optional<Label> resOf(const UdrsStore& store, Label l) {
  Closure cl(store);
  for (const auto& c : store.conds) {
    if (!cl.same(c.label, l)) continue;
    if (auto* neg = std::get_if<CondNeg>(&c.body)) return neg->inner;
    if (auto* imp = std::get_if<CondImplies>(&c.body)) return imp->restrictor;
    if (auto* dia = std::get_if<CondDiamond>(&c.body)) return dia->restrictor;
    if (auto* gen = std::get_if<CondGen>(&c.body)) return gen->restrictor;
  }
  if (groupIntroAt(store, cl, l)) {
    auto link = pluralLinkAt(store, cl, l);
    if (link && !cl.same(link->lmax, link->lmin)) return std::nullopt;
    if (!link) return std::nullopt;
  }
  return cl.classRep(l);
}

ScopeClass classify(const UdrsStore& store, Label l) {
  Closure cl(store);
  auto s = scopeOf(store, l);
  auto r = resOf(store, l);
  if (!s || !r) return ScopeClass::PotentiallyScopeBearing;
  if (!cl.same(*s, l)) return ScopeClass::ScopeBearing;
  if (cl.same(*s, l) && cl.same(*r, l)) return ScopeClass::NotScopeBearing;
  return ScopeClass::PotentiallyScopeBearing;
}

std::optional<Referent> drefOf(const UdrsStore& store, Label l) {
  Closure cl(store);
  std::optional<Referent> found;
  for (const auto& c : store.conds) {
    if (!cl.same(c.label, l)) continue;
    if (auto* intro = std::get_if<CondIntro>(&c.body)) {
      if (found && found->id != intro->ref.id)
        fail(ErrorCode::DuplicateIntro,
             "two distinct referents introduced at one label class");
      found = intro->ref;
    }
  }
  return found;
}

ResolveResult resolveArgumentReferent(const UdrsStore& store, const LsPair& source_ls) {
  Closure cl(store);
  ResolveResult out;
  const Label lmax = source_ls.lmax;
  const Label lmin = source_ls.lmin;

  if (cl.same(lmax, lmin)) {
    // Identified labels: a singular NP or a collectively resolved plural.
    auto ref = drefOf(store, lmax);
    if (!ref)
      fail(ErrorCode::NoMatchingClause, "identified labels but no referent introduced");
    out.referent = *ref;
    out.trigger = SubordEq{lmax, lmin};
    return out;
  }
  if (cl.lt(lmin, lmax)) {
    // Strict pattern: quantifier or distributively resolved plural; the
    // argument referent is the one bound in the restrictor.
    auto r = resOf(store, lmax);
    if (!r)
      fail(ErrorCode::NoMatchingClause,
           "strict max/min pattern without a restrictor box");
    auto ref = drefOf(store, *r);
    if (!ref)
      fail(ErrorCode::NoMatchingClause, "restrictor introduces no referent");
    out.referent = *ref;
    out.trigger = SubordLt{lmin, lmax};
    return out;
  }
  if (cl.leq(lmin, lmax)) {
    out.pending = true;
    return out;
  }
  fail(ErrorCode::NoMatchingClause,
       "argument labels carry neither identity, strict, nor weak subordination");
}

const DeferredSlot* findSlot(const UdrsStore& store, SlotId slot) {
  for (const auto& s : store.deferred)
    if (s.id == slot) return &s;
  return nullptr;
}

UdrsStore resolveSlot(const UdrsStore& store, SlotId slot, const ResolveResult& res) {
  if (res.pending) return store;
  UdrsStore out = store;
  for (auto& s : out.deferred) {
    if (s.id != slot) continue;
    if (s.resolved) {
      if (s.resolved->id != res.referent->id)
        fail(ErrorCode::Internal, "slot re-resolved to a different referent");
      return out;
    }
    s.resolved = res.referent;
    s.trigger = res.trigger;
    return out;
  }
  fail(ErrorCode::Internal, "no such slot: " + std::to_string(slot));
}

bool isStructuralConstraint(const UdrsStore& store, const SubordForm& form) {
  Label lower, upper;
  if (auto* leq = std::get_if<SubordLeq>(&form)) {
    lower = leq->lower;
    upper = leq->upper;
  } else if (auto* lt = std::get_if<SubordLt>(&form)) {
    lower = lt->lower;
    upper = lt->upper;
  } else {
    return false;
  }
  Closure cl(store);
  for (const auto& c : store.conds) {
    if (!cl.same(c.label, upper)) continue;
    auto isChild = [&](Label child) { return cl.same(child, lower); };
    if (auto* imp = std::get_if<CondImplies>(&c.body)) {
      if (isChild(imp->restrictor) || isChild(imp->scope)) return true;
    } else if (auto* neg = std::get_if<CondNeg>(&c.body)) {
      if (isChild(neg->inner)) return true;
    } else if (auto* dia = std::get_if<CondDiamond>(&c.body)) {
      if (isChild(dia->restrictor) || isChild(dia->scope)) return true;
    } else if (auto* gen = std::get_if<CondGen>(&c.body)) {
      if (isChild(gen->restrictor) || isChild(gen->scope)) return true;
    }
  }
  return false;
}

}  // namespace scopeforge
