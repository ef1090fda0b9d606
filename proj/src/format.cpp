#include "scopeforge/format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace scopeforge {

namespace {

// Stable across platforms, unlike std::hash.
std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

struct CanonCtx {
  const UdrsStore* store = nullptr;
  Closure cl;
  std::vector<Label> class_reps;                  // canonical order
  std::map<std::uint32_t, int> class_index;       // rep id -> canonical index
  std::map<std::uint32_t, std::string> ref_names; // referent id -> canonical name
  std::map<SlotId, std::string> slot_names;

  explicit CanonCtx(const UdrsStore& s) : store(&s), cl(s) { build(); }

  int indexOf(Label l) const { return class_index.at(cl.classRep(l).id); }

  std::string nameOf(Label l) const {
    int i = indexOf(l);
    if (i == 0) return "l_top";
    return "l_" + std::to_string(i);
  }

  std::string nameOfRef(const Referent& r) const { return ref_names.at(r.id); }

  std::string nameOfArg(const AtomArg& arg) const {
    if (auto* r = std::get_if<Referent>(&arg)) return ref_names.at(r->id);
    const auto& slot = std::get<SlotRef>(arg);
    if (const DeferredSlot* d = findSlot(*store, slot.id))
      if (d->resolved) return ref_names.at(d->resolved->id);
    return slot_names.at(slot.id);
  }

private:
  void build();
};

std::string argSortMark(const UdrsStore& store, const AtomArg& arg) {
  if (auto* r = std::get_if<Referent>(&arg))
    return r->sort == RefSort::Group ? "g" : "i";
  const auto& slot = std::get<SlotRef>(arg);
  if (const DeferredSlot* d = findSlot(store, slot.id))
    if (d->resolved) return d->resolved->sort == RefSort::Group ? "g" : "i";
  return "?";
}

bool printableConstraint(const UdrsStore& store, const Closure& cl, const TaggedConstraint& tc) {
  if (tc.discarded) return false;
  if (std::holds_alternative<SubordEq>(tc.form)) return false;
  if (auto* leq = std::get_if<SubordLeq>(&tc.form))
    if (cl.same(leq->lower, leq->upper)) return false;
  if (auto* lt = std::get_if<SubordLt>(&tc.form))
    if (cl.same(lt->lower, lt->upper)) return false;
  if (isStructuralConstraint(store, tc.form)) return false;
  return true;
}

std::string condSkeleton(const UdrsStore& store, const Condition& c) {
  std::ostringstream os;
  if (auto* atom = std::get_if<CondAtom>(&c.body)) {
    os << "atom:" << atom->rel << "/" << atom->args.size() << ":";
    for (const auto& a : atom->args) os << argSortMark(store, a);
  } else if (auto* intro = std::get_if<CondIntro>(&c.body)) {
    os << "intro:" << (intro->ref.sort == RefSort::Group ? "g" : "i");
  } else if (std::holds_alternative<CondImplies>(c.body)) {
    os << "imp";
  } else if (std::holds_alternative<CondNeg>(c.body)) {
    os << "neg";
  } else if (std::holds_alternative<CondDiamond>(c.body)) {
    os << "dia";
  } else if (std::holds_alternative<CondGen>(c.body)) {
    os << "gen";
  } else if (std::holds_alternative<CondMember>(c.body)) {
    os << "mem";
  }
  return os.str();
}

void CanonCtx::build() {
  const UdrsStore& s = *store;
  // Dense class list, top excluded from the sortable set (it is always #0).
  std::vector<Label> reps;
  for (const auto& l : cl.allLabels()) {
    Label rep = cl.classRep(l);
    if (std::none_of(reps.begin(), reps.end(),
                     [&](const Label& x) { return x.id == rep.id; }))
      reps.push_back(rep);
  }
  std::sort(reps.begin(), reps.end());
  const int n = static_cast<int>(reps.size());
  auto repIdx = [&](Label l) {
    Label rep = cl.classRep(l);
    for (int i = 0; i < n; ++i)
      if (reps[i].id == rep.id) return i;
    return -1;
  };

  // Initial signatures: anchored condition skeletons plus a top marker.
  std::vector<std::string> sig(n);
  {
    std::vector<std::vector<std::string>> parts(n);
    for (const auto& c : s.conds) parts[repIdx(c.label)].push_back(condSkeleton(s, c));
    for (int i = 0; i < n; ++i) {
      std::sort(parts[i].begin(), parts[i].end());
      std::string base = repIdx(s.top) == i ? "TOP;" : ";";
      for (auto& p : parts[i]) base += p + ";";
      sig[i] = fnv1a(base);
    }
  }

  // Referent declaration/use sites feed the refinement so that coreference
  // distinguishes otherwise identical boxes.
  struct RefSite {
    int cls;
    std::string role;
  };
  std::map<std::uint32_t, std::vector<RefSite>> ref_sites;
  auto noteArg = [&](const AtomArg& a, int cls, const std::string& role) {
    if (auto* r = std::get_if<Referent>(&a)) {
      ref_sites[r->id].push_back({cls, role});
    } else {
      const auto& slot = std::get<SlotRef>(a);
      if (const DeferredSlot* d = findSlot(s, slot.id))
        if (d->resolved) ref_sites[d->resolved->id].push_back({cls, role});
    }
  };
  for (const auto& c : s.conds) {
    int cls = repIdx(c.label);
    if (auto* atom = std::get_if<CondAtom>(&c.body)) {
      for (std::size_t k = 0; k < atom->args.size(); ++k)
        noteArg(atom->args[k], cls, "a:" + atom->rel + ":" + std::to_string(k));
    } else if (auto* intro = std::get_if<CondIntro>(&c.body)) {
      ref_sites[intro->ref.id].push_back({cls, "decl"});
    } else if (auto* mem = std::get_if<CondMember>(&c.body)) {
      ref_sites[mem->element.id].push_back({cls, "m:elem"});
      ref_sites[mem->group.id].push_back({cls, "m:grp"});
    }
  }

  for (int round = 0; round < n + 2; ++round) {
    std::vector<std::vector<std::string>> edges(n);
    auto link = [&](Label from, Label to, const std::string& tagF, const std::string& tagT) {
      int f = repIdx(from), t = repIdx(to);
      edges[f].push_back(tagF + sig[t]);
      edges[t].push_back(tagT + sig[f]);
    };
    for (const auto& c : s.conds) {
      if (auto* imp = std::get_if<CondImplies>(&c.body)) {
        link(c.label, imp->restrictor, "Ir>", "Ir<");
        link(c.label, imp->scope, "Is>", "Is<");
      } else if (auto* neg = std::get_if<CondNeg>(&c.body)) {
        link(c.label, neg->inner, "N>", "N<");
      } else if (auto* dia = std::get_if<CondDiamond>(&c.body)) {
        link(c.label, dia->restrictor, "Dr>", "Dr<");
        link(c.label, dia->scope, "Ds>", "Ds<");
      } else if (auto* gen = std::get_if<CondGen>(&c.body)) {
        link(c.label, gen->restrictor, "Gr>", "Gr<");
        link(c.label, gen->scope, "Gs>", "Gs<");
      }
    }
    for (const auto& tc : s.subord) {
      if (!printableConstraint(s, cl, tc)) continue;
      if (auto* leq = std::get_if<SubordLeq>(&tc.form)) {
        link(leq->lower, leq->upper, "L^", "Lv");
      } else if (auto* lt = std::get_if<SubordLt>(&tc.form)) {
        link(lt->lower, lt->upper, "S^", "Sv");
      } else if (auto* cond = std::get_if<SubordCond>(&tc.form)) {
        link(cond->antecedent.lower, cond->antecedent.upper, "CA^", "CAv");
        if (cond->inner_antecedent)
          link(cond->inner_antecedent->lower, cond->inner_antecedent->upper, "CI^", "CIv");
        link(cond->consequent.lower, cond->consequent.upper, "CC^", "CCv");
      }
    }
    for (auto& [rid, sites] : ref_sites) {
      for (const auto& a : sites)
        for (const auto& b : sites)
          if (&a != &b) edges[a.cls].push_back("R:" + a.role + ">" + b.role + ":" + sig[b.cls]);
    }
    std::vector<std::string> next(n);
    for (int i = 0; i < n; ++i) {
      std::sort(edges[i].begin(), edges[i].end());
      std::string acc = sig[i];
      for (auto& e : edges[i]) acc += "|" + e;
      next[i] = fnv1a(acc);
    }
    sig = std::move(next);
  }

  // Canonical order: top first, everything else by refined signature.
  std::vector<int> order;
  for (int i = 0; i < n; ++i) order.push_back(i);
  int top_idx = repIdx(s.top);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (a == top_idx || b == top_idx) return a == top_idx && b != top_idx;
    if (sig[a] != sig[b]) return sig[a] < sig[b];
    return reps[a].id < reps[b].id;
  });
  class_reps.clear();
  for (int i = 0; i < n; ++i) {
    class_reps.push_back(reps[order[i]]);
    class_index[reps[order[i]].id] = i;
  }

  // Referent names by structural position of their occurrence sites.
  struct RefKey {
    std::string key;
    std::uint32_t id;
    RefSort sort;
  };
  std::vector<RefKey> ref_keys;
  std::map<std::uint32_t, RefSort> ref_sorts;
  for (const auto& c : s.conds) {
    if (auto* intro = std::get_if<CondIntro>(&c.body)) ref_sorts[intro->ref.id] = intro->ref.sort;
    if (auto* atom = std::get_if<CondAtom>(&c.body))
      for (const auto& a : atom->args)
        if (auto* r = std::get_if<Referent>(&a)) ref_sorts[r->id] = r->sort;
    if (auto* mem = std::get_if<CondMember>(&c.body)) {
      ref_sorts[mem->element.id] = mem->element.sort;
      ref_sorts[mem->group.id] = mem->group.sort;
    }
  }
  for (const auto& d : s.deferred)
    if (d.resolved) ref_sorts[d.resolved->id] = d.resolved->sort;
  for (auto& [rid, sort] : ref_sorts) {
    std::vector<std::string> occ;
    auto it = ref_sites.find(rid);
    if (it != ref_sites.end())
      for (const auto& site : it->second)
        occ.push_back(std::to_string(class_index.at(reps[site.cls].id)) + ":" + site.role);
    std::sort(occ.begin(), occ.end());
    std::string key;
    for (auto& o : occ) key += o + ";";
    ref_keys.push_back({key, rid, sort});
  }
  std::sort(ref_keys.begin(), ref_keys.end(), [](const RefKey& a, const RefKey& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.id < b.id;
  });
  int xi = 0, gi = 0;
  for (const auto& rk : ref_keys) {
    if (rk.sort == RefSort::Group)
      ref_names[rk.id] = "X" + std::to_string(++gi);
    else
      ref_names[rk.id] = "x" + std::to_string(++xi);
  }

  // Unresolved slots, ordered by the anchor of the atom that carries them.
  std::vector<std::pair<std::string, SlotId>> slot_keys;
  for (const auto& c : s.conds) {
    if (auto* atom = std::get_if<CondAtom>(&c.body)) {
      for (std::size_t k = 0; k < atom->args.size(); ++k) {
        if (auto* slot = std::get_if<SlotRef>(&atom->args[k])) {
          const DeferredSlot* d = findSlot(s, slot->id);
          if (d && d->resolved) continue;
          slot_keys.emplace_back(std::to_string(class_index.at(cl.classRep(c.label).id)) + ":" +
                                     atom->rel + ":" + std::to_string(k),
                                 slot->id);
        }
      }
    }
  }
  std::sort(slot_keys.begin(), slot_keys.end());
  int si = 0;
  for (auto& [key, id] : slot_keys)
    if (!slot_names.count(id)) slot_names[id] = "?" + std::to_string(++si);
}

std::string formatCondLine(const CanonCtx& ctx, const Condition& c) {
  std::ostringstream os;
  os << ctx.nameOf(c.label) << " : ";
  if (auto* atom = std::get_if<CondAtom>(&c.body)) {
    os << atom->rel << "(";
    for (std::size_t i = 0; i < atom->args.size(); ++i) {
      if (i) os << ",";
      os << ctx.nameOfArg(atom->args[i]);
    }
    os << ")";
  } else if (auto* intro = std::get_if<CondIntro>(&c.body)) {
    os << "dref " << ctx.nameOfRef(intro->ref);
  } else if (auto* imp = std::get_if<CondImplies>(&c.body)) {
    os << ctx.nameOf(imp->restrictor) << " => " << ctx.nameOf(imp->scope);
  } else if (auto* neg = std::get_if<CondNeg>(&c.body)) {
    os << "not " << ctx.nameOf(neg->inner);
  } else if (auto* dia = std::get_if<CondDiamond>(&c.body)) {
    os << "dia " << ctx.nameOf(dia->restrictor) << " " << ctx.nameOf(dia->scope);
  } else if (auto* gen = std::get_if<CondGen>(&c.body)) {
    os << "gen " << ctx.nameOf(gen->restrictor) << " " << ctx.nameOf(gen->scope);
  } else if (auto* mem = std::get_if<CondMember>(&c.body)) {
    os << ctx.nameOfRef(mem->element) << " in " << ctx.nameOfRef(mem->group);
  }
  return os.str();
}

std::string formatForm(const CanonCtx& ctx, const SubordForm& form) {
  std::ostringstream os;
  if (auto* leq = std::get_if<SubordLeq>(&form)) {
    os << ctx.nameOf(leq->lower) << " <= " << ctx.nameOf(leq->upper);
  } else if (auto* lt = std::get_if<SubordLt>(&form)) {
    os << ctx.nameOf(lt->lower) << " < " << ctx.nameOf(lt->upper);
  } else if (auto* eq = std::get_if<SubordEq>(&form)) {
    os << ctx.nameOf(eq->a) << " = " << ctx.nameOf(eq->b);
  } else if (auto* cond = std::get_if<SubordCond>(&form)) {
    os << "(" << ctx.nameOf(cond->antecedent.lower) << " < "
       << ctx.nameOf(cond->antecedent.upper) << ") -> (";
    if (cond->inner_antecedent) {
      os << "(" << ctx.nameOf(cond->inner_antecedent->lower) << " < "
         << ctx.nameOf(cond->inner_antecedent->upper) << ") -> ("
         << ctx.nameOf(cond->consequent.lower) << " <= " << ctx.nameOf(cond->consequent.upper)
         << ")";
    } else {
      os << ctx.nameOf(cond->consequent.lower) << " <= " << ctx.nameOf(cond->consequent.upper);
    }
    os << ")";
  }
  return os.str();
}



}  // namespace

std::string printUdrs(const UdrsStore& store) {
  CanonCtx ctx(store);
  std::set<std::string> cond_lines;
  for (const auto& c : store.conds) cond_lines.insert(formatCondLine(ctx, c));
  std::set<std::string> sub_lines;
  for (const auto& tc : store.subord)
    if (printableConstraint(store, ctx.cl, tc)) sub_lines.insert(formatForm(ctx, tc.form));
  std::ostringstream os;
  for (const auto& l : cond_lines) os << l << "\n";
  for (const auto& l : sub_lines) os << l << "\n";
  return os.str();
}

std::string printAudit(const UdrsStore& store) {
  CanonCtx ctx(store);
  std::vector<std::string> lines;
  for (const auto& tc : store.subord) {
    std::string status = tc.discarded ? " [discarded]" : "";
    lines.push_back(std::string(provenanceTag(tc.prov)) + "\t" + formatForm(ctx, tc.form) +
                    status);
  }
  std::sort(lines.begin(), lines.end());
  std::ostringstream os;
  for (const auto& l : lines) os << l << "\n";
  return os.str();
}

std::string printDot(const UdrsStore& store, const std::string& graph_name) {
  CanonCtx ctx(store);
  std::ostringstream os;
  os << "subgraph cluster_" << graph_name << " {\n";
  os << "  label=\"" << graph_name << "\";\n";
  std::set<std::string> nodes, edges;
  for (const auto& rep : ctx.class_reps)
    nodes.insert("  \"" + graph_name + "_" + ctx.nameOf(rep) + "\" [label=\"" +
                 ctx.nameOf(rep) + "\"];");
  auto edge = [&](Label lo, Label up, const std::string& style) {
    edges.insert("  \"" + graph_name + "_" + ctx.nameOf(lo) + "\" -> \"" + graph_name + "_" +
                 ctx.nameOf(up) + "\" [" + style + "];");
  };
  for (const auto& tc : store.subord) {
    if (tc.discarded) continue;
    if (auto* leq = std::get_if<SubordLeq>(&tc.form)) {
      if (!ctx.cl.same(leq->lower, leq->upper)) edge(leq->lower, leq->upper, "style=dashed");
    } else if (auto* lt = std::get_if<SubordLt>(&tc.form)) {
      if (!ctx.cl.same(lt->lower, lt->upper)) edge(lt->lower, lt->upper, "style=solid");
    } else if (auto* cond = std::get_if<SubordCond>(&tc.form)) {
      edge(cond->consequent.lower, cond->consequent.upper,
           "style=dotted,label=\"if " + ctx.nameOf(cond->antecedent.lower) + "<" +
               ctx.nameOf(cond->antecedent.upper) + "\"");
    }
  }
  for (const auto& c : store.conds) {
    auto structuralEdge = [&](Label child) { edge(child, c.label, "style=bold"); };
    if (auto* imp = std::get_if<CondImplies>(&c.body)) {
      structuralEdge(imp->restrictor);
      structuralEdge(imp->scope);
    } else if (auto* neg = std::get_if<CondNeg>(&c.body)) {
      structuralEdge(neg->inner);
    } else if (auto* dia = std::get_if<CondDiamond>(&c.body)) {
      structuralEdge(dia->restrictor);
      structuralEdge(dia->scope);
    } else if (auto* gen = std::get_if<CondGen>(&c.body)) {
      structuralEdge(gen->restrictor);
      structuralEdge(gen->scope);
    }
  }
  for (const auto& n : nodes) os << n << "\n";
  for (const auto& e : edges) os << e << "\n";
  os << "}\n";
  return os.str();
}

namespace {

struct LineParser {
  Analysis* analysis;
  std::map<std::string, Label>* labels;
  std::map<std::string, Referent>* refs;
  std::map<std::string, SlotId>* slots;
  UdrsStore* store;

  Label label(const std::string& name) {
    if (name == "l_top") return store->top;
    auto it = labels->find(name);
    if (it != labels->end()) return it->second;
    Label l = analysis->makeLabel(name);
    labels->emplace(name, l);
    return l;
  }

  Referent ref(const std::string& name) {
    auto it = refs->find(name);
    if (it != refs->end()) return it->second;
    if (name.empty()) fail(ErrorCode::FormatError, "empty referent name");
    RefSort sort = std::isupper(static_cast<unsigned char>(name[0])) ? RefSort::Group
                                                                     : RefSort::Individual;
    Referent r = analysis->makeRef(sort, name);
    refs->emplace(name, r);
    return r;
  }

  AtomArg arg(const std::string& tok) {
    if (!tok.empty() && tok[0] == '?') {
      auto it = slots->find(tok);
      if (it == slots->end()) {
        SlotId id = analysis->makeSlot();
        store->deferred.push_back(DeferredSlot{id, std::nullopt, std::nullopt, std::nullopt});
        it = slots->emplace(tok, id).first;
      }
      return SlotRef{it->second};
    }
    return ref(tok);
  }
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> splitTop(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

SubordForm parseConstraintExpr(LineParser& lp, const std::string& text);

// "(l_a < l_b) -> (rest)"
SubordForm parseConditional(LineParser& lp, const std::string& text) {
  std::size_t close = text.find(')');
  std::string ant = trim(text.substr(1, close - 1));
  std::size_t arrow = text.find("->", close);
  if (arrow == std::string::npos) fail(ErrorCode::FormatError, "conditional missing ->");
  std::string rest = trim(text.substr(arrow + 2));
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')')
    fail(ErrorCode::FormatError, "conditional consequent must be parenthesized");
  rest = trim(rest.substr(1, rest.size() - 2));

  std::size_t lt = ant.find('<');
  if (lt == std::string::npos || (lt + 1 < ant.size() && ant[lt + 1] == '='))
    fail(ErrorCode::FormatError, "conditional antecedent must be strict");
  SubordLt antecedent{lp.label(trim(ant.substr(0, lt))), lp.label(trim(ant.substr(lt + 1)))};

  SubordForm inner = parseConstraintExpr(lp, rest);
  if (auto* leq = std::get_if<SubordLeq>(&inner))
    return SubordCond{antecedent, std::nullopt, *leq};
  if (auto* cond = std::get_if<SubordCond>(&inner)) {
    if (cond->inner_antecedent)
      fail(ErrorCode::FormatError, "conditional constraints nest at most twice");
    return SubordCond{antecedent, cond->antecedent, cond->consequent};
  }
  fail(ErrorCode::FormatError, "unsupported conditional consequent");
}

SubordForm parseConstraintExpr(LineParser& lp, const std::string& text) {
  if (!text.empty() && text[0] == '(') return parseConditional(lp, text);
  std::size_t p;
  if ((p = text.find("<=")) != std::string::npos)
    return SubordLeq{lp.label(trim(text.substr(0, p))), lp.label(trim(text.substr(p + 2)))};
  if ((p = text.find('<')) != std::string::npos)
    return SubordLt{lp.label(trim(text.substr(0, p))), lp.label(trim(text.substr(p + 1)))};
  if ((p = text.find('=')) != std::string::npos)
    return SubordEq{lp.label(trim(text.substr(0, p))), lp.label(trim(text.substr(p + 1)))};
  fail(ErrorCode::FormatError, "cannot parse constraint: " + text);
}

void parseLine(LineParser& lp, const std::string& raw) {
  std::string line = trim(raw);
  if (line.empty() || line[0] == '#') return;

  // Condition lines carry " : " after the label name; constraint operators
  // never appear with that spacing.
  std::size_t colon = line.find(" : ");
  if (colon != std::string::npos && line[0] != '(') {
    Label anchor = lp.label(trim(line.substr(0, colon)));
    std::string body = trim(line.substr(colon + 3));
    if (body.rfind("dref ", 0) == 0) {
      lp.store->conds.push_back({anchor, CondIntro{lp.ref(trim(body.substr(5)))}});
      return;
    }
    if (body.rfind("not ", 0) == 0) {
      lp.store->conds.push_back({anchor, CondNeg{lp.label(trim(body.substr(4)))}});
      return;
    }
    if (body.rfind("gen ", 0) == 0 || body.rfind("dia ", 0) == 0) {
      std::istringstream is(body.substr(4));
      std::string a, b;
      is >> a >> b;
      if (body.rfind("gen ", 0) == 0)
        lp.store->conds.push_back({anchor, CondGen{lp.label(a), lp.label(b)}});
      else
        lp.store->conds.push_back({anchor, CondDiamond{lp.label(a), lp.label(b)}});
      return;
    }
    std::size_t imp = body.find("=>");
    if (imp != std::string::npos) {
      lp.store->conds.push_back(
          {anchor,
           CondImplies{lp.label(trim(body.substr(0, imp))), lp.label(trim(body.substr(imp + 2)))}});
      return;
    }
    std::size_t in_pos = body.find(" in ");
    if (in_pos != std::string::npos && body.find('(') == std::string::npos) {
      Referent elem = lp.ref(trim(body.substr(0, in_pos)));
      Referent grp = lp.ref(trim(body.substr(in_pos + 4)));
      lp.store->conds.push_back({anchor, CondMember{elem, grp}});
      return;
    }
    std::size_t open = body.find('(');
    if (open != std::string::npos && body.back() == ')') {
      std::string rel = trim(body.substr(0, open));
      std::string args = body.substr(open + 1, body.size() - open - 2);
      CondAtom atom{rel, {}};
      if (!trim(args).empty())
        for (const auto& tok : splitTop(args, ',')) atom.args.push_back(lp.arg(tok));
      lp.store->conds.push_back({anchor, std::move(atom)});
      return;
    }
    fail(ErrorCode::FormatError, "cannot parse condition: " + line);
  }

  SubordForm form = parseConstraintExpr(lp, line);
  lp.store->subord.push_back(TaggedConstraint{std::move(form), Provenance::Lexicon, false});
}

}  // namespace

UdrsStore parseUdrs(const std::string& text, Analysis& analysis) {
  UdrsStore store = emptyStore(analysis);
  std::map<std::string, Label> labels;
  std::map<std::string, Referent> refs;
  std::map<std::string, SlotId> slots;
  LineParser lp{&analysis, &labels, &refs, &slots, &store};
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) parseLine(lp, line);
  checkConsistent(store);
  return store;
}

}  // namespace scopeforge
