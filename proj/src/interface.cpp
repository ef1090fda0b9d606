#include "scopeforge/interface.hpp"

#include <algorithm>

namespace scopeforge {

TaggedConstraint closedFormulaConstraint(const LsPair& head_ls, const LsPair& arg_ls) {
  return TaggedConstraint{SubordLeq{head_ls.lmin, arg_ls.lmin}, Provenance::ClosedFormula, false};
}

TaggedConstraint domainBoundConstraint(const ScopeClient& client, Label domain) {
  if (client.kind == ScopeClientKind::Plural) {
    return TaggedConstraint{
        SubordCond{SubordLt{client.ls.lmin, client.ls.lmax}, std::nullopt,
                   SubordLeq{client.ls.lmax, domain}},
        Provenance::DomainBound, false};
  }
  return TaggedConstraint{SubordLeq{client.ls.lmax, domain}, Provenance::DomainBound, false};
}

namespace {

bool scopeRelevant(const LocData& loc) {
  return loc.scope_kind == ScopeClientKind::Quant || loc.scope_kind == ScopeClientKind::Plural;
}

bool inSlash(const std::vector<SlashRec>& slash, const Loc& loc) {
  return std::any_of(slash.begin(), slash.end(),
                     [&](const SlashRec& s) { return s.loc == loc; });
}

}  // namespace

std::vector<TaggedConstraint> complementScopeConstraints(
    const LocData& arg, const std::vector<SubcatRec>& subcat_tail,
    const std::vector<SlashRec>& slash) {
  std::vector<TaggedConstraint> out;
  if (!scopeRelevant(arg)) return out;
  bool arg_plural = arg.scope_kind == ScopeClientKind::Plural;
  for (const auto& rec : subcat_tail) {
    if (!rec.loc || !scopeRelevant(*rec.loc)) continue;
    if (inSlash(slash, rec.loc)) continue;  // displaced: relative scope stays open
    bool tail_plural = rec.loc->scope_kind == ScopeClientKind::Plural;
    SubordLeq consequent{rec.loc->udrs.ls.lmax, arg.udrs.ls.lmin};
    SubordForm form;
    if (arg_plural && tail_plural) {
      form = SubordCond{SubordLt{arg.udrs.ls.lmin, arg.udrs.ls.lmax},
                        SubordLt{rec.loc->udrs.ls.lmin, rec.loc->udrs.ls.lmax}, consequent};
    } else if (arg_plural) {
      form = SubordCond{SubordLt{arg.udrs.ls.lmin, arg.udrs.ls.lmax}, std::nullopt, consequent};
    } else if (tail_plural) {
      form = SubordCond{SubordLt{rec.loc->udrs.ls.lmin, rec.loc->udrs.ls.lmax}, std::nullopt,
                        consequent};
    } else {
      form = consequent;
    }
    out.push_back(TaggedConstraint{form, Provenance::PrecedenceScope, false});
  }
  return out;
}

UdrsStore compose(Schema schema, const Sign& head, const Sign& dtr) {
  switch (schema) {
    case Schema::HeadComp:
    case Schema::HeadSubj:
    case Schema::DetNoun:
      return merge(head.udrs, dtr.udrs, LsFrom::First);
    case Schema::FuncComb:
      // Functional heads inherit the distinguished labels of their
      // complement; their own conditions still join the store.
      return merge(head.udrs, dtr.udrs, LsFrom::Second);
    case Schema::HeadFiller:
      // The filler's content entered at its trace; nothing new here.
      return head.udrs;
  }
  fail(ErrorCode::Internal, "unknown schema");
}

UdrsStore wireArgumentSlot(UdrsStore store, const ArgSpec& spec, const LocData& arg) {
  if (spec.slot == 0) return store;
  const DeferredSlot* slot = findSlot(store, spec.slot);
  if (!slot) fail(ErrorCode::Internal, "argument slot missing from store");
  for (auto& s : store.deferred)
    if (s.id == spec.slot) s.source_ls = arg.udrs.ls;

  if (spec.select) {
    // Lexeme-selected reading: the verb itself supplies the resolving
    // constraint, collective as identity, distributive via the usual
    // disambiguation step later.
    if (*spec.select == PluralSelect::Collective)
      store = addConstraint(store, SubordEq{arg.udrs.ls.lmax, arg.udrs.ls.lmin},
                            Provenance::Lexicon);
  }

  ResolveResult res = resolveArgumentReferent(store, arg.udrs.ls);
  if (!res.pending) store = resolveSlot(store, spec.slot, res);
  return store;
}

Sign makeNounPhrase(const Sign& det, const Sign& noun) {
  if (noun.cat.head != HeadType::Noun)
    fail(ErrorCode::ValenceMismatch, "determiner needs a noun complement");
  if (det.cat.num && noun.cat.num && *det.cat.num != *noun.cat.num)
    fail(ErrorCode::ValenceMismatch, "determiner and noun disagree in number");

  Sign np;
  np.cat = det.cat;
  np.phon = det.phon + " " + noun.phon;
  np.lexical = false;
  np.udrs = compose(Schema::DetNoun, det, noun);

  // Anchor: the restrictor box for quantifiers, the referent's label
  // otherwise.
  Label anchor = det.udrs.ls.lmax;
  if (det.cat.head == HeadType::DetQuant) {
    auto r = resOf(det.udrs, det.udrs.ls.lmax);
    if (!r) fail(ErrorCode::Internal, "quantifier determiner without restrictor");
    anchor = *r;
  }
  np.udrs = addConstraint(np.udrs, SubordEq{noun.udrs.ls.lmax, anchor}, Provenance::Lexicon);

  // The noun's predicate slot takes the determiner's referent.
  auto target = drefOf(np.udrs, anchor);
  if (!target) fail(ErrorCode::Internal, "determiner introduces no referent");
  for (const auto& s : noun.udrs.deferred) {
    if (s.resolved) continue;
    ResolveResult res;
    res.referent = *target;
    res.trigger = SubordEq{noun.udrs.ls.lmax, anchor};
    np.udrs = resolveSlot(np.udrs, s.id, res);
  }

  std::optional<ScopeClientKind> kind;
  if (det.cat.head == HeadType::DetQuant) kind = ScopeClientKind::Quant;
  if (det.cat.head == HeadType::DetDefPlural) kind = ScopeClientKind::Plural;
  np.loc = std::make_shared<LocData>(LocData{np.cat, np.udrs, np.phon, kind});
  return np;
}

Sign applyFunctionalHead(const Sign& func, const Sign& complement) {
  if (!complement.comps.empty() || !complement.subj.empty())
    fail(ErrorCode::SaturationError, "functional head requires a saturated complement");

  Sign out;
  out.cat = func.cat;
  out.cat.vform = VForm::Fin;
  out.phon = func.phon + " " + complement.phon;
  out.head_subcat = complement.head_subcat;
  out.slash = complement.slash;
  out.udrs = compose(Schema::FuncComb, func, complement);

  // The complement's upper label is the bound of the local domain; every
  // unit collected on the projection is bounded here, exactly once.
  Label domain = complement.udrs.ls.lmax;
  std::vector<ScopeClient> clients = complement.pending_scope;
  clients.insert(clients.end(), func.pending_scope.begin(), func.pending_scope.end());
  for (const auto& client : clients)
    out.udrs = addConstraint(out.udrs, domainBoundConstraint(client, domain).form,
                             Provenance::DomainBound);

  // A negation on the functional head itself wraps the clause: the verb's
  // label sits inside the negation's scope.
  for (const auto& client : func.pending_scope)
    if (client.kind == ScopeClientKind::Negation)
      out.udrs = addConstraint(out.udrs, SubordLeq{complement.udrs.ls.lmin, client.ls.lmin},
                               Provenance::ClosedFormula);

  out.pending_scope.clear();
  return out;
}

Sign finalizeRoot(Sign root) {
  if (!root.slash.empty())
    fail(ErrorCode::NoParse, "undischarged displaced constituents at the root");
  root.udrs =
      addConstraint(root.udrs, SubordEq{root.udrs.ls.lmax, root.udrs.top}, Provenance::Lexicon);
  return root;
}

}  // namespace scopeforge
