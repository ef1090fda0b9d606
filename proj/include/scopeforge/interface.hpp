#ifndef SCOPEFORGE_INTERFACE_HPP
#define SCOPEFORGE_INTERFACE_HPP

#include "scopeforge/sign.hpp"

namespace scopeforge {

enum class Schema { HeadComp, HeadSubj, HeadFiller, FuncComb, DetNoun };

// Verb label weakly below the argument's minimal label. For a quantified
// argument the minimal label is its nuclear scope, so no argument referent
// can end up free.
TaggedConstraint closedFormulaConstraint(const LsPair& head_ls, const LsPair& arg_ls);

// Local-domain bound for one collected unit: unconditional for quantifiers
// and negation, conditional on scope-bearing resolution for plurals.
TaggedConstraint domainBoundConstraint(const ScopeClient& client, Label domain);

// Precedence constraints for saturating `arg` against the still-lower
// SUBCAT positions: every quant/plural element after arg's position whose
// content is not displaced (present in `slash`) ends up inside arg's scope;
// plural participants make the constraint conditional on their resolution.
std::vector<TaggedConstraint> complementScopeConstraints(
    const LocData& arg, const std::vector<SubcatRec>& subcat_tail,
    const std::vector<SlashRec>& slash);

// Union of daughter stores plus the schema's own constraints; the head
// supplies the distinguished labels except along functional projections,
// which inherit them from their complement.
UdrsStore compose(Schema schema, const Sign& head, const Sign& dtr);

// Marks the slot with the argument's distinguished labels and attempts
// resolution; lexically selected plural readings add their identity
// constraint first. Later scope constraints on the phrase never touch the
// slot; only a plural disambiguation step can resolve a pending one.
UdrsStore wireArgumentSlot(UdrsStore store, const ArgSpec& spec, const LocData& arg);

// Determiner plus noun: the noun's predicate is anchored at the
// determiner's restrictor (quantifiers) or referent-introducing label.
Sign makeNounPhrase(const Sign& det, const Sign& noun);

// Functional head taking its saturated complement: binds the local domain
// for every quant/plural/negation unit collected on the projection.
Sign applyFunctionalHead(const Sign& func, const Sign& complement);

// Identifies the clause's upper label with the global top; applied to the
// root sign of a complete derivation.
Sign finalizeRoot(Sign root);

}  // namespace scopeforge

#endif  // SCOPEFORGE_INTERFACE_HPP
