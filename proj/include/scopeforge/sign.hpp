#ifndef SCOPEFORGE_SIGN_HPP
#define SCOPEFORGE_SIGN_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scopeforge/core.hpp"

namespace scopeforge {

enum class HeadType {
  Verb,
  DetQuant,
  DetIndef,
  DetDefPlural,
  Noun,
  ProperName,
  FuncComp,
  FuncVfin,
  Neg,
  Pronoun,
};

enum class Case { Nom, Dat, Acc };
enum class Num { Sg, Pl };
enum class VForm { Fin, Inf };
enum class ArgType { Dp, Clause };
enum class PluralSelect { Collective, Distributive };

struct Category {
  HeadType head = HeadType::Verb;
  std::optional<Case> cas;
  std::optional<Num> num;
  std::optional<VForm> vform;
};

// One subcategorized argument in base order: its case/type requirements,
// the verb's atom slot it fills, and an optional lexeme-selected plural
// reading for that position.
struct ArgSpec {
  ArgType type = ArgType::Dp;
  std::optional<Case> cas;
  std::optional<PluralSelect> select;
  SlotId slot = 0;
};

// What a quantified/plural/negation unit needs from its local domain head.
enum class ScopeClientKind { Quant, Plural, Negation };

struct ScopeClient {
  ScopeClientKind kind;
  LsPair ls;
};

// The content shared between a displaced phrase and its trace. Token
// identity of this record is what SLASH membership and discharge test.
struct LocData {
  Category cat;
  UdrsStore udrs;
  std::string phon;
  std::optional<ScopeClientKind> scope_kind;  // set for quant/plural DPs
};
using Loc = std::shared_ptr<const LocData>;

// A consumed subcat position remembers the argument it was identified with.
struct SubcatRec {
  ArgSpec spec;
  Loc loc;  // null until the position is saturated
};

struct SlashRec {
  Loc loc;
  ArgSpec spec;
};

struct Sign {
  Category cat;
  std::vector<SubcatRec> head_subcat;  // full base-order list, a head feature
  std::vector<SubcatRec> subj;         // at most one element
  std::vector<SubcatRec> comps;
  std::vector<SlashRec> slash;
  UdrsStore udrs;
  std::vector<ScopeClient> pending_scope;
  Loc loc;  // set on DP signs; shared with any trace of this phrase
  std::string phon;
  bool lexical = false;
};

}  // namespace scopeforge

#endif  // SCOPEFORGE_SIGN_HPP
