#ifndef SCOPEFORGE_SYNTAX_HPP
#define SCOPEFORGE_SYNTAX_HPP

#include <string>
#include <vector>

#include "scopeforge/interface.hpp"
#include "scopeforge/lexicon.hpp"
#include "scopeforge/sign.hpp"

namespace scopeforge {

// Valence split on a lexical head: the first SUBCAT element becomes the
// subject, the rest the complements, base order preserved.
Sign splitValence(Sign lexical);

// Saturates the last open complement position with an overt phrase or a
// trace carrying the displaced phrase's shared content.
Sign headComp(const Sign& head, const Sign& comp, bool as_trace);

// Subject saturation; complements must already be saturated.
Sign headSubj(const Sign& head, const Sign& subj, bool as_trace);

// Discharges the slash element whose content record is the filler's.
Sign headFiller(const Sign& head, const Sign& filler);

// One syntactic analysis, as a binary tree over segmented tokens.
struct DerivNode {
  enum Kind { LeafDp, LeafVerb, LeafFunc, DetNoun, HeadComp, HeadSubj, HeadFiller, FuncComb };
  Kind kind;
  std::size_t start = 0, end = 0;
  const LexEntry* entry = nullptr;   // leaves; determiner of DetNoun
  const LexEntry* entry2 = nullptr;  // noun of DetNoun
  int head = -1;                     // child node id
  int dep = -1;                      // comp/subj/filler child node id
  bool dep_is_trace = false;
  int trace_id = -1;                 // trace consumed (HeadComp/HeadSubj) or discharged (HeadFiller)
  int subcat_pos = -1;
};

struct Derivation {
  std::vector<DerivNode> nodes;
  int root = -1;
  std::string dump;  // stable bracketing with schema names and trace indices
};

// All complete analyses of the token string, deterministically ordered.
// Traces are hypothesized only in base positions; every slash introduction
// must be discharged below the root.
std::vector<Derivation> parse(const std::vector<std::string>& tokens, const Lexicon& lexicon);

std::vector<std::string> tokenize(const std::string& sentence);

struct NpOccurrence {
  std::string phon;
  LsPair ls;
  std::optional<ScopeClientKind> kind;
  std::size_t position;  // leftmost segment index
};

struct Realization {
  Sign root;
  std::vector<NpOccurrence> nps;  // linear order
};

// Replays one derivation bottom-up, performing semantic composition at
// every node and identifying the clause's upper label with top.
Realization realize(const Derivation& d, Analysis& analysis);

}  // namespace scopeforge

#endif  // SCOPEFORGE_SYNTAX_HPP
