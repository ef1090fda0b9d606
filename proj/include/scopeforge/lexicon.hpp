#ifndef SCOPEFORGE_LEXICON_HPP
#define SCOPEFORGE_LEXICON_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scopeforge/sign.hpp"

namespace scopeforge {

// Template skeleton with small-integer placeholders for labels and
// referents; instantiation binds every placeholder to a fresh id. The
// sentinel label -1 stands for the top label.
struct ProtoStore {
  struct PAtomArg {
    int ref = -1;      // placeholder referent, or
    int slot = -1;     // placeholder slot index into the entry's subcat
  };
  struct PCond {
    int label;
    enum Kind { Atom, Intro, Implies, Neg, Diamond, Gen, Member } kind;
    std::string rel;                 // Atom
    std::vector<PAtomArg> args;      // Atom
    int ref = -1;                    // Intro / Member element
    int ref2 = -1;                   // Member group
    RefSort sort = RefSort::Individual;  // Intro
    int child1 = -1, child2 = -1;    // complex conditions
  };
  struct PConstraint {
    enum Kind { Leq, Lt, Eq } kind;
    int lower, upper;
  };
  std::vector<PCond> conds;
  std::vector<PConstraint> subord;
  int ls_max = -1, ls_min = -1;
  std::vector<std::pair<int, int>> plural_links;  // (max, min)
};

struct LexEntry {
  std::string form;                  // surface form, possibly multi-token
  std::vector<std::string> tokens;   // form split on whitespace
  Category category;
  std::vector<ArgSpec> subcat;       // base order; slot ids assigned per use
  std::string rel;                   // predicate name for verbs and nouns
  std::optional<int> card;           // numeral determiners: |X| = card
  bool standalone_np = false;        // determiner that is a complete NP
  std::optional<VForm> comp_vform;   // functional heads: required vform
  std::optional<ProtoStore> custom_template;  // tests may override the skeleton
};

class Lexicon {
public:
  const std::vector<LexEntry>& entries() const { return entries_; }
  std::vector<const LexEntry*> lookup(const std::vector<std::string>& tokens,
                                      std::size_t start, std::size_t len) const;
  // Longest match starting at `start`, or 0 if none.
  std::size_t longestMatch(const std::vector<std::string>& tokens, std::size_t start) const;
  std::size_t size() const { return entries_.size(); }

  void add(LexEntry entry) { entries_.push_back(std::move(entry)); }

private:
  std::vector<LexEntry> entries_;
};

// Reads the JSON lexicon file, validates field values and every entry's
// template skeleton. Schema errors carry the offending entry and field.
Lexicon loadLexicon(const std::string& path);
Lexicon parseLexiconJson(const std::string& json_text);

// Builds the entry's UDRS template with fresh labels and referents and
// wraps it in a Sign. Verbs come back with the full SUBCAT list installed
// but valence lists still empty (the valence split is a syntax step).
Sign instantiate(const LexEntry& entry, Analysis& analysis);

// The skeleton an entry uses: either its custom template or the standard
// one for its kind.
ProtoStore templateFor(const LexEntry& entry);

const char* headTypeName(HeadType t);

}  // namespace scopeforge

#endif  // SCOPEFORGE_LEXICON_HPP
