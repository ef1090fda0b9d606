#ifndef SCOPEFORGE_CORE_HPP
#define SCOPEFORGE_CORE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scopeforge/errors.hpp"

namespace scopeforge {

// A label names a partial DRS; labels are the nodes of the subordination
// order. Identity is the numeric id; the hint is display-only.
struct Label {
  std::uint32_t id = 0;
  std::string hint;

  friend bool operator==(const Label& a, const Label& b) { return a.id == b.id; }
  friend bool operator!=(const Label& a, const Label& b) { return a.id != b.id; }
  friend bool operator<(const Label& a, const Label& b) { return a.id < b.id; }
};

enum class RefSort { Individual, Group };

// Discourse referent introduced by an NP. Individual-sorted referents are
// written x, y, ...; group-sorted ones X, Y, ...
struct Referent {
  std::uint32_t id = 0;
  RefSort sort = RefSort::Individual;
  std::string hint;

  friend bool operator==(const Referent& a, const Referent& b) { return a.id == b.id; }
  friend bool operator!=(const Referent& a, const Referent& b) { return a.id != b.id; }
  friend bool operator<(const Referent& a, const Referent& b) { return a.id < b.id; }
};

using SlotId = std::uint32_t;

// An argument position of an atomic condition: either a referent or a
// still-unresolved argument slot (see DeferredSlot).
struct SlotRef {
  SlotId id = 0;
  friend bool operator==(const SlotRef& a, const SlotRef& b) { return a.id == b.id; }
};
using AtomArg = std::variant<Referent, SlotRef>;

struct CondAtom {
  std::string rel;
  std::vector<AtomArg> args;
};
struct CondIntro {
  Referent ref;
};
struct CondImplies {
  Label restrictor, scope;
};
struct CondNeg {
  Label inner;
};
struct CondDiamond {
  Label restrictor, scope;
};
struct CondGen {
  Label restrictor, scope;
};
struct CondMember {
  Referent element, group;
};

using CondBody =
    std::variant<CondAtom, CondIntro, CondImplies, CondNeg, CondDiamond, CondGen, CondMember>;

struct Condition {
  Label label;
  CondBody body;
};

// Subordination constraints, normalized to the lower <= upper orientation.
struct SubordLeq {
  Label lower, upper;
};
struct SubordLt {
  Label lower, upper;
};
struct SubordEq {
  Label a, b;
};

// Conditional constraint: once the antecedent's strict subordination holds,
// the consequent joins the unconditional set. Conditionals nest at most
// twice, so the doubly-conditional shape is flattened into an optional
// inner antecedent rather than a recursive type.
struct SubordCond {
  SubordLt antecedent;
  std::optional<SubordLt> inner_antecedent;
  SubordLeq consequent;
};

using SubordForm = std::variant<SubordLeq, SubordLt, SubordEq, SubordCond>;

// Where a constraint came from; printed in the audit table.
enum class Provenance {
  Lexicon,          // printed "lex"
  ClosedFormula,    // printed "IV"
  DomainBound,      // printed "V"
  PrecedenceScope,  // printed "VI"
  PluralChoice,     // printed "pl_dis"
  User,             // printed "user"
};

const char* provenanceTag(Provenance p);

struct TaggedConstraint {
  SubordForm form;
  Provenance prov = Provenance::Lexicon;
  bool discarded = false;  // conditional refuted during promotion
};

// Argument slot of a verb, resolved against the contributing NP's store.
// Once resolved (trigger + referent set together) it never changes.
struct LsPair {
  Label lmax, lmin;
};

struct DeferredSlot {
  SlotId id = 0;
  std::optional<LsPair> source_ls;
  std::optional<SubordForm> trigger;
  std::optional<Referent> resolved;
};

// One entry per plural NP: the weak max/min pair the NP contributed.
// Consulted by scope/res and by the reading enumerator's branch step.
struct PluralLink {
  Label lmax, lmin;
};

// The full underspecified representation: distinguished labels, labeled
// conditions, subordination constraints, pending argument slots.
struct UdrsStore {
  LsPair ls;
  Label top;
  std::vector<Condition> conds;
  std::vector<TaggedConstraint> subord;
  std::vector<DeferredSlot> deferred;
  std::vector<PluralLink> plural_links;
};

// Fresh-id source for one analysis. Confine to a single thread per parse;
// stores themselves are immutable values once built.
class Analysis {
public:
  Analysis();

  Label top() const { return top_; }
  Label makeLabel(std::string hint = "");
  Referent makeRef(RefSort sort, std::string hint = "");
  SlotId makeSlot();

private:
  Label top_;
};

// Reflexive-transitive closure of the subordination order over label
// equivalence classes. Structural subordination (duplex/negation children
// below their parent) and the top bound are folded in. Strictness survives
// any chain containing at least one strict link.
class Closure {
public:
  explicit Closure(const UdrsStore& store);

  bool leq(Label a, Label b) const;
  bool lt(Label a, Label b) const;
  bool same(Label a, Label b) const;
  bool consistent() const;

  // Canonical class representative (smallest member id).
  Label classRep(Label l) const;
  std::vector<Label> classMembers(Label l) const;
  std::vector<Label> allLabels() const;

  // Full relation dump for oracle comparison: (lower, upper, strict).
  struct Edge {
    Label lower, upper;
    bool strict;
  };
  std::vector<Edge> relation() const;

private:
  int classIndex(Label l) const;

  std::vector<Label> labels_;
  std::vector<int> class_of_;           // label index -> class index
  std::vector<std::vector<int>> reach_; // class x class -> 0 none, 1 weak, 2 strict
  std::vector<Label> class_rep_;
};

UdrsStore emptyStore(const Analysis& analysis);

enum class LsFrom { First, Second };

// Union of conditions, constraints, slots and plural registry; the selected
// input supplies the distinguished labels. Purely additive.
UdrsStore merge(const UdrsStore& a, const UdrsStore& b, LsFrom ls_from);

UdrsStore addConstraint(const UdrsStore& store, SubordForm form,
                        Provenance prov = Provenance::User);

void checkConsistent(const UdrsStore& store);

// scope/res partial functions. Undefined exactly for plural labels whose
// weak max/min link is still unresolved.
std::optional<Label> scopeOf(const UdrsStore& store, Label l);
std::optional<Label> resOf(const UdrsStore& store, Label l);

enum class ScopeClass { ScopeBearing, NotScopeBearing, PotentiallyScopeBearing };

ScopeClass classify(const UdrsStore& store, Label l);

// The unique referent introduced at l's class, if any.
std::optional<Referent> drefOf(const UdrsStore& store, Label l);

struct ResolveResult {
  bool pending = false;
  std::optional<Referent> referent;
  std::optional<SubordForm> trigger;
};

// Resolves an argument slot against its NP's subordination pattern:
// identified labels yield the NP's own referent, a strict max/min pattern
// yields the restrictor referent, a weak link alone stays pending.
ResolveResult resolveArgumentReferent(const UdrsStore& store, const LsPair& source_ls);

UdrsStore resolveSlot(const UdrsStore& store, SlotId slot, const ResolveResult& res);

const DeferredSlot* findSlot(const UdrsStore& store, SlotId slot);

// Helpers shared by several modules.
bool isStructuralConstraint(const UdrsStore& store, const SubordForm& form);
std::vector<Label> collectLabels(const UdrsStore& store);
std::optional<Condition> structuralConditionAt(const UdrsStore& store, Label l);

}  // namespace scopeforge

#endif  // SCOPEFORGE_CORE_HPP
