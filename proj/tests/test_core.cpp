#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "scopeforge/core.hpp"
#include "support/naive_rel.hpp"

using namespace scopeforge;
using scopeforge::testsupport::naiveRelation;

namespace {

// Store for "Everybody didn't pay attention" in its underspecified form:
// a universal duplex, a negation, and the verb atom, all floating below top.
struct NegQuantStore {
  Analysis an;
  UdrsStore store;
  Label l1, l11, l12, l2, l21, l3;
  Referent x;

  NegQuantStore() {
    l1 = an.makeLabel("l_1");
    l11 = an.makeLabel("l_11");
    l12 = an.makeLabel("l_12");
    l2 = an.makeLabel("l_2");
    l21 = an.makeLabel("l_21");
    l3 = an.makeLabel("l_3");
    x = an.makeRef(RefSort::Individual, "x");
    store = emptyStore(an);
    store.conds.push_back({l1, CondImplies{l11, l12}});
    store.conds.push_back({l11, CondIntro{x}});
    store.conds.push_back({l2, CondNeg{l21}});
    store.conds.push_back({l3, CondAtom{"pay_attention", {x}}});
    store.subord.push_back({SubordLt{l11, l1}, Provenance::Lexicon, false});
    store.subord.push_back({SubordLt{l12, l1}, Provenance::Lexicon, false});
    store.subord.push_back({SubordLt{l21, l2}, Provenance::Lexicon, false});
    store.subord.push_back({SubordLeq{l1, an.top()}, Provenance::DomainBound, false});
    store.subord.push_back({SubordLeq{l2, an.top()}, Provenance::DomainBound, false});
    store.subord.push_back({SubordLeq{l3, l21}, Provenance::ClosedFormula, false});
    store.subord.push_back({SubordLeq{l3, l12}, Provenance::ClosedFormula, false});
  }
};

// Quantifier NP store as the lexicon builds it: duplex, restrictor referent,
// noun predicate in the restrictor, strict subordination of both children.
struct QuantNp {
  Label l1, l11, l12;
  Referent x;
};

QuantNp addQuantNp(Analysis& an, UdrsStore& store, const std::string& noun) {
  QuantNp np;
  np.l1 = an.makeLabel();
  np.l11 = an.makeLabel();
  np.l12 = an.makeLabel();
  np.x = an.makeRef(RefSort::Individual);
  store.conds.push_back({np.l1, CondImplies{np.l11, np.l12}});
  store.conds.push_back({np.l11, CondIntro{np.x}});
  store.conds.push_back({np.l11, CondAtom{noun, {np.x}}});
  store.subord.push_back({SubordLt{np.l11, np.l1}, Provenance::Lexicon, false});
  store.subord.push_back({SubordLt{np.l12, np.l1}, Provenance::Lexicon, false});
  return np;
}

struct PluralNp {
  Label l1, l12;
  Referent X;
};

PluralNp addPluralNp(Analysis& an, UdrsStore& store, const std::string& noun) {
  PluralNp np;
  np.l1 = an.makeLabel();
  np.l12 = an.makeLabel();
  np.X = an.makeRef(RefSort::Group);
  store.conds.push_back({np.l1, CondIntro{np.X}});
  store.conds.push_back({np.l1, CondAtom{noun, {np.X}}});
  store.subord.push_back({SubordLeq{np.l12, np.l1}, Provenance::Lexicon, false});
  store.plural_links.push_back({np.l1, np.l12});
  return np;
}

}  // namespace

TEST_CASE("merge of two empty stores is the empty store") {
  Analysis an;
  UdrsStore a = emptyStore(an);
  UdrsStore b = emptyStore(an);
  UdrsStore m = merge(a, b, LsFrom::First);
  CHECK(m.conds.empty());
  CHECK(m.subord.empty());
  CHECK(m.deferred.empty());
}

TEST_CASE("merge keeps all conditions of verb and quantified NP") {
  Analysis an;
  UdrsStore np_store = emptyStore(an);
  QuantNp np = addQuantNp(an, np_store, "Mitarbeiter");

  UdrsStore verb = emptyStore(an);
  Label lv = an.makeLabel();
  Label lvm = an.makeLabel();
  SlotId s1 = an.makeSlot();
  verb.conds.push_back({lv, CondAtom{"vorstellen", {SlotRef{s1}}}});
  verb.deferred.push_back(DeferredSlot{s1, std::nullopt, std::nullopt, std::nullopt});
  verb.ls = {lvm, lv};

  UdrsStore m = merge(verb, np_store, LsFrom::First);
  CHECK(m.conds.size() == 4);  // duplex, dref, noun atom, verb atom
  CHECK(m.ls.lmin == lv);
  CHECK(m.deferred.size() == 1);
  CHECK(np.l1 == np.l1);
}

TEST_CASE("merge with mismatched tops fails") {
  Analysis an1, an2;
  UdrsStore a = emptyStore(an1);
  UdrsStore b = emptyStore(an2);
  CHECK_THROWS_WITH_AS(merge(a, b, LsFrom::First), doctest::Contains("top"), Error);
}

TEST_CASE("merge detects subordination cycles across its inputs") {
  Analysis an;
  Label l1 = an.makeLabel(), l2 = an.makeLabel();
  UdrsStore a = emptyStore(an);
  a.subord.push_back({SubordLeq{l1, l2}, Provenance::User, false});
  UdrsStore b = emptyStore(an);
  b.subord.push_back({SubordLt{l2, l1}, Provenance::User, false});

  // Independent check that the combined facts really are cyclic.
  UdrsStore combined = a;
  combined.subord.push_back(b.subord[0]);
  auto naive = naiveRelation(combined);
  CHECK_FALSE(naive.consistent());

  CHECK_THROWS_AS(merge(a, b, LsFrom::First), Error);
}

TEST_CASE("addConstraint is monotone and rejects cycles") {
  NegQuantStore f;
  UdrsStore u2 = addConstraint(f.store, SubordLeq{f.l2, f.l12});
  CHECK(u2.subord.size() == f.store.subord.size() + 1);
  CHECK(u2.conds.size() == f.store.conds.size());
  CHECK(u2.deferred.size() == f.store.deferred.size());

  // Reflexive addition changes nothing about the closure.
  UdrsStore u3 = addConstraint(f.store, SubordLeq{f.l1, f.l1});
  Closure c_before(f.store);
  Closure c_after(u3);
  for (const auto& a : collectLabels(f.store))
    for (const auto& b : collectLabels(f.store)) {
      CHECK(c_before.leq(a, b) == c_after.leq(a, b));
      CHECK(c_before.lt(a, b) == c_after.lt(a, b));
    }

  CHECK_THROWS_AS(addConstraint(u2, SubordLt{f.l12, f.l2}), Error);
}

TEST_CASE("closure contains the implicit subordinations of the resolved store") {
  NegQuantStore f;
  UdrsStore resolved = addConstraint(f.store, SubordLeq{f.l2, f.l12});
  Closure cl(resolved);
  CHECK(cl.leq(f.l21, f.l2));
  CHECK(cl.leq(f.l11, f.an.top()));
  CHECK(cl.leq(f.l21, f.l12));  // via l_21 <= l_2 <= l_12
  CHECK(cl.lt(f.l11, f.l1));
}

TEST_CASE("closure of a single atomic condition") {
  Analysis an;
  UdrsStore s = emptyStore(an);
  Label l = an.makeLabel();
  Referent x = an.makeRef(RefSort::Individual);
  s.conds.push_back({l, CondAtom{"sleep", {x}}});
  Closure cl(s);
  CHECK(cl.leq(l, l));
  CHECK(cl.leq(l, an.top()));
  CHECK(cl.leq(an.top(), an.top()));
  CHECK_FALSE(cl.leq(an.top(), l));
}

TEST_CASE("closure matches the naive fixpoint oracle on a chained store") {
  // Shape of the hiring example: weak plural link, verb below both argument
  // minima, everything below top.
  Analysis an;
  UdrsStore s = emptyStore(an);
  PluralNp subj = addPluralNp(an, s, "Rechtsanwalt");
  Label l2 = an.makeLabel();
  Referent y = an.makeRef(RefSort::Individual);
  s.conds.push_back({l2, CondIntro{y}});
  s.conds.push_back({l2, CondAtom{"Sekretaerin", {y}}});
  Label l3 = an.makeLabel();
  s.conds.push_back({l3, CondAtom{"einstellen", {subj.X, y}}});
  s.subord.push_back({SubordLeq{l3, subj.l12}, Provenance::ClosedFormula, false});
  s.subord.push_back({SubordLeq{l3, l2}, Provenance::ClosedFormula, false});
  s.subord.push_back({SubordLeq{l2, an.top()}, Provenance::Lexicon, false});

  auto naive = naiveRelation(s);
  CHECK(naive.leq(l3, an.top()));  // chain through l_2

  Closure cl(s);
  for (const auto& a : collectLabels(s))
    for (const auto& b : collectLabels(s)) {
      CHECK(cl.leq(a, b) == naive.leq(a, b));
      CHECK(cl.lt(a, b) == naive.lt(a, b));
    }
}

TEST_CASE("scope and res of the three label families") {
  Analysis an;
  UdrsStore s = emptyStore(an);
  QuantNp q = addQuantNp(an, s, "Mitarbeiter");
  PluralNp p = addPluralNp(an, s, "Rechtsanwalt");
  Label name_l = an.top();
  Referent m = an.makeRef(RefSort::Individual);
  s.conds.push_back({name_l, CondIntro{m}});
  s.conds.push_back({name_l, CondAtom{"Maria", {m}}});

  CHECK(scopeOf(s, q.l1).value() == q.l12);
  CHECK(resOf(s, q.l1).value() == q.l11);
  CHECK(classify(s, q.l1) == ScopeClass::ScopeBearing);

  Closure cl(s);
  CHECK(cl.same(scopeOf(s, name_l).value(), name_l));
  CHECK(classify(s, name_l) == ScopeClass::NotScopeBearing);

  CHECK_FALSE(scopeOf(s, p.l1).has_value());
  CHECK_FALSE(resOf(s, p.l1).has_value());
  CHECK(classify(s, p.l1) == ScopeClass::PotentiallyScopeBearing);

  // Negation: scope and res are the inner box.
  Label ln = an.makeLabel(), li = an.makeLabel();
  s.conds.push_back({ln, CondNeg{li}});
  s.subord.push_back({SubordLt{li, ln}, Provenance::Lexicon, false});
  CHECK(scopeOf(s, ln).value() == li);
  CHECK(resOf(s, ln).value() == li);
  CHECK(classify(s, ln) == ScopeClass::ScopeBearing);
}

TEST_CASE("plural labels become defined once their weak link is resolved") {
  Analysis an;
  UdrsStore s = emptyStore(an);
  PluralNp p = addPluralNp(an, s, "Rechtsanwalt");

  UdrsStore collective = addConstraint(s, SubordEq{p.l1, p.l12}, Provenance::PluralChoice);
  CHECK(classify(collective, p.l1) == ScopeClass::NotScopeBearing);

  UdrsStore dist = s;
  Label l11 = an.makeLabel(), l12 = p.l12;
  Referent x = an.makeRef(RefSort::Individual);
  dist.conds.push_back({p.l1, CondImplies{l11, l12}});
  dist.conds.push_back({l11, CondIntro{x}});
  dist.conds.push_back({l11, CondMember{x, p.X}});
  dist.subord.push_back({SubordLt{l11, p.l1}, Provenance::PluralChoice, false});
  dist.subord.push_back({SubordLt{l12, p.l1}, Provenance::PluralChoice, false});
  CHECK(classify(dist, p.l1) == ScopeClass::ScopeBearing);
  CHECK(scopeOf(dist, p.l1).value() == l12);
}

TEST_CASE("drefOf returns the unique introduced referent") {
  Analysis an;
  UdrsStore s = emptyStore(an);
  QuantNp q = addQuantNp(an, s, "Mitarbeiter");
  CHECK(drefOf(s, q.l11).value() == q.x);
  CHECK_FALSE(drefOf(s, q.l12).has_value());

  Label atom_l = an.makeLabel();
  s.conds.push_back({atom_l, CondAtom{"rain", {}}});
  CHECK_FALSE(drefOf(s, atom_l).has_value());

  UdrsStore dup = s;
  Referent other = an.makeRef(RefSort::Individual);
  dup.conds.push_back({q.l11, CondIntro{other}});
  CHECK_THROWS_AS(drefOf(dup, q.l11), Error);
}

TEST_CASE("argument referent resolution distinguishes the three patterns") {
  Analysis an;
  UdrsStore s = emptyStore(an);

  // Singular indefinite: identified labels, immediate resolution.
  Label li = an.makeLabel();
  Referent y = an.makeRef(RefSort::Individual);
  s.conds.push_back({li, CondIntro{y}});
  auto r1 = resolveArgumentReferent(s, LsPair{li, li});
  CHECK_FALSE(r1.pending);
  CHECK(r1.referent.value() == y);
  CHECK(std::holds_alternative<SubordEq>(r1.trigger.value()));

  // Quantifier: strict pattern yields the restrictor referent.
  QuantNp q = addQuantNp(an, s, "Mitarbeiter");
  auto r2 = resolveArgumentReferent(s, LsPair{q.l1, q.l12});
  CHECK_FALSE(r2.pending);
  CHECK(r2.referent.value() == q.x);
  CHECK(std::holds_alternative<SubordLt>(r2.trigger.value()));

  // Plural with only the weak link: stays pending.
  PluralNp p = addPluralNp(an, s, "Rechtsanwalt");
  auto r3 = resolveArgumentReferent(s, LsPair{p.l1, p.l12});
  CHECK(r3.pending);

  // Collective selection: adding the identity first resolves to the group.
  UdrsStore sel = addConstraint(s, SubordEq{p.l1, p.l12}, Provenance::Lexicon);
  auto r4 = resolveArgumentReferent(sel, LsPair{p.l1, p.l12});
  CHECK_FALSE(r4.pending);
  CHECK(r4.referent.value() == p.X);

  // No recognizable pattern at all.
  Label stray_a = an.makeLabel(), stray_b = an.makeLabel();
  UdrsStore bare = emptyStore(an);
  bare.conds.push_back({stray_a, CondAtom{"noise", {}}});
  bare.conds.push_back({stray_b, CondAtom{"noise", {}}});
  CHECK_THROWS_AS(resolveArgumentReferent(bare, LsPair{stray_b, stray_a}), Error);
}

TEST_CASE("closure is idempotent and agrees with the oracle on random stores") {
  std::mt19937 rng(20240817);
  for (int iter = 0; iter < 60; ++iter) {
    Analysis an;
    UdrsStore s = emptyStore(an);
    int nq = static_cast<int>(rng() % 3);
    int np = static_cast<int>(rng() % 2);
    std::vector<Label> anchors{an.top()};
    for (int i = 0; i < nq; ++i) anchors.push_back(addQuantNp(an, s, "P").l1);
    for (int i = 0; i < np; ++i) anchors.push_back(addPluralNp(an, s, "Q").l1);
    Label atom = an.makeLabel();
    s.conds.push_back({atom, CondAtom{"rain", {}}});
    anchors.push_back(atom);

    int extra = static_cast<int>(rng() % 5);
    for (int i = 0; i < extra; ++i) {
      Label a = anchors[rng() % anchors.size()];
      Label b = anchors[rng() % anchors.size()];
      SubordForm form;
      if (rng() % 2)
        form = SubordLeq{a, b};
      else
        form = SubordLt{a, b};
      try {
        s = addConstraint(s, form, Provenance::User);
      } catch (const Error&) {
        // cyclic draw; skip
      }
    }

    Closure cl(s);
    auto naive = naiveRelation(s);
    CHECK(cl.consistent() == naive.consistent());
    if (!cl.consistent()) continue;
    for (const auto& a : collectLabels(s))
      for (const auto& b : collectLabels(s)) {
        REQUIRE(cl.leq(a, b) == naive.leq(a, b));
        REQUIRE(cl.lt(a, b) == naive.lt(a, b));
      }

    // Idempotence: materializing closure facts as constraints changes nothing.
    UdrsStore extended = s;
    for (const auto& e : cl.relation())
      extended.subord.push_back(
          {e.strict ? SubordForm{SubordLt{e.lower, e.upper}} : SubordForm{SubordLeq{e.lower, e.upper}},
           Provenance::User, false});
    Closure cl2(extended);
    for (const auto& a : collectLabels(s))
      for (const auto& b : collectLabels(s)) {
        REQUIRE(cl.leq(a, b) == cl2.leq(a, b));
        REQUIRE(cl.lt(a, b) == cl2.lt(a, b));
      }
  }
}

TEST_CASE("scope totality boundary matches classification") {
  Analysis an;
  UdrsStore s = emptyStore(an);
  QuantNp q = addQuantNp(an, s, "P");
  PluralNp p = addPluralNp(an, s, "Q");
  Label atom = an.makeLabel();
  s.conds.push_back({atom, CondAtom{"rain", {}}});
  for (const auto& l : collectLabels(s)) {
    bool defined = scopeOf(s, l).has_value();
    CHECK(defined == (classify(s, l) != ScopeClass::PotentiallyScopeBearing));
  }
  CHECK(classify(s, q.l1) == ScopeClass::ScopeBearing);
  CHECK(classify(s, p.l1) == ScopeClass::PotentiallyScopeBearing);
}
