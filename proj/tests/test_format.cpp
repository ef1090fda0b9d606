#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "scopeforge/core.hpp"
#include "scopeforge/format.hpp"

using namespace scopeforge;

namespace {

UdrsStore negQuantStore(Analysis& an) {
  Label l1 = an.makeLabel(), l11 = an.makeLabel(), l12 = an.makeLabel();
  Label l2 = an.makeLabel(), l21 = an.makeLabel(), l3 = an.makeLabel();
  Referent x = an.makeRef(RefSort::Individual);
  UdrsStore s = emptyStore(an);
  s.conds.push_back({l1, CondImplies{l11, l12}});
  s.conds.push_back({l11, CondIntro{x}});
  s.conds.push_back({l2, CondNeg{l21}});
  s.conds.push_back({l3, CondAtom{"pay_attention", {x}}});
  s.subord.push_back({SubordLt{l11, l1}, Provenance::Lexicon, false});
  s.subord.push_back({SubordLt{l12, l1}, Provenance::Lexicon, false});
  s.subord.push_back({SubordLt{l21, l2}, Provenance::Lexicon, false});
  s.subord.push_back({SubordLeq{l1, an.top()}, Provenance::DomainBound, false});
  s.subord.push_back({SubordLeq{l2, an.top()}, Provenance::DomainBound, false});
  s.subord.push_back({SubordLeq{l3, l21}, Provenance::ClosedFormula, false});
  s.subord.push_back({SubordLeq{l3, l12}, Provenance::ClosedFormula, false});
  return s;
}

}  // namespace

TEST_CASE("canonical print hides structural constraints and names from structure") {
  Analysis an;
  UdrsStore s = negQuantStore(an);
  std::string text = printUdrs(s);
  // The four floating constraints survive; the three child-below-parent
  // ones are implied by the complex conditions and are not repeated.
  int constraint_lines = 0;
  std::istringstream is(text);
  std::string line;
  bool saw_strict = false;
  while (std::getline(is, line)) {
    if (line.find("<=") != std::string::npos) ++constraint_lines;
    if (line.find("<=") == std::string::npos && line.find(" < ") != std::string::npos)
      saw_strict = true;
  }
  CHECK(constraint_lines == 4);
  CHECK_FALSE(saw_strict);
  CHECK(text.find("pay_attention(x1)") != std::string::npos);
  CHECK(text.find("dref x1") != std::string::npos);
  CHECK(text.find("not ") != std::string::npos);
  CHECK(text.find("=>") != std::string::npos);
}

TEST_CASE("isomorphic stores print identically regardless of build order") {
  Analysis an1;
  UdrsStore a = negQuantStore(an1);

  // Same structure, constructed in a different order with different ids.
  Analysis an2;
  Label l3 = an2.makeLabel(), l2 = an2.makeLabel(), l21 = an2.makeLabel();
  Label l1 = an2.makeLabel(), l11 = an2.makeLabel(), l12 = an2.makeLabel();
  Referent x = an2.makeRef(RefSort::Individual);
  UdrsStore b = emptyStore(an2);
  b.conds.push_back({l3, CondAtom{"pay_attention", {x}}});
  b.conds.push_back({l2, CondNeg{l21}});
  b.conds.push_back({l11, CondIntro{x}});
  b.conds.push_back({l1, CondImplies{l11, l12}});
  b.subord.push_back({SubordLeq{l3, l12}, Provenance::ClosedFormula, false});
  b.subord.push_back({SubordLeq{l3, l21}, Provenance::ClosedFormula, false});
  b.subord.push_back({SubordLeq{l2, an2.top()}, Provenance::DomainBound, false});
  b.subord.push_back({SubordLeq{l1, an2.top()}, Provenance::DomainBound, false});
  b.subord.push_back({SubordLt{l21, l2}, Provenance::Lexicon, false});
  b.subord.push_back({SubordLt{l12, l1}, Provenance::Lexicon, false});
  b.subord.push_back({SubordLt{l11, l1}, Provenance::Lexicon, false});

  CHECK(printUdrs(a) == printUdrs(b));
}

TEST_CASE("non-isomorphic stores print differently") {
  Analysis an1;
  UdrsStore a = negQuantStore(an1);
  Analysis an2;
  UdrsStore b = negQuantStore(an2);
  b.subord.push_back({SubordLeq{b.conds[2].label, std::get<CondImplies>(b.conds[0].body).scope},
                      Provenance::User, false});
  CHECK(printUdrs(a) != printUdrs(b));
}

TEST_CASE("parse then print round-trips canonical text byte-exactly") {
  Analysis an;
  UdrsStore s = negQuantStore(an);
  std::string text = printUdrs(s);

  Analysis an2;
  UdrsStore parsed = parseUdrs(text, an2);
  CHECK(printUdrs(parsed) == text);

  // A second round for good measure.
  Analysis an3;
  CHECK(printUdrs(parseUdrs(printUdrs(parsed), an3)) == text);
}

TEST_CASE("identity constraints are folded into the renaming") {
  Analysis an;
  UdrsStore s = emptyStore(an);
  Label la = an.makeLabel(), lb = an.makeLabel();
  Referent y = an.makeRef(RefSort::Individual);
  s.conds.push_back({la, CondIntro{y}});
  s.conds.push_back({lb, CondAtom{"Sekretaerin", {y}}});
  s.subord.push_back({SubordEq{la, lb}, Provenance::Lexicon, false});
  std::string text = printUdrs(s);
  CHECK(text.find(" = ") == std::string::npos);
  // Both conditions anchored at the same canonical label.
  CHECK(text.find("l_1 : dref x1") != std::string::npos);
  CHECK(text.find("l_1 : Sekretaerin(x1)") != std::string::npos);

  Analysis an2;
  UdrsStore parsed = parseUdrs(text, an2);
  CHECK(printUdrs(parsed) == text);
}

TEST_CASE("unresolved slots print as placeholders and round-trip") {
  Analysis an;
  UdrsStore s = emptyStore(an);
  Label l3 = an.makeLabel(), l1 = an.makeLabel(), l12 = an.makeLabel();
  Referent X = an.makeRef(RefSort::Group);
  Referent y = an.makeRef(RefSort::Individual);
  Label l2 = an.makeLabel();
  SlotId slot = an.makeSlot();
  s.conds.push_back({l1, CondIntro{X}});
  s.conds.push_back({l1, CondAtom{"Rechtsanwalt", {X}}});
  s.conds.push_back({l2, CondIntro{y}});
  s.conds.push_back({l2, CondAtom{"Sekretaerin", {y}}});
  s.conds.push_back({l3, CondAtom{"einstellen", {SlotRef{slot}, y}}});
  s.deferred.push_back(DeferredSlot{slot, LsPair{l1, l12}, std::nullopt, std::nullopt});
  s.subord.push_back({SubordLeq{l12, l1}, Provenance::Lexicon, false});
  s.plural_links.push_back({l1, l12});
  s.subord.push_back({SubordLeq{l3, l12}, Provenance::ClosedFormula, false});
  s.subord.push_back({SubordLeq{l3, l2}, Provenance::ClosedFormula, false});
  s.subord.push_back({SubordLeq{l2, an.top()}, Provenance::Lexicon, false});

  std::string text = printUdrs(s);
  CHECK(text.find("einstellen(?1,") != std::string::npos);
  Analysis an2;
  CHECK(printUdrs(parseUdrs(text, an2)) == text);

  // Once the slot is resolved the referent replaces the placeholder.
  UdrsStore resolved = s;
  resolved.deferred[0].trigger = SubordEq{l1, l12};
  resolved.deferred[0].resolved = X;
  std::string text2 = printUdrs(resolved);
  CHECK(text2.find("?1") == std::string::npos);
  CHECK(text2.find("einstellen(X1,") != std::string::npos);
}

TEST_CASE("conditional constraints print and parse recursively") {
  Analysis an;
  UdrsStore s = emptyStore(an);
  Label l1 = an.makeLabel(), l12 = an.makeLabel(), la = an.makeLabel(), lb = an.makeLabel();
  Referent X = an.makeRef(RefSort::Group);
  s.conds.push_back({l1, CondIntro{X}});
  s.conds.push_back({la, CondAtom{"p", {}}});
  s.conds.push_back({lb, CondAtom{"q", {}}});
  s.subord.push_back({SubordLeq{l12, l1}, Provenance::Lexicon, false});
  s.plural_links.push_back({l1, l12});
  s.subord.push_back(
      {SubordCond{SubordLt{l12, l1}, std::nullopt, SubordLeq{l1, an.top()}},
       Provenance::DomainBound, false});
  s.subord.push_back(
      {SubordCond{SubordLt{l12, l1}, SubordLt{lb, la}, SubordLeq{la, l12}},
       Provenance::PrecedenceScope, false});

  std::string text = printUdrs(s);
  CHECK(text.find("-> (") != std::string::npos);
  Analysis an2;
  CHECK(printUdrs(parseUdrs(text, an2)) == text);
}

TEST_CASE("audit table carries provenance tags") {
  Analysis an;
  UdrsStore s = negQuantStore(an);
  std::string audit = printAudit(s);
  CHECK(audit.find("lex\t") != std::string::npos);
  CHECK(audit.find("IV\t") != std::string::npos);
  CHECK(audit.find("V\t") != std::string::npos);
}

TEST_CASE("dot export names every class and draws constraint edges") {
  Analysis an;
  UdrsStore s = negQuantStore(an);
  std::string dot = printDot(s, "before");
  CHECK(dot.find("subgraph cluster_before") != std::string::npos);
  CHECK(dot.find("l_top") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
}
