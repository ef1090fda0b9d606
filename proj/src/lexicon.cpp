#include "scopeforge/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace scopeforge {

namespace {

std::vector<std::string> splitTokens(const std::string& form) {
  std::vector<std::string> out;
  std::istringstream is(form);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

constexpr int kTopLabel = -1;

}  // namespace

const char* headTypeName(HeadType t) {
  switch (t) {
    case HeadType::Verb: return "verb";
    case HeadType::DetQuant: return "quant";
    case HeadType::DetIndef: return "indef";
    case HeadType::DetDefPlural: return "def_plural";
    case HeadType::Noun: return "noun";
    case HeadType::ProperName: return "proper_name";
    case HeadType::FuncComp: return "comp";
    case HeadType::FuncVfin: return "vfin";
    case HeadType::Neg: return "neg";
    case HeadType::Pronoun: return "pronoun";
  }
  return "?";
}

ProtoStore templateFor(const LexEntry& entry) {
  if (entry.custom_template) return *entry.custom_template;
  ProtoStore p;
  using PC = ProtoStore::PCond;
  using PK = ProtoStore::PConstraint;
  switch (entry.category.head) {
    case HeadType::Verb: {
      // One relation condition; each DP argument is a deferred slot wired
      // to the corresponding SUBCAT position. The upper label stays bare
      // until the clause's functional head identifies it with the domain.
      PC atom{0, PC::Atom, entry.rel, {}, -1, -1, RefSort::Individual, -1, -1};
      for (std::size_t i = 0; i < entry.subcat.size(); ++i)
        if (entry.subcat[i].type == ArgType::Dp)
          atom.args.push_back({-1, static_cast<int>(i)});
      p.conds.push_back(atom);
      p.ls_max = 1;
      p.ls_min = 0;
      break;
    }
    case HeadType::DetQuant: {
      p.conds.push_back({0, PC::Implies, "", {}, -1, -1, RefSort::Individual, 1, 2});
      p.conds.push_back({1, PC::Intro, "", {}, 0, -1, RefSort::Individual, -1, -1});
      p.subord.push_back({PK::Lt, 1, 0});
      p.subord.push_back({PK::Lt, 2, 0});
      p.ls_max = 0;
      p.ls_min = 2;
      break;
    }
    case HeadType::DetIndef: {
      p.conds.push_back({0, PC::Intro, "", {}, 0, -1, RefSort::Individual, -1, -1});
      p.subord.push_back({PK::Leq, 0, kTopLabel});
      p.ls_max = 0;
      p.ls_min = 0;
      break;
    }
    case HeadType::DetDefPlural: {
      p.conds.push_back({0, PC::Intro, "", {}, 0, -1, RefSort::Group, -1, -1});
      if (entry.card)
        p.conds.push_back({0, PC::Atom, "card=" + std::to_string(*entry.card),
                           {{0, -1}}, -1, -1, RefSort::Individual, -1, -1});
      p.subord.push_back({PK::Leq, 1, 0});
      p.plural_links.push_back({0, 1});
      p.ls_max = 0;
      p.ls_min = 1;
      break;
    }
    case HeadType::ProperName: {
      p.conds.push_back({kTopLabel, PC::Intro, "", {}, 0, -1, RefSort::Individual, -1, -1});
      p.conds.push_back({kTopLabel, PC::Atom, entry.rel, {{0, -1}}, -1, -1,
                         RefSort::Individual, -1, -1});
      p.ls_max = kTopLabel;
      p.ls_min = kTopLabel;
      break;
    }
    case HeadType::Pronoun: {
      p.conds.push_back({kTopLabel, PC::Intro, "", {}, 0, -1, RefSort::Individual, -1, -1});
      p.ls_max = kTopLabel;
      p.ls_min = kTopLabel;
      break;
    }
    case HeadType::Noun: {
      // Predicate over whatever referent the determiner introduces; the
      // argument stays a slot until the NP is assembled.
      PC atom{0, PC::Atom, entry.rel, {}, -1, -1, RefSort::Individual, -1, -1};
      atom.args.push_back({-1, 0});
      p.conds.push_back(atom);
      p.ls_max = 0;
      p.ls_min = 0;
      break;
    }
    case HeadType::FuncComp:
    case HeadType::FuncVfin: {
      p.ls_max = kTopLabel;
      p.ls_min = kTopLabel;
      break;
    }
    case HeadType::Neg: {
      p.conds.push_back({0, PC::Neg, "", {}, -1, -1, RefSort::Individual, 1, -1});
      p.subord.push_back({PK::Lt, 1, 0});
      p.ls_max = 0;
      p.ls_min = 1;
      break;
    }
  }
  return p;
}

Sign instantiate(const LexEntry& entry, Analysis& analysis) {
  ProtoStore proto = templateFor(entry);
  Sign sign;
  sign.cat = entry.category;
  sign.phon = entry.form;
  sign.lexical = true;
  sign.udrs = emptyStore(analysis);

  std::map<int, Label> labels;
  auto label = [&](int id) -> Label {
    if (id == kTopLabel) return analysis.top();
    auto it = labels.find(id);
    if (it != labels.end()) return it->second;
    Label l = analysis.makeLabel();
    labels.emplace(id, l);
    return l;
  };

  // Referent sorts come from the declaring conditions.
  std::map<int, RefSort> ref_sorts;
  for (const auto& c : proto.conds) {
    if (c.kind == ProtoStore::PCond::Intro) ref_sorts[c.ref] = c.sort;
    if (c.kind == ProtoStore::PCond::Member) {
      ref_sorts[c.ref] = RefSort::Individual;
      ref_sorts[c.ref2] = RefSort::Group;
    }
  }
  std::map<int, Referent> refs;
  auto ref = [&](int id) -> Referent {
    auto it = refs.find(id);
    if (it != refs.end()) return it->second;
    RefSort sort = ref_sorts.count(id) ? ref_sorts[id] : RefSort::Individual;
    Referent r = analysis.makeRef(sort);
    refs.emplace(id, r);
    return r;
  };

  // One deferred slot per slot placeholder; verb placeholders map onto the
  // SUBCAT positions.
  std::map<int, SlotId> slots;
  auto slot = [&](int idx) -> SlotId {
    auto it = slots.find(idx);
    if (it != slots.end()) return it->second;
    SlotId id = analysis.makeSlot();
    slots.emplace(idx, id);
    sign.udrs.deferred.push_back(DeferredSlot{id, std::nullopt, std::nullopt, std::nullopt});
    return id;
  };

  for (const auto& c : proto.conds) {
    Condition cond;
    cond.label = label(c.label);
    switch (c.kind) {
      case ProtoStore::PCond::Atom: {
        CondAtom atom{c.rel, {}};
        for (const auto& a : c.args) {
          if (a.slot >= 0)
            atom.args.push_back(SlotRef{slot(a.slot)});
          else
            atom.args.push_back(ref(a.ref));
        }
        cond.body = std::move(atom);
        break;
      }
      case ProtoStore::PCond::Intro:
        cond.body = CondIntro{ref(c.ref)};
        break;
      case ProtoStore::PCond::Implies:
        cond.body = CondImplies{label(c.child1), label(c.child2)};
        break;
      case ProtoStore::PCond::Neg:
        cond.body = CondNeg{label(c.child1)};
        break;
      case ProtoStore::PCond::Diamond:
        cond.body = CondDiamond{label(c.child1), label(c.child2)};
        break;
      case ProtoStore::PCond::Gen:
        cond.body = CondGen{label(c.child1), label(c.child2)};
        break;
      case ProtoStore::PCond::Member:
        cond.body = CondMember{ref(c.ref), ref(c.ref2)};
        break;
    }
    sign.udrs.conds.push_back(std::move(cond));
  }
  for (const auto& k : proto.subord) {
    SubordForm form;
    switch (k.kind) {
      case ProtoStore::PConstraint::Leq: form = SubordLeq{label(k.lower), label(k.upper)}; break;
      case ProtoStore::PConstraint::Lt: form = SubordLt{label(k.lower), label(k.upper)}; break;
      case ProtoStore::PConstraint::Eq: form = SubordEq{label(k.lower), label(k.upper)}; break;
    }
    sign.udrs.subord.push_back({form, Provenance::Lexicon, false});
  }
  for (const auto& [mx, mn] : proto.plural_links)
    sign.udrs.plural_links.push_back({label(mx), label(mn)});
  sign.udrs.ls = LsPair{label(proto.ls_max), label(proto.ls_min)};

  // Verbs carry SUBCAT as a head feature; slot ids attach to the positions.
  if (entry.category.head == HeadType::Verb) {
    for (std::size_t i = 0; i < entry.subcat.size(); ++i) {
      ArgSpec spec = entry.subcat[i];
      if (spec.type == ArgType::Dp && slots.count(static_cast<int>(i)))
        spec.slot = slots[static_cast<int>(i)];
      sign.head_subcat.push_back(SubcatRec{spec, nullptr});
    }
  }

  // Negation-bearing functional heads carry their scope unit with them.
  if (entry.category.head == HeadType::Neg)
    sign.pending_scope.push_back(ScopeClient{ScopeClientKind::Negation, sign.udrs.ls});

  // Complete DPs get their shared content record immediately.
  bool complete_dp = entry.category.head == HeadType::ProperName ||
                     entry.category.head == HeadType::Pronoun ||
                     (entry.standalone_np &&
                      (entry.category.head == HeadType::DetQuant ||
                       entry.category.head == HeadType::DetIndef ||
                       entry.category.head == HeadType::DetDefPlural));
  if (complete_dp) {
    std::optional<ScopeClientKind> kind;
    if (entry.category.head == HeadType::DetQuant) kind = ScopeClientKind::Quant;
    if (entry.category.head == HeadType::DetDefPlural) kind = ScopeClientKind::Plural;
    sign.loc = std::make_shared<LocData>(LocData{sign.cat, sign.udrs, sign.phon, kind});
  }

  checkConsistent(sign.udrs);
  return sign;
}

namespace {

using nlohmann::json;

[[noreturn]] void schemaError(std::size_t index, const std::string& field,
                              const std::string& what) {
  fail(ErrorCode::SchemaError,
       "lexicon entry " + std::to_string(index) + ", field '" + field + "': " + what);
}

HeadType parseKind(std::size_t i, const std::string& s) {
  if (s == "verb") return HeadType::Verb;
  if (s == "quant") return HeadType::DetQuant;
  if (s == "indef") return HeadType::DetIndef;
  if (s == "def_plural") return HeadType::DetDefPlural;
  if (s == "noun") return HeadType::Noun;
  if (s == "proper_name") return HeadType::ProperName;
  if (s == "comp") return HeadType::FuncComp;
  if (s == "vfin") return HeadType::FuncVfin;
  if (s == "neg") return HeadType::Neg;
  if (s == "pronoun") return HeadType::Pronoun;
  schemaError(i, "kind", "unknown kind '" + s + "'");
}

Case parseCase(std::size_t i, const std::string& s) {
  if (s == "nom") return Case::Nom;
  if (s == "dat") return Case::Dat;
  if (s == "acc") return Case::Acc;
  schemaError(i, "case", "unknown case '" + s + "'");
}

Num parseNum(std::size_t i, const std::string& s) {
  if (s == "sg") return Num::Sg;
  if (s == "pl") return Num::Pl;
  schemaError(i, "num", "unknown number '" + s + "'");
}

VForm parseVForm(std::size_t i, const std::string& s) {
  if (s == "fin") return VForm::Fin;
  if (s == "inf") return VForm::Inf;
  schemaError(i, "vform", "unknown vform '" + s + "'");
}

LexEntry parseEntry(std::size_t i, const json& j) {
  LexEntry e;
  if (!j.contains("form") || !j["form"].is_string())
    schemaError(i, "form", "required string");
  e.form = j["form"].get<std::string>();
  e.tokens = splitTokens(e.form);
  if (e.tokens.empty()) schemaError(i, "form", "must contain at least one token");
  if (!j.contains("kind") || !j["kind"].is_string())
    schemaError(i, "kind", "required string");
  e.category.head = parseKind(i, j["kind"].get<std::string>());
  if (j.contains("case")) e.category.cas = parseCase(i, j["case"].get<std::string>());
  if (j.contains("num")) e.category.num = parseNum(i, j["num"].get<std::string>());
  if (j.contains("vform")) e.category.vform = parseVForm(i, j["vform"].get<std::string>());
  if (j.contains("comp_vform")) e.comp_vform = parseVForm(i, j["comp_vform"].get<std::string>());
  if (j.contains("rel")) e.rel = j["rel"].get<std::string>();
  if (j.contains("card")) {
    if (!j["card"].is_number_integer() || j["card"].get<int>() <= 0)
      schemaError(i, "card", "must be a positive integer");
    e.card = j["card"].get<int>();
  }
  if (j.contains("standalone")) e.standalone_np = j["standalone"].get<bool>();
  if (j.contains("subcat")) {
    if (!j["subcat"].is_array()) schemaError(i, "subcat", "must be a list");
    for (const auto& a : j["subcat"]) {
      ArgSpec spec;
      std::string type = a.value("type", "dp");
      if (type == "dp")
        spec.type = ArgType::Dp;
      else if (type == "clause")
        spec.type = ArgType::Clause;
      else
        schemaError(i, "subcat.type", "unknown argument type '" + type + "'");
      if (a.contains("case")) spec.cas = parseCase(i, a["case"].get<std::string>());
      if (a.contains("select")) {
        std::string sel = a["select"].get<std::string>();
        if (sel == "collective")
          spec.select = PluralSelect::Collective;
        else if (sel == "distributive")
          spec.select = PluralSelect::Distributive;
        else
          schemaError(i, "subcat.select", "unknown selection '" + sel + "'");
      }
      e.subcat.push_back(spec);
    }
  }

  switch (e.category.head) {
    case HeadType::Verb:
      if (!e.category.vform) schemaError(i, "vform", "verbs carry a vform");
      if (e.rel.empty()) schemaError(i, "rel", "verbs carry a predicate name");
      if (e.subcat.empty()) schemaError(i, "subcat", "verbs subcategorize at least one DP");
      break;
    case HeadType::DetQuant:
    case HeadType::DetIndef:
    case HeadType::DetDefPlural:
      if (!e.category.num) schemaError(i, "num", "determiners carry a number");
      break;
    case HeadType::Noun:
      if (e.rel.empty()) schemaError(i, "rel", "nouns carry a predicate name");
      break;
    case HeadType::ProperName:
      if (e.rel.empty()) e.rel = e.form;
      break;
    case HeadType::FuncComp:
    case HeadType::FuncVfin:
    case HeadType::Neg:
      if (!e.comp_vform) schemaError(i, "comp_vform", "functional heads select a vform");
      break;
    case HeadType::Pronoun:
      break;
  }
  return e;
}

}  // namespace

Lexicon parseLexiconJson(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::SchemaError, std::string("lexicon is not valid JSON: ") + e.what());
  }
  if (!doc.contains("entries") || !doc["entries"].is_array())
    fail(ErrorCode::SchemaError, "lexicon needs a top-level 'entries' list");
  Lexicon lex;
  std::size_t i = 0;
  for (const auto& j : doc["entries"]) {
    LexEntry entry = parseEntry(i, j);
    // Validate the template: a dry-run instantiation must be consistent.
    Analysis probe;
    try {
      instantiate(entry, probe);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::InconsistentStore)
        fail(ErrorCode::InconsistentTemplate,
             "entry '" + entry.form + "': template subordination is cyclic");
      throw;
    }
    lex.add(std::move(entry));
    ++i;
  }
  return lex;
}

Lexicon loadLexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::SchemaError, "cannot open lexicon file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parseLexiconJson(ss.str());
}

std::vector<const LexEntry*> Lexicon::lookup(const std::vector<std::string>& tokens,
                                             std::size_t start, std::size_t len) const {
  std::vector<const LexEntry*> out;
  for (const auto& e : entries_) {
    if (e.tokens.size() != len) continue;
    bool ok = true;
    for (std::size_t k = 0; k < len; ++k)
      if (e.tokens[k] != tokens[start + k]) {
        ok = false;
        break;
      }
    if (ok) out.push_back(&e);
  }
  return out;
}

std::size_t Lexicon::longestMatch(const std::vector<std::string>& tokens,
                                  std::size_t start) const {
  std::size_t best = 0;
  for (const auto& e : entries_) {
    std::size_t len = e.tokens.size();
    if (len <= best || start + len > tokens.size()) continue;
    bool ok = true;
    for (std::size_t k = 0; k < len; ++k)
      if (e.tokens[k] != tokens[start + k]) {
        ok = false;
        break;
      }
    if (ok) best = len;
  }
  return best;
}

}  // namespace scopeforge
