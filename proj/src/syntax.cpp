#include "scopeforge/syntax.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace scopeforge {

Sign splitValence(Sign lexical) {
  if (!lexical.lexical)
    fail(ErrorCode::ValenceMismatch, "valence split applies to lexical heads");
  if (lexical.head_subcat.empty())
    fail(ErrorCode::ValenceMismatch, "valence split needs a nonempty SUBCAT");
  lexical.subj = {0};
  lexical.comps.clear();
  for (std::size_t i = 1; i < lexical.head_subcat.size(); ++i)
    lexical.comps.push_back(static_cast<int>(i));
  return lexical;
}

namespace {

bool caseMatches(const ArgSpec& spec, const Category& cat) {
  if (!spec.cas) return true;
  return cat.cas && *cat.cas == *spec.cas;
}

Sign saturate(const Sign& head, const Sign& arg, bool as_trace, bool subject) {
  if (subject) {
    if (!head.comps.empty())
      fail(ErrorCode::SaturationError, "subject saturation requires empty complements");
    if (head.subj.empty()) fail(ErrorCode::ValenceMismatch, "no subject position left");
  } else {
    if (head.comps.empty()) fail(ErrorCode::ValenceMismatch, "no complement position left");
  }
  int pos = subject ? head.subj.back() : head.comps.back();
  const SubcatRec& rec = head.head_subcat[pos];

  bool clause_arg = rec.spec.type == ArgType::Clause;
  if (clause_arg) {
    if (as_trace) fail(ErrorCode::ValenceMismatch, "clause arguments do not displace");
    if (arg.cat.head != HeadType::FuncComp)
      fail(ErrorCode::ValenceMismatch, "clause argument must be complementizer-headed");
  } else {
    if (!arg.loc) fail(ErrorCode::ValenceMismatch, "argument does not describe a phrase");
    if (!caseMatches(rec.spec, arg.cat))
      fail(ErrorCode::ValenceMismatch, "argument case does not match the open position");
  }

  Sign out;
  out.cat = head.cat;
  out.lexical = false;
  out.head_subcat = head.head_subcat;
  if (!clause_arg) out.head_subcat[pos].loc = arg.loc;
  out.subj = head.subj;
  out.comps = head.comps;
  if (subject)
    out.subj.pop_back();
  else
    out.comps.pop_back();

  if (as_trace) {
    out.phon = head.phon;
  } else if (clause_arg) {
    out.phon = head.phon + " " + arg.phon;
  } else {
    out.phon = arg.phon + " " + head.phon;
  }

  out.slash = head.slash;
  if (as_trace) {
    out.slash.push_back(SlashRec{arg.loc, rec.spec});
  } else {
    out.slash.insert(out.slash.end(), arg.slash.begin(), arg.slash.end());
  }

  out.udrs = compose(subject ? Schema::HeadSubj : Schema::HeadComp, head, arg);
  out.pending_scope = head.pending_scope;
  out.pending_scope.insert(out.pending_scope.end(), arg.pending_scope.begin(),
                           arg.pending_scope.end());

  if (clause_arg) {
    // Embedded clause content stays below the embedding verb's label.
    out.udrs = addConstraint(out.udrs, SubordLeq{arg.udrs.ls.lmax, head.udrs.ls.lmin},
                             Provenance::ClosedFormula);
    return out;
  }

  out.udrs = wireArgumentSlot(out.udrs, out.head_subcat[pos].spec, *arg.loc);
  out.udrs = addConstraint(out.udrs, closedFormulaConstraint(head.udrs.ls, arg.loc->udrs.ls).form,
                           Provenance::ClosedFormula);

  std::vector<SubcatRec> tail(out.head_subcat.begin() + pos + 1, out.head_subcat.end());
  for (const auto& tc : complementScopeConstraints(*arg.loc, tail, out.slash))
    out.udrs = addConstraint(out.udrs, tc.form, tc.prov);

  if (arg.loc->scope_kind)
    out.pending_scope.push_back(ScopeClient{*arg.loc->scope_kind, arg.loc->udrs.ls});
  return out;
}

}  // namespace

Sign headComp(const Sign& head, const Sign& comp, bool as_trace) {
  return saturate(head, comp, as_trace, false);
}

Sign headSubj(const Sign& head, const Sign& subj, bool as_trace) {
  return saturate(head, subj, as_trace, true);
}

Sign headFiller(const Sign& head, const Sign& filler) {
  auto it = std::find_if(head.slash.begin(), head.slash.end(),
                         [&](const SlashRec& s) { return s.loc == filler.loc; });
  if (it == head.slash.end())
    fail(ErrorCode::NoMatchingSlash, "filler does not match any displaced position");
  Sign out = head;
  out.slash.erase(out.slash.begin() + (it - head.slash.begin()));
  out.phon = filler.phon + " " + head.phon;
  out.udrs = compose(Schema::HeadFiller, head, filler);
  return out;
}

std::vector<std::string> tokenize(const std::string& sentence) {
  std::vector<std::string> out;
  std::istringstream is(sentence);
  std::string tok;
  while (is >> tok) {
    while (!tok.empty() && (tok.back() == '.' || tok.back() == ',' || tok.back() == '!' ||
                            tok.back() == '?'))
      tok.pop_back();
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Phase 1: purely syntactic enumeration over segmented tokens.

struct Segment {
  std::size_t start, len;
  std::string text;
  std::vector<const LexEntry*> entries;
};

std::string decapFirst(const std::string& s) {
  std::string out = s;
  if (!out.empty() && out[0] >= 'A' && out[0] <= 'Z')
    out[0] = static_cast<char>(out[0] - 'A' + 'a');
  return out;
}

std::vector<Segment> segment(const std::vector<std::string>& tokens, const Lexicon& lexicon) {
  std::vector<Segment> segments;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    std::vector<std::string> probe = tokens;
    if (pos == 0) probe[0] = decapFirst(probe[0]);
    std::size_t len = std::max(lexicon.longestMatch(tokens, pos), lexicon.longestMatch(probe, pos));
    if (len == 0)
      fail(ErrorCode::NoParse, "unknown word at position " + std::to_string(pos) + ": '" +
                                   tokens[pos] + "'");
    std::vector<const LexEntry*> entries = lexicon.lookup(tokens, pos, len);
    if (pos == 0) {
      for (const auto* e : lexicon.lookup(probe, pos, len))
        if (std::find(entries.begin(), entries.end(), e) == entries.end()) entries.push_back(e);
    }
    std::string text;
    for (std::size_t k = 0; k < len; ++k) {
      if (k) text += " ";
      text += tokens[pos + k];
    }
    segments.push_back(Segment{pos, len, text, entries});
    pos += len;
  }
  return segments;
}

struct SlashHyp {
  int trace_id;
  int subcat_pos;
  std::size_t trace_seg;  // segment index of the head when the trace was consumed
  ArgSpec spec;
};

struct PItem {
  enum Kind { Dp, NounCat, Verb, Func, Clause } kind;
  Category cat;
  const LexEntry* entry = nullptr;  // lexical anchor (verb/func/det)
  int comps_consumed = 0;
  bool subj_done = false;
  std::vector<SlashHyp> slash;
  int node = -1;
};

struct Builder {
  std::vector<DerivNode> nodes;
  int next_trace = 1;

  int add(DerivNode n) {
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
  }
};

int totalComps(const LexEntry* verb) { return static_cast<int>(verb->subcat.size()) - 1; }

bool compsDone(const PItem& it) { return it.comps_consumed >= totalComps(it.entry); }

// Next open complement position (base order, innermost first).
int nextCompPos(const PItem& it) {
  return static_cast<int>(it.entry->subcat.size()) - 1 - it.comps_consumed;
}

bool saturated(const PItem& it) { return compsDone(it) && it.subj_done; }

std::string dumpNode(const std::vector<DerivNode>& nodes, int id,
                     const std::map<int, int>& trace_numbers) {
  const DerivNode& n = nodes[id];
  auto dpText = [&](const DerivNode& dp) {
    std::string cas = "";
    const LexEntry* det = dp.entry;
    if (det->category.cas) {
      switch (*det->category.cas) {
        case Case::Nom: cas = "nom"; break;
        case Case::Dat: cas = "dat"; break;
        case Case::Acc: cas = "acc"; break;
      }
    }
    std::string phon = dp.kind == DerivNode::DetNoun
                           ? det->form + " " + dp.entry2->form
                           : det->form;
    return "[DP:" + cas + " " + phon + "]";
  };
  switch (n.kind) {
    case DerivNode::LeafVerb:
    case DerivNode::LeafFunc:
      return n.entry->form;
    case DerivNode::LeafDp:
    case DerivNode::DetNoun:
      return dpText(n);
    case DerivNode::HeadComp:
    case DerivNode::HeadSubj: {
      std::string name = n.kind == DerivNode::HeadComp ? "head-comp" : "head-subj";
      std::string headText = dumpNode(nodes, n.head, trace_numbers);
      if (n.dep_is_trace) {
        return "[" + name + " t_" + std::to_string(trace_numbers.at(n.trace_id)) + " " +
               headText + "]";
      }
      const DerivNode& dep = nodes[n.dep];
      std::string depText = dumpNode(nodes, n.dep, trace_numbers);
      bool clause_right = dep.kind == DerivNode::FuncComb;
      if (clause_right) return "[" + name + " " + headText + " " + depText + "]";
      return "[" + name + " " + depText + " " + headText + "]";
    }
    case DerivNode::HeadFiller: {
      std::string depText = dumpNode(nodes, n.dep, trace_numbers);
      depText += "_" + std::to_string(trace_numbers.at(n.trace_id));
      return "[head-filler " + depText + " " + dumpNode(nodes, n.head, trace_numbers) + "]";
    }
    case DerivNode::FuncComb:
      return "[func " + nodes[n.head].entry->form + " " +
             dumpNode(nodes, n.dep, trace_numbers) + "]";
  }
  return "?";
}

void collectFillerOrder(const std::vector<DerivNode>& nodes, int id, std::vector<int>& order) {
  const DerivNode& n = nodes[id];
  switch (n.kind) {
    case DerivNode::HeadFiller:
      order.push_back(n.trace_id);
      collectFillerOrder(nodes, n.dep, order);
      collectFillerOrder(nodes, n.head, order);
      break;
    case DerivNode::HeadComp:
    case DerivNode::HeadSubj:
      if (!n.dep_is_trace) {
        const DerivNode& dep = nodes[n.dep];
        bool clause_right = dep.kind == DerivNode::FuncComb;
        if (clause_right) {
          collectFillerOrder(nodes, n.head, order);
          collectFillerOrder(nodes, n.dep, order);
        } else {
          collectFillerOrder(nodes, n.dep, order);
          collectFillerOrder(nodes, n.head, order);
        }
      } else {
        collectFillerOrder(nodes, n.head, order);
      }
      break;
    case DerivNode::FuncComb:
      collectFillerOrder(nodes, n.dep, order);
      break;
    default:
      break;
  }
}

bool isDetKind(HeadType t) {
  return t == HeadType::DetQuant || t == HeadType::DetIndef || t == HeadType::DetDefPlural;
}

}  // namespace

std::vector<Derivation> parse(const std::vector<std::string>& tokens, const Lexicon& lexicon) {
  if (tokens.empty()) fail(ErrorCode::NoParse, "empty input");
  std::vector<Segment> segments = segment(tokens, lexicon);
  const int m = static_cast<int>(segments.size());

  Builder b;
  // cells[i][j] covers segments [i, j)
  std::vector<std::vector<std::vector<PItem>>> cells(m + 1,
                                                     std::vector<std::vector<PItem>>(m + 1));

  auto traceClosure = [&](int i, int j) {
    auto& cell = cells[i][j];
    for (std::size_t q = 0; q < cell.size(); ++q) {
      PItem it = cell[q];
      if (it.kind != PItem::Verb) continue;
      if (!compsDone(it)) {
        int pos = nextCompPos(it);
        const ArgSpec& spec = it.entry->subcat[pos];
        if (spec.type == ArgType::Dp) {
          PItem next = it;
          next.comps_consumed++;
          SlashHyp hyp{b.next_trace++, pos, static_cast<std::size_t>(i), spec};
          next.slash.push_back(hyp);
          DerivNode n;
          n.kind = DerivNode::HeadComp;
          n.start = i;
          n.end = j;
          n.head = it.node;
          n.dep_is_trace = true;
          n.trace_id = hyp.trace_id;
          n.subcat_pos = pos;
          next.node = b.add(n);
          cell.push_back(next);
        }
      } else if (!it.subj_done) {
        const ArgSpec& spec = it.entry->subcat[0];
        if (spec.type == ArgType::Dp) {
          PItem next = it;
          next.subj_done = true;
          SlashHyp hyp{b.next_trace++, 0, static_cast<std::size_t>(i), spec};
          next.slash.push_back(hyp);
          DerivNode n;
          n.kind = DerivNode::HeadSubj;
          n.start = i;
          n.end = j;
          n.head = it.node;
          n.dep_is_trace = true;
          n.trace_id = hyp.trace_id;
          n.subcat_pos = 0;
          next.node = b.add(n);
          cell.push_back(next);
        }
      }
    }
  };

  for (int i = 0; i < m; ++i) {
    for (const LexEntry* e : segments[i].entries) {
      PItem it;
      it.entry = e;
      it.cat = e->category;
      switch (e->category.head) {
        case HeadType::Verb: {
          it.kind = PItem::Verb;
          DerivNode n;
          n.kind = DerivNode::LeafVerb;
          n.start = i;
          n.end = i + 1;
          n.entry = e;
          it.node = b.add(n);
          break;
        }
        case HeadType::FuncComp:
        case HeadType::FuncVfin:
        case HeadType::Neg: {
          it.kind = PItem::Func;
          DerivNode n;
          n.kind = DerivNode::LeafFunc;
          n.start = i;
          n.end = i + 1;
          n.entry = e;
          it.node = b.add(n);
          break;
        }
        case HeadType::Noun: {
          it.kind = PItem::NounCat;
          DerivNode n;
          n.kind = DerivNode::LeafDp;  // placeholder; nouns never stand alone
          n.start = i;
          n.end = i + 1;
          n.entry = e;
          it.node = b.add(n);
          break;
        }
        default: {
          bool complete = e->category.head == HeadType::ProperName ||
                          e->category.head == HeadType::Pronoun || e->standalone_np;
          if (!complete && isDetKind(e->category.head)) {
            it.kind = PItem::NounCat;  // determiner awaiting its noun
            DerivNode n;
            n.kind = DerivNode::LeafDp;
            n.start = i;
            n.end = i + 1;
            n.entry = e;
            it.node = b.add(n);
            // stored distinctly below via DetNoun combination
            it.cat = e->category;
            it.kind = PItem::NounCat;
            cells[i][i + 1].push_back(it);
            continue;
          }
          it.kind = PItem::Dp;
          DerivNode n;
          n.kind = DerivNode::LeafDp;
          n.start = i;
          n.end = i + 1;
          n.entry = e;
          it.node = b.add(n);
          break;
        }
      }
      cells[i][i + 1].push_back(it);
    }
    traceClosure(i, i + 1);
  }

  for (int len = 2; len <= m; ++len) {
    for (int i = 0; i + len <= m; ++i) {
      int j = i + len;
      auto& cell = cells[i][j];
      for (int k = i + 1; k < j; ++k) {
        for (const PItem& left : cells[i][k]) {
          for (const PItem& right : cells[k][j]) {
            // Determiner + noun.
            if (left.kind == PItem::NounCat && isDetKind(left.entry->category.head) &&
                right.kind == PItem::NounCat && right.entry->category.head == HeadType::Noun) {
              if (left.entry->category.num && right.entry->category.num &&
                  *left.entry->category.num != *right.entry->category.num)
                continue;
              PItem np;
              np.kind = PItem::Dp;
              np.cat = left.entry->category;
              np.entry = left.entry;
              DerivNode n;
              n.kind = DerivNode::DetNoun;
              n.start = i;
              n.end = j;
              n.entry = left.entry;
              n.entry2 = right.entry;
              np.node = b.add(n);
              cell.push_back(np);
            }
            // Overt complement (DP to the left of the verbal head).
            if (left.kind == PItem::Dp && right.kind == PItem::Verb && !compsDone(right)) {
              int pos = nextCompPos(right);
              const ArgSpec& spec = right.entry->subcat[pos];
              if (spec.type == ArgType::Dp && caseMatches(spec, left.cat)) {
                PItem next = right;
                next.comps_consumed++;
                next.slash.insert(next.slash.end(), left.slash.begin(), left.slash.end());
                DerivNode n;
                n.kind = DerivNode::HeadComp;
                n.start = i;
                n.end = j;
                n.head = right.node;
                n.dep = left.node;
                n.subcat_pos = pos;
                next.node = b.add(n);
                cell.push_back(next);
              }
            }
            // Clause complement (complementizer phrase to the right).
            if (left.kind == PItem::Verb && !compsDone(left) && right.kind == PItem::Clause &&
                right.cat.head == HeadType::FuncComp) {
              int pos = nextCompPos(left);
              const ArgSpec& spec = left.entry->subcat[pos];
              if (spec.type == ArgType::Clause) {
                PItem next = left;
                next.comps_consumed++;
                next.slash.insert(next.slash.end(), right.slash.begin(), right.slash.end());
                DerivNode n;
                n.kind = DerivNode::HeadComp;
                n.start = i;
                n.end = j;
                n.head = left.node;
                n.dep = right.node;
                n.subcat_pos = pos;
                next.node = b.add(n);
                cell.push_back(next);
              }
            }
            // Subject.
            if (left.kind == PItem::Dp && right.kind == PItem::Verb && compsDone(right) &&
                !right.subj_done) {
              const ArgSpec& spec = right.entry->subcat[0];
              if (spec.type == ArgType::Dp && caseMatches(spec, left.cat)) {
                PItem next = right;
                next.subj_done = true;
                next.slash.insert(next.slash.end(), left.slash.begin(), left.slash.end());
                DerivNode n;
                n.kind = DerivNode::HeadSubj;
                n.start = i;
                n.end = j;
                n.head = right.node;
                n.dep = left.node;
                n.subcat_pos = 0;
                next.node = b.add(n);
                cell.push_back(next);
              }
            }
            // Filler discharging a displaced argument. Blocked when the
            // filler sits exactly where the trace was hypothesized, which
            // would be a string-vacuous movement.
            if (left.kind == PItem::Dp &&
                (right.kind == PItem::Verb || right.kind == PItem::Clause)) {
              for (std::size_t si = 0; si < right.slash.size(); ++si) {
                const SlashHyp& hyp = right.slash[si];
                if (!caseMatches(hyp.spec, left.cat)) continue;
                if (hyp.trace_seg == static_cast<std::size_t>(k)) continue;
                PItem next = right;
                next.slash.erase(next.slash.begin() + si);
                next.slash.insert(next.slash.end(), left.slash.begin(), left.slash.end());
                DerivNode n;
                n.kind = DerivNode::HeadFiller;
                n.start = i;
                n.end = j;
                n.head = right.node;
                n.dep = left.node;
                n.trace_id = hyp.trace_id;
                next.node = b.add(n);
                cell.push_back(next);
              }
            }
            // Functional head plus saturated verbal projection.
            if (left.kind == PItem::Func && right.kind == PItem::Verb && saturated(right)) {
              VForm have = right.entry->category.vform.value_or(VForm::Inf);
              if (left.entry->comp_vform && *left.entry->comp_vform == have) {
                PItem next;
                next.kind = PItem::Clause;
                next.cat = left.entry->category;
                next.entry = left.entry;
                next.slash = right.slash;
                DerivNode n;
                n.kind = DerivNode::FuncComb;
                n.start = i;
                n.end = j;
                n.head = left.node;
                n.dep = right.node;
                next.node = b.add(n);
                cell.push_back(next);
              }
            }
          }
        }
      }
      traceClosure(i, j);
    }
  }

  std::vector<Derivation> out;
  for (const PItem& it : cells[0][m]) {
    if (it.kind != PItem::Clause) continue;
    if (!it.slash.empty()) continue;
    Derivation d;
    d.nodes = b.nodes;
    d.root = it.node;
    std::vector<int> filler_order;
    collectFillerOrder(d.nodes, d.root, filler_order);
    std::map<int, int> numbers;
    for (int tid : filler_order)
      if (!numbers.count(tid)) numbers[tid] = static_cast<int>(numbers.size()) + 1;
    d.dump = dumpNode(d.nodes, d.root, numbers);
    out.push_back(std::move(d));
  }
  if (out.empty()) {
    std::string have;
    for (const auto& s : segments) have += "[" + s.text + "] ";
    fail(ErrorCode::NoParse, "no complete derivation over segments: " + have);
  }
  std::sort(out.begin(), out.end(),
            [](const Derivation& a, const Derivation& b2) { return a.dump < b2.dump; });
  return out;
}

namespace {

struct Replayer {
  const Derivation* d;
  Analysis* analysis;
  std::map<int, Sign> memo;
  std::map<int, int> trace_to_filler_dp;  // trace id -> DP node id
  std::vector<NpOccurrence>* nps;
  std::vector<bool> np_recorded;

  Sign& realizeNode(int id) {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const DerivNode& n = d->nodes[id];
    Sign sign;
    switch (n.kind) {
      case DerivNode::LeafDp:
        sign = instantiate(*n.entry, *analysis);
        recordNp(id, sign);
        break;
      case DerivNode::DetNoun: {
        Sign det = instantiate(*n.entry, *analysis);
        Sign noun = instantiate(*n.entry2, *analysis);
        sign = makeNounPhrase(det, noun);
        recordNp(id, sign);
        break;
      }
      case DerivNode::LeafVerb:
        sign = splitValence(instantiate(*n.entry, *analysis));
        break;
      case DerivNode::LeafFunc:
        sign = instantiate(*n.entry, *analysis);
        break;
      case DerivNode::HeadComp:
      case DerivNode::HeadSubj: {
        Sign& head = realizeNode(n.head);
        const Sign* arg;
        if (n.dep_is_trace) {
          int dpNode = trace_to_filler_dp.at(n.trace_id);
          arg = &realizeNode(dpNode);
        } else {
          arg = &realizeNode(n.dep);
        }
        sign = n.kind == DerivNode::HeadComp ? headComp(head, *arg, n.dep_is_trace)
                                             : headSubj(head, *arg, n.dep_is_trace);
        break;
      }
      case DerivNode::HeadFiller: {
        Sign& head = realizeNode(n.head);
        Sign& filler = realizeNode(n.dep);
        sign = headFiller(head, filler);
        break;
      }
      case DerivNode::FuncComb: {
        Sign& func = realizeNode(n.head);
        Sign& comp = realizeNode(n.dep);
        sign = applyFunctionalHead(func, comp);
        break;
      }
    }
    auto [pos, inserted] = memo.emplace(id, std::move(sign));
    (void)inserted;
    return pos->second;
  }

  void recordNp(int id, const Sign& sign) {
    if (np_recorded[id]) return;
    np_recorded[id] = true;
    const DerivNode& n = d->nodes[id];
    std::optional<ScopeClientKind> kind;
    if (sign.loc) kind = sign.loc->scope_kind;
    nps->push_back(NpOccurrence{sign.phon, sign.udrs.ls, kind, n.start});
  }
};

void mapTraces(const Derivation& d, std::map<int, int>& out) {
  for (const auto& n : d.nodes)
    if (n.kind == DerivNode::HeadFiller) out[n.trace_id] = n.dep;
}

}  // namespace

Realization realize(const Derivation& d, Analysis& analysis) {
  Realization r;
  Replayer rp;
  rp.d = &d;
  rp.analysis = &analysis;
  rp.nps = &r.nps;
  rp.np_recorded.assign(d.nodes.size(), false);
  mapTraces(d, rp.trace_to_filler_dp);
  Sign root = rp.realizeNode(d.root);
  r.root = finalizeRoot(std::move(root));
  std::sort(r.nps.begin(), r.nps.end(),
            [](const NpOccurrence& a, const NpOccurrence& b) { return a.position < b.position; });
  return r;
}

}  // namespace scopeforge
