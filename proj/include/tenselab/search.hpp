#pragma once

// Bounded proof search over macro rules.
//
// The primitive calculus is too granular to search directly: every logical
// step would need its weakening scaffold spelled out. The macro rules used
// here are the monotone variants that keep their principal formula, so a
// branch only ever grows (except that the intuitionistic engine resets the
// succedent when it commits to a right formula). Each macro step maps to a
// single primitive node under the zone checker, which is what makes the
// final re-emission cheap.
//
// Fairness is round-based. A round lists every activity the current sequent
// offers, in a fixed canonical order; the engine walks the list, skips the
// entries its progress rules exclude, and rebuilds the round when the list
// runs out. forall_l is throttled to one fresh witness per principal per
// round, otherwise large pools starve the structural rules. An impl_l whose
// premisses both stay open is deferred to the end of its round and fired
// only if nothing else did: forks are the one source of duplicated work, so
// they go last, but never later than the round that would otherwise stall.
// A full round in which nothing fires, deferred forks included, means the
// branch is saturated.
//
// Fuel counts applied macro steps, not skips. Running out of fuel, dead
// ending, or saturating all produce an Exhausted result; `saturated` tells
// the two apart, and the branch report carries what was explored.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "labelled.hpp"

namespace tenselab {

enum class MacroKind { ImplL, ImplR, ForallL, ForallR, BoxL, BoxR, BBoxL, BBoxR };

inline const char* macro_name(MacroKind k) {
  switch (k) {
    case MacroKind::ImplL: return "impl_l";
    case MacroKind::ImplR: return "impl_r";
    case MacroKind::ForallL: return "forall_l";
    case MacroKind::ForallR: return "forall_r";
    case MacroKind::BoxL: return "box_l";
    case MacroKind::BoxR: return "box_r";
    case MacroKind::BBoxL: return "bbox_l";
    case MacroKind::BBoxR: return "bbox_r";
  }
  return "?";
}

inline bool is_left_kind(MacroKind k) {
  return k == MacroKind::ImplL || k == MacroKind::ForallL || k == MacroKind::BoxL ||
         k == MacroKind::BBoxL;
}

inline bool is_fresh_kind(MacroKind k) {
  return k == MacroKind::ForallR || k == MacroKind::BoxR || k == MacroKind::BBoxR;
}

// One applicable rule instance. `witness` is the forall_l instantiation;
// `peer` is the far end of the relational atom for box_l / bbox_l and the
// eigensymbol for the fresh rules (empty means: allocate one).
struct Activity {
  MacroKind kind;
  LFm principal;
  Fm witness;
  std::string peer;
};

struct SearchConfig {
  long long fuel = 1000;
  enum class Pool { Standard, HintsOnly } pool = Pool::Standard;
  std::vector<Fm> hints;
  bool trace = false;
};

namespace search_detail {

inline void closed_subformulas_into(const Fm& f, FmSet& out) {
  if (!f) return;
  if (f->dangling == 0) out.insert(f);
  closed_subformulas_into(f->a, out);
  closed_subformulas_into(f->b, out);
}

}  // namespace search_detail

// Witness candidates for forall_l at a sequent. The base is drawn from the
// root goal plus the current succedent; re-ingesting the growing antecedent
// would feed instantiations back into the pool and it never reaches a
// fixpoint. One layer of box/bbox over the atomic elements is enough to
// reach the non-analytic witnesses (stable box bottom needs `bbox P` for an
// eigenvariable P that no subformula provides); wrapping everything blows
// the budget. Sorted small-first so cheap witnesses are tried early.
inline std::vector<Fm> witness_pool(const LSeq& at, const SearchConfig& cfg,
                                    const LSeq* root = nullptr) {
  using search_detail::closed_subformulas_into;
  FmSet base;
  base.insert(f_bot());
  base.insert(f_top());
  for (const Fm& h : cfg.hints)
    if (h && h->dangling == 0) base.insert(h);
  if (cfg.pool == SearchConfig::Pool::Standard) {
    const LSeq& r = root ? *root : at;
    for (const LFm& lf : r.lhs) closed_subformulas_into(lf.f, base);
    for (const LFm& lf : r.rhs) closed_subformulas_into(lf.f, base);
    for (const LFm& lf : at.rhs) closed_subformulas_into(lf.f, base);
  }
  FmSet wraps;
  for (const Fm& c : base)
    if (c->nsize == 1 || eq(c, f_bot())) {
      wraps.insert(box(c));
      wraps.insert(bbox(c));
    }
  base.insert(wraps.begin(), wraps.end());
  std::vector<Fm> out(base.begin(), base.end());
  std::sort(out.begin(), out.end(), [](const Fm& x, const Fm& y) {
    if (x->nsize != y->nsize) return x->nsize < y->nsize;
    return cmp(x, y) < 0;
  });
  return out;
}

struct MacroResult {
  std::vector<LSeq> premisses;
  std::string eigen;  // filled for the fresh rules
};

namespace search_detail {

inline std::string default_eigen(const LSeq& seq, bool world) {
  for (int k = 0;; ++k) {
    std::string s = (world ? "w" : "P") + std::to_string(k);
    if (world ? !world_in_seq(seq, s) : !prop_in_seq(seq, s)) return s;
  }
}

}  // namespace search_detail

// Applies one macro step. Returns nothing when the activity does not fit
// the sequent: principal missing, edge missing, witness open, or a stale
// explicit eigensymbol. Every premiss keeps the principal formula.
inline std::optional<MacroResult> apply_macro(const LSeq& seq, const Activity& act) {
  const LFm& pr = act.principal;
  bool left = is_left_kind(act.kind);
  if (!(left ? seq.lhs.count(pr) : seq.rhs.count(pr))) return std::nullopt;
  MacroResult res;
  switch (act.kind) {
    case MacroKind::ImplL: {
      if (pr.f->tag != Tag::Impl) return std::nullopt;
      LSeq p1 = seq, p2 = seq;
      p1.rhs.insert({pr.w, pr.f->a});
      p2.lhs.insert({pr.w, pr.f->b});
      res.premisses = {std::move(p1), std::move(p2)};
      return res;
    }
    case MacroKind::ImplR: {
      if (pr.f->tag != Tag::Impl) return std::nullopt;
      LSeq p = seq;
      p.lhs.insert({pr.w, pr.f->a});
      p.rhs.insert({pr.w, pr.f->b});
      res.premisses = {std::move(p)};
      return res;
    }
    case MacroKind::ForallL: {
      if (pr.f->tag != Tag::All || !act.witness || act.witness->dangling > 0)
        return std::nullopt;
      LSeq p = seq;
      p.lhs.insert({pr.w, instantiate(pr.f->a, act.witness)});
      res.premisses = {std::move(p)};
      return res;
    }
    case MacroKind::ForallR: {
      if (pr.f->tag != Tag::All) return std::nullopt;
      std::string e = act.peer.empty() ? search_detail::default_eigen(seq, false) : act.peer;
      if (e.empty() || !isupper((unsigned char)e[0]) || prop_in_seq(seq, e))
        return std::nullopt;
      LSeq p = seq;
      p.rhs.insert({pr.w, instantiate(pr.f->a, prop(e))});
      res.premisses = {std::move(p)};
      res.eigen = e;
      return res;
    }
    case MacroKind::BoxL: {
      if (pr.f->tag != Tag::Box || !seq.rel.count({pr.w, act.peer})) return std::nullopt;
      LSeq p = seq;
      p.lhs.insert({act.peer, pr.f->a});
      res.premisses = {std::move(p)};
      return res;
    }
    case MacroKind::BBoxL: {
      if (pr.f->tag != Tag::BBox || !seq.rel.count({act.peer, pr.w})) return std::nullopt;
      LSeq p = seq;
      p.lhs.insert({act.peer, pr.f->a});
      res.premisses = {std::move(p)};
      return res;
    }
    case MacroKind::BoxR:
    case MacroKind::BBoxR: {
      bool fwd = act.kind == MacroKind::BoxR;
      if (pr.f->tag != (fwd ? Tag::Box : Tag::BBox)) return std::nullopt;
      std::string e = act.peer.empty() ? search_detail::default_eigen(seq, true) : act.peer;
      if (!lseq_detail::world_ok(e) || world_in_seq(seq, e)) return std::nullopt;
      LSeq p = seq;
      p.rel.insert(fwd ? RelAtom{pr.w, e} : RelAtom{e, pr.w});
      p.rhs.insert({e, pr.f->a});
      res.premisses = {std::move(p)};
      res.eigen = e;
      return res;
    }
  }
  return std::nullopt;
}

// One scheduling round: every activity the sequent offers, kind-major in
// the order box_l, bbox_l, impl_l, impl_r, box_r, bbox_r, forall_r,
// forall_l, principal in cedent order within a kind, edges in rel order and
// witnesses in pool order innermost. forall_l comes last so a witness flood
// cannot starve the structural steps of its round. Fresh-rule entries carry
// no eigensymbol; the engine fills one in at application time.
inline std::vector<Activity> schedule(const LSeq& seq, const SearchConfig& cfg,
                                      const LSeq* pool_root = nullptr,
                                      bool left_only = false) {
  std::vector<Activity> out;
  for (const LFm& lf : seq.lhs)
    if (lf.f->tag == Tag::Box)
      for (const auto& e : seq.rel)
        if (e.first == lf.w) out.push_back({MacroKind::BoxL, lf, nullptr, e.second});
  for (const LFm& lf : seq.lhs)
    if (lf.f->tag == Tag::BBox)
      for (const auto& e : seq.rel)
        if (e.second == lf.w) out.push_back({MacroKind::BBoxL, lf, nullptr, e.first});
  for (const LFm& lf : seq.lhs)
    if (lf.f->tag == Tag::Impl) out.push_back({MacroKind::ImplL, lf, nullptr, ""});
  if (!left_only) {
    for (const LFm& lf : seq.rhs)
      if (lf.f->tag == Tag::Impl) out.push_back({MacroKind::ImplR, lf, nullptr, ""});
    for (const LFm& lf : seq.rhs)
      if (lf.f->tag == Tag::Box) out.push_back({MacroKind::BoxR, lf, nullptr, ""});
    for (const LFm& lf : seq.rhs)
      if (lf.f->tag == Tag::BBox) out.push_back({MacroKind::BBoxR, lf, nullptr, ""});
    for (const LFm& lf : seq.rhs)
      if (lf.f->tag == Tag::All) out.push_back({MacroKind::ForallR, lf, nullptr, ""});
  }
  std::vector<Fm> pool;
  for (const LFm& lf : seq.lhs)
    if (lf.f->tag == Tag::All) {
      if (pool.empty()) pool = witness_pool(seq, cfg, pool_root);
      for (const Fm& c : pool) out.push_back({MacroKind::ForallL, lf, c, ""});
    }
  return out;
}

// Explored search structure, kept for diagnostics when nothing was proved.
// Intuitionistic runs record a node per succedent commitment and per
// impl_l fork; a node is `recorded` once its antecedent phase saturated and
// the snapshot is meaningful. `loops` lists right principals whose commit
// premiss exactly repeated an earlier one on the path and was pruned.
struct BranchNode {
  LSeq seq;
  bool recorded = false;
  LFm via;
  bool via_set = false;
  std::vector<LFm> loops;
  std::vector<int> kids;
};

struct BranchReport {
  LSeq goal;
  SearchConfig cfg;  // pool policy and hints, so checks can rebuild pools
  std::vector<BranchNode> nodes;  // node 0 is the root when non-empty
  bool classical = false;
};

struct SearchResult {
  enum class Kind { Proved, Exhausted };
  Kind kind = Kind::Exhausted;
  LabelledProof proof;  // only on Proved; primitive steps, cut free
  long long fuel_used = 0;
  long long fuel_left = 0;
  bool saturated = false;  // stopped with budget to spare: nothing left to try
  std::vector<LSeq> frontier;  // sequents still open when the search stopped
  BranchReport report;
  std::vector<std::string> trace;
};

namespace search_detail {

inline std::string lfm_str(const LFm& lf) { return lf.w + ":" + print_sugar(lf.f); }

// FNV-1a over the canonical rendering; fixed width so traces diff cleanly
inline std::string seq_fingerprint(const LSeq& s) {
  std::string t = print_lseq(s);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : t) h = (h ^ c) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

struct MacroNode {
  LSeq seq;  // branch sequent the step was applied to
  bool leaf = false;
  LFm closes;    // leaf: the formula shared by both cedents
  Activity act;  // non-leaf; peer holds the eigensymbol for fresh kinds
  int k1 = -1, k2 = -1;
};

// Needs-analysis result per macro node: the part of the branch sequent the
// subproof actually consumed. Cedent elements always come from the branch
// sequent itself, which is what keeps re-emitted conclusions inside every
// zone condition.
struct Needs {
  Cedent lhs, rhs;
  RelCtx edges;
};

struct Plan {
  bool keep = true;
  int fwd = -1;  // when dropped: resolved replacement node
  Needs needs;
};

struct Engine {
  SearchConfig cfg;
  LSeq root;
  long long fuel;
  long long steps = 0;
  bool fuel_died = false;
  std::vector<MacroNode> arena;
  std::vector<BranchNode> rnodes;
  std::vector<LSeq> frontier;
  std::vector<std::string> trace;

  // branch-local state, passed by value across forks and commits
  struct BState {
    std::set<std::pair<int, LFm>> fired_fresh;  // classical one-shot memory
    std::map<LFm, FmSet> tried_wits;            // forall_l dovetail per principal
    std::vector<LSeq> commits;                  // intuitionistic loop check
    int next_w = 0, next_p = 0;
  };

  struct Round {
    std::vector<Activity> acts;
    size_t pos = 0;
    std::set<LFm> contributed;  // forall_l principals already advanced this round
    std::vector<Activity> deferred;  // non-closing impl_l forks, fired last
    bool tail = false;               // currently draining the deferred forks
  };

  explicit Engine(const LSeq& goal, const SearchConfig& c)
      : cfg(c), root(goal), fuel(c.fuel) {}

  bool closure(const LSeq& s, LFm* out) const {
    for (const LFm& lf : s.lhs)
      if (s.rhs.count(lf)) {
        *out = lf;
        return true;
      }
    return false;
  }

  int leaf(const LSeq& s, const LFm& shared) {
    arena.push_back({s, true, shared, {}, -1, -1});
    return (int)arena.size() - 1;
  }

  int node(const LSeq& s, const Activity& act, int k1, int k2 = -1) {
    arena.push_back({s, false, {}, act, k1, k2});
    return (int)arena.size() - 1;
  }

  std::string alloc_eigen(const LSeq& seq, bool world, BState& st) {
    int& k = world ? st.next_w : st.next_p;
    for (;; ++k) {
      std::string s = (world ? "w" : "P") + std::to_string(k);
      if (world ? !world_in_seq(seq, s) : !prop_in_seq(seq, s)) { ++k; return s; }
    }
  }

  void log(const Activity& act, const MacroResult& mr) {
    if (!cfg.trace) return;
    std::string line = std::to_string(steps) + " | " + macro_name(act.kind) + " " +
                       lfm_str(act.principal);
    if (act.witness) line += " with " + print_sugar(act.witness);
    if (!mr.eigen.empty()) line += " fresh " + mr.eigen;
    line += " | " + seq_fingerprint(mr.premisses[0]);
    if (mr.premisses.size() == 2) line += "," + seq_fingerprint(mr.premisses[1]);
    trace.push_back(std::move(line));
  }

  void log_commit(const LFm& pr, const std::string& eigen, const LSeq& prem) {
    if (!cfg.trace) return;
    std::string line = std::to_string(steps) + " | commit " + lfm_str(pr);
    if (!eigen.empty()) line += " fresh " + eigen;
    line += " | " + seq_fingerprint(prem);
    trace.push_back(std::move(line));
  }

  int add_rnode(int parent, const LFm& via) {
    rnodes.push_back({});
    int id = (int)rnodes.size() - 1;
    rnodes[id].via = via;
    rnodes[id].via_set = true;
    if (parent >= 0) rnodes[parent].kids.push_back(id);
    return id;
  }

  void record(int rid, const LSeq& seq) {
    if (rid < 0) return;
    if (!rnodes[rid].recorded) {
      rnodes[rid].recorded = true;
      rnodes[rid].seq = seq;
    }
  }

  // Decides whether a scheduled activity should fire at `seq`. Progress
  // rules: a single-premiss step whose premiss is already the sequent is
  // mute; impl_l is mute when either premiss is (that is exactly the
  // partial-valuation disjunction holding already); the classical fresh
  // rules run once per principal; forall_l advances one untried witness per
  // principal per round. Returns the premisses when the step should fire.
  std::optional<MacroResult> consider(const LSeq& seq, Activity& act, Round& rd,
                                      BState& st, bool classical) {
    if (is_fresh_kind(act.kind)) {
      if (classical &&
          st.fired_fresh.count({(int)act.kind, act.principal}))
        return std::nullopt;
      act.peer = alloc_eigen(seq, act.kind != MacroKind::ForallR, st);
    }
    if (act.kind == MacroKind::ForallL) {
      FmSet& tried = st.tried_wits[act.principal];
      if (tried.count(act.witness)) return std::nullopt;
      LFm aux{act.principal.w, instantiate(act.principal.f->a, act.witness)};
      if (seq.lhs.count(aux)) {
        tried.insert(act.witness);  // satisfied already, costs no turn
        return std::nullopt;
      }
      if (rd.contributed.count(act.principal)) return std::nullopt;
      auto mr = apply_macro(seq, act);
      if (!mr) return std::nullopt;
      tried.insert(act.witness);
      rd.contributed.insert(act.principal);
      return mr;
    }
    auto mr = apply_macro(seq, act);
    if (!mr) return std::nullopt;
    if (mr->premisses.size() == 1 && mr->premisses[0] == seq) return std::nullopt;
    if (mr->premisses.size() == 2 &&
        (mr->premisses[0] == seq || mr->premisses[1] == seq))
      return std::nullopt;
    if (classical && is_fresh_kind(act.kind))
      st.fired_fresh.insert({(int)act.kind, act.principal});
    return mr;
  }

  // ---- classical engine ----------------------------------------------

  // Returns an arena index, or -1 with the failure already recorded. The
  // macro rules are invertible, so the first saturated branch sinks the
  // whole search and there is no rule-choice backtracking.
  int run_cl(LSeq seq, Round rd, bool idle, BState st, int rid) {
    LFm shared;
    if (closure(seq, &shared)) return leaf(seq, shared);
    while (true) {
      if (rd.pos >= rd.acts.size()) {
        if (!idle) {  // the round made progress, start a fresh one
          rd = Round{};
          rd.acts = schedule(seq, cfg, &root);
          idle = true;
          if (rd.acts.empty()) {
            record(rid, seq);
            return -1;
          }
          continue;
        }
        if (!rd.tail && !rd.deferred.empty()) {
          // Nothing else fired, so drain the forks we put off.
          rd.acts = std::move(rd.deferred);
          rd.deferred.clear();
          rd.pos = 0;
          rd.tail = true;
          continue;
        }
        record(rid, seq);  // a whole round applied nothing
        return -1;
      }
      Activity act = rd.acts[rd.pos++];
      auto mr = consider(seq, act, rd, st, true);
      if (!mr) continue;
      if (act.kind == MacroKind::ImplL && !rd.tail) {
        LFm sh;
        if (!closure(mr->premisses[0], &sh) && !closure(mr->premisses[1], &sh)) {
          rd.deferred.push_back(act);
          continue;
        }
      }
      if (rd.tail) {  // one deferred fork per stall, then a fresh round
        rd.acts.clear();
        rd.pos = 0;
      }
      if (fuel == 0) {
        fuel_died = true;
        frontier.push_back(seq);
        record(rid, seq);
        return -1;
      }
      --fuel;
      ++steps;
      if (!mr->eigen.empty()) act.peer = mr->eigen;
      log(act, *mr);
      if (act.kind == MacroKind::ImplL) {
        int a = run_cl(mr->premisses[0], rd, false, st, rid);
        if (a < 0) {
          if (fuel_died) frontier.push_back(mr->premisses[1]);
          return -1;
        }
        int b = run_cl(mr->premisses[1], rd, false, st, rid);
        if (b < 0) return -1;
        return node(seq, act, a, b);
      }
      int a = run_cl(mr->premisses[0], rd, false, st, rid);
      if (a < 0) return -1;
      return node(seq, act, a);
    }
  }

  // ---- intuitionistic engine -------------------------------------------

  // Antecedent phase first: left macro rules to saturation, forking at
  // impl_l. Then the succedent phase commits to one right formula at a
  // time, resetting the succedent, with backtracking across candidates. A
  // commit whose premiss exactly repeats one on the path is pruned and
  // noted as a loop entry.
  int run_int(LSeq seq, Round rd, bool idle, BState st, int rid) {
    LFm shared;
    if (closure(seq, &shared)) return leaf(seq, shared);
    while (true) {
      if (rd.pos >= rd.acts.size()) {
        if (!idle) {
          rd = Round{};
          rd.acts = schedule(seq, cfg, &root, true);
          idle = true;
          if (rd.acts.empty()) return rhs_phase(seq, st, rid);
          continue;
        }
        if (!rd.tail && !rd.deferred.empty()) {
          rd.acts = std::move(rd.deferred);
          rd.deferred.clear();
          rd.pos = 0;
          rd.tail = true;
          continue;
        }
        return rhs_phase(seq, st, rid);
      }
      Activity act = rd.acts[rd.pos++];
      auto mr = consider(seq, act, rd, st, false);
      if (!mr) continue;
      if (act.kind == MacroKind::ImplL && !rd.tail) {
        LFm sh;
        if (!closure(mr->premisses[0], &sh) && !closure(mr->premisses[1], &sh)) {
          rd.deferred.push_back(act);
          continue;
        }
      }
      if (rd.tail) {  // one deferred fork per stall, then a fresh round
        rd.acts.clear();
        rd.pos = 0;
      }
      if (fuel == 0) {
        fuel_died = true;
        frontier.push_back(seq);
        record(rid, seq);
        return -1;
      }
      --fuel;
      ++steps;
      log(act, *mr);
      if (act.kind == MacroKind::ImplL) {
        int r1 = add_rnode(rid, act.principal);
        int a = run_int(mr->premisses[0], rd, false, st, r1);
        if (a < 0) {
          if (fuel_died) frontier.push_back(mr->premisses[1]);
          return -1;
        }
        int r2 = add_rnode(rid, act.principal);
        int b = run_int(mr->premisses[1], rd, false, st, r2);
        if (b < 0) return -1;
        return node(seq, act, a, b);
      }
      int a = run_int(mr->premisses[0], rd, false, st, rid);
      if (a < 0) return -1;
      return node(seq, act, a);
    }
  }

  int rhs_phase(const LSeq& seq, BState& st, int rid) {
    record(rid, seq);
    // Candidates in connective order, implications first and quantifiers
    // last: committing to a quantified succedent mints an eigenvariable,
    // and doing that before the definite structure is spent loops on the
    // possibility encodings (each commit re-exposes the same quantifier).
    std::vector<LFm> cands;
    for (const LFm& lf : seq.rhs)
      if (lf.f->tag == Tag::Impl || lf.f->tag == Tag::All ||
          lf.f->tag == Tag::Box || lf.f->tag == Tag::BBox)
        cands.push_back(lf);
    std::stable_sort(cands.begin(), cands.end(),
                     [](const LFm& x, const LFm& y) {
                       return (int)x.f->tag < (int)y.f->tag;
                     });
    for (const LFm& pr : cands) {
      MacroKind kind;
      switch (pr.f->tag) {
        case Tag::Impl: kind = MacroKind::ImplR; break;
        case Tag::All: kind = MacroKind::ForallR; break;
        case Tag::Box: kind = MacroKind::BoxR; break;
        case Tag::BBox: kind = MacroKind::BBoxR; break;
        default: continue;  // unreachable, the filter above is exact
      }
      BState sub = st;
      std::string eigen;
      LSeq prem;
      prem.rel = seq.rel;
      prem.lhs = seq.lhs;
      switch (kind) {
        case MacroKind::ImplR:
          prem.lhs.insert({pr.w, pr.f->a});
          prem.rhs.insert({pr.w, pr.f->b});
          break;
        case MacroKind::ForallR:
          eigen = alloc_eigen(seq, false, sub);
          prem.rhs.insert({pr.w, instantiate(pr.f->a, prop(eigen))});
          break;
        case MacroKind::BoxR:
          eigen = alloc_eigen(seq, true, sub);
          prem.rel.insert({pr.w, eigen});
          prem.rhs.insert({eigen, pr.f->a});
          break;
        case MacroKind::BBoxR:
          eigen = alloc_eigen(seq, true, sub);
          prem.rel.insert({eigen, pr.w});
          prem.rhs.insert({eigen, pr.f->a});
          break;
        default: break;
      }
      bool looped = false;
      for (const LSeq& past : st.commits)
        if (past == prem) {
          looped = true;
          break;
        }
      if (looped) {
        rnodes[rid].loops.push_back(pr);
        continue;
      }
      if (fuel == 0) {
        fuel_died = true;
        frontier.push_back(seq);
        return -1;
      }
      --fuel;
      ++steps;
      log_commit(pr, eigen, prem);
      sub.commits.push_back(prem);
      int kid = add_rnode(rid, pr);
      int a = run_int(prem, {}, false, sub, kid);
      if (a >= 0) return node(seq, {kind, pr, nullptr, eigen}, a);
      if (fuel_died) return -1;
    }
    return -1;  // dead end; every candidate explored or pruned
  }

  // ---- re-emission ------------------------------------------------------
  //
  // Pass 1 walks the macro tree bottom up and works out what each subproof
  // consumed; steps whose auxiliary went unused are dropped and replaced by
  // their premiss subtree. Pass 2 replays top down: the relational context
  // stays the full branch context (id tolerates any), the cedents are the
  // minimal ones, and a weakening is inserted where a premiss needs a
  // succedent formula only the step's shape demands.

  std::vector<Plan> plans;

  int resolve(int id) const {
    while (!plans[id].keep) id = plans[id].fwd;
    return id;
  }

  void pass1(int id) {
    const MacroNode& n = arena[id];
    Plan& pl = plans[id];
    if (n.leaf) {
      pl.needs.lhs.insert(n.closes);
      pl.needs.rhs.insert(n.closes);
      return;
    }
    pass1(n.k1);
    if (n.k2 >= 0) pass1(n.k2);
    int c1 = resolve(n.k1);
    const Needs& N1 = plans[c1].needs;
    const LFm& pr = n.act.principal;
    switch (n.act.kind) {
      case MacroKind::ImplL: {
        int c2 = resolve(n.k2);
        const Needs& N2 = plans[c2].needs;
        LFm a1{pr.w, pr.f->a}, a2{pr.w, pr.f->b};
        if (!N1.rhs.count(a1)) {
          pl.keep = false;
          pl.fwd = c1;
          pl.needs = N1;
          return;
        }
        if (!N2.lhs.count(a2)) {
          pl.keep = false;
          pl.fwd = c2;
          pl.needs = N2;
          return;
        }
        pl.needs.lhs = N1.lhs;
        for (const LFm& x : N2.lhs)
          if (!(x == a2)) pl.needs.lhs.insert(x);
        pl.needs.lhs.insert(pr);
        for (const LFm& x : N1.rhs)
          if (!(x == a1)) pl.needs.rhs.insert(x);
        pl.needs.rhs.insert(N2.rhs.begin(), N2.rhs.end());
        pl.needs.edges = N1.edges;
        pl.needs.edges.insert(N2.edges.begin(), N2.edges.end());
        return;
      }
      case MacroKind::ForallL: {
        LFm aux{pr.w, instantiate(pr.f->a, n.act.witness)};
        if (!N1.lhs.count(aux)) {
          pl.keep = false;
          pl.fwd = c1;
          pl.needs = N1;
          return;
        }
        pl.needs = N1;
        pl.needs.lhs.erase(aux);
        pl.needs.lhs.insert(pr);
        return;
      }
      case MacroKind::BoxL:
      case MacroKind::BBoxL: {
        LFm aux{n.act.peer, pr.f->a};
        RelAtom edge = n.act.kind == MacroKind::BoxL ? RelAtom{pr.w, n.act.peer}
                                                     : RelAtom{n.act.peer, pr.w};
        if (!N1.lhs.count(aux)) {
          pl.keep = false;
          pl.fwd = c1;
          pl.needs = N1;
          return;
        }
        pl.needs = N1;
        pl.needs.lhs.erase(aux);
        pl.needs.lhs.insert(pr);
        pl.needs.edges.insert(edge);
        return;
      }
      case MacroKind::ImplR: {
        LFm a{pr.w, pr.f->a}, b{pr.w, pr.f->b};
        if (!N1.lhs.count(a) && !N1.rhs.count(b)) {
          pl.keep = false;
          pl.fwd = c1;
          pl.needs = N1;
          return;
        }
        pl.needs = N1;
        pl.needs.lhs.erase(a);
        pl.needs.rhs.erase(b);
        pl.needs.rhs.insert(pr);
        return;
      }
      case MacroKind::ForallR: {
        LFm aux{pr.w, instantiate(pr.f->a, prop(n.act.peer))};
        if (!N1.rhs.count(aux)) {
          pl.keep = false;
          pl.fwd = c1;
          pl.needs = N1;
          return;
        }
        pl.needs = N1;
        pl.needs.rhs.erase(aux);
        pl.needs.rhs.insert(pr);
        return;
      }
      case MacroKind::BoxR:
      case MacroKind::BBoxR: {
        LFm aux{n.act.peer, pr.f->a};
        RelAtom edge = n.act.kind == MacroKind::BoxR ? RelAtom{pr.w, n.act.peer}
                                                     : RelAtom{n.act.peer, pr.w};
        if (!N1.rhs.count(aux) && !N1.edges.count(edge)) {
          // the subproof never looked at the fresh world at all
          pl.keep = false;
          pl.fwd = c1;
          pl.needs = N1;
          return;
        }
        pl.needs = N1;
        pl.needs.rhs.erase(aux);
        pl.needs.rhs.insert(pr);
        pl.needs.edges.erase(edge);
        return;
      }
    }
  }

  int emit(int id, const RelCtx& rel, LabelledProof& out) {
    id = resolve(id);
    const MacroNode& n = arena[id];
    const Plan& pl = plans[id];
    if (n.leaf) {
      out.push_back({{rel, {n.closes}, {n.closes}}, LRule::Id});
      return (int)out.size() - 1;
    }
    const LFm& pr = n.act.principal;
    LSeq C{rel, pl.needs.lhs, pl.needs.rhs};
    switch (n.act.kind) {
      case MacroKind::ImplL: {
        int i1 = emit(n.k1, rel, out);
        int i2 = emit(n.k2, rel, out);
        out.push_back({C, LRule::ImplL, i1, i2});
        break;
      }
      case MacroKind::ForallL: {
        int i1 = emit(n.k1, rel, out);
        out.push_back({C, LRule::ForallL, i1, -1, n.act.witness});
        break;
      }
      case MacroKind::BoxL:
      case MacroKind::BBoxL: {
        int i1 = emit(n.k1, rel, out);
        out.push_back({C, n.act.kind == MacroKind::BoxL ? LRule::BoxL : LRule::BBoxL, i1});
        break;
      }
      case MacroKind::ImplR: {
        // the primitive rule wants both auxiliaries visible in the premiss
        // even when the subproof ignored one; weaken them in
        int i1 = emit(n.k1, rel, out);
        const Needs& KN = plans[resolve(n.k1)].needs;
        Cedent PL = KN.lhs, PR = KN.rhs;
        LFm a{pr.w, pr.f->a}, b{pr.w, pr.f->b};
        if (!PL.count(a)) {
          PL.insert(a);
          out.push_back({{rel, PL, PR}, LRule::WL, i1});
          i1 = (int)out.size() - 1;
        }
        if (!PR.count(b)) {
          PR.insert(b);
          out.push_back({{rel, PL, PR}, LRule::WR, i1});
          i1 = (int)out.size() - 1;
        }
        out.push_back({C, LRule::ImplR, i1});
        break;
      }
      case MacroKind::ForallR: {
        int i1 = emit(n.k1, rel, out);
        out.push_back({C, LRule::ForallR, i1, -1, nullptr, n.act.peer});
        break;
      }
      case MacroKind::BoxR:
      case MacroKind::BBoxR: {
        bool fwd = n.act.kind == MacroKind::BoxR;
        RelCtx rel2 = rel;
        rel2.insert(fwd ? RelAtom{pr.w, n.act.peer} : RelAtom{n.act.peer, pr.w});
        int i1 = emit(n.k1, rel2, out);
        const Needs& KN = plans[resolve(n.k1)].needs;
        LFm aux{n.act.peer, pr.f->a};
        if (!KN.rhs.count(aux)) {  // edge used, formula not: weaken it in
          LSeq padded{rel2, KN.lhs, KN.rhs};
          padded.rhs.insert(aux);
          out.push_back({padded, LRule::WR, i1});
          i1 = (int)out.size() - 1;
        }
        out.push_back({C, fwd ? LRule::BoxR : LRule::BBoxR, i1, -1, nullptr, n.act.peer});
        break;
      }
    }
    return (int)out.size() - 1;
  }

  LabelledProof emit_proof(int root_id, const LSeq& goal) {
    plans.assign(arena.size(), {});
    pass1(root_id);
    int top = resolve(root_id);
    LabelledProof out;
    int i = emit(top, goal.rel, out);
    const Needs& N = plans[top].needs;
    using labelled_detail::subset;
    if (!subset(N.lhs, goal.lhs) || !subset(N.rhs, goal.rhs))
      throw std::logic_error("search: emitted proof drifted from the goal");
    for (const RelAtom& e : N.edges)
      if (!goal.rel.count(e))
        throw std::logic_error("search: emitted proof needs an edge the goal lacks");
    Cedent L = N.lhs, R = N.rhs;
    for (const LFm& x : goal.lhs)
      if (!L.count(x)) {
        L.insert(x);
        out.push_back({{goal.rel, L, R}, LRule::WL, i});
        i = (int)out.size() - 1;
      }
    for (const LFm& x : goal.rhs)
      if (!R.count(x)) {
        R.insert(x);
        out.push_back({{goal.rel, L, R}, LRule::WR, i});
        i = (int)out.size() - 1;
      }
    return out;
  }
};

inline SearchResult finish(Engine& e, int top, const LSeq& goal, bool classical) {
  SearchResult res;
  res.fuel_used = e.cfg.fuel - e.fuel;
  res.fuel_left = e.fuel;
  res.trace = std::move(e.trace);
  res.report.goal = goal;
  res.report.cfg = e.cfg;
  res.report.classical = classical;
  res.report.nodes = std::move(e.rnodes);
  if (top >= 0) {
    res.kind = SearchResult::Kind::Proved;
    res.proof = e.emit_proof(top, goal);
  } else {
    res.kind = SearchResult::Kind::Exhausted;
    res.saturated = !e.fuel_died;
    res.frontier = std::move(e.frontier);
  }
  return res;
}

}  // namespace search_detail

// Classical search: saturate with every macro rule, fork at impl_l. All
// macro rules are invertible here, so no rule choice is ever revisited; a
// saturated branch refutes the goal within the pool and sinks the search.
inline SearchResult prove_classical(const LSeq& goal, const SearchConfig& cfg = {}) {
  if (cfg.fuel < 1) throw std::invalid_argument("search: fuel must be at least 1");
  search_detail::Engine e(goal, cfg);
  e.rnodes.push_back({});
  int top = e.run_cl(goal, {}, false, {}, 0);
  return search_detail::finish(e, top, goal, true);
}

// Intuitionistic search: left rules to saturation, then commit to a single
// succedent formula per step with backtracking over the candidates. The
// emitted proof keeps every right-rule premiss single-succedent, so it
// checks in the multi-succedent intuitionistic calculus without cut.
inline SearchResult prove_intuitionistic(const LSeq& goal, const SearchConfig& cfg = {}) {
  if (cfg.fuel < 1) throw std::invalid_argument("search: fuel must be at least 1");
  search_detail::Engine e(goal, cfg);
  e.rnodes.push_back({});
  int top = e.run_int(goal, {}, false, {}, 0);
  return search_detail::finish(e, top, goal, false);
}

struct ClauseCheck {
  std::string clause;
  int checked = 0;
  int failed = 0;
};

struct ReportSummary {
  bool disjoint = true;
  bool ok = true;
  std::vector<ClauseCheck> clauses;
};

// Replays the partial-valuation conditions over the recorded snapshots of a
// branch report. For a classical report the tree is a single node and the
// conditions are the usual limit clauses; for an intuitionistic report the
// universal clauses range over all recorded descendants and the existential
// ones are discharged by a descendant or by a pruned loop entry, whose
// commit premiss contained the required instance by construction.
inline ReportSummary branch_report_check(const BranchReport& rep) {
  ReportSummary out;
  out.clauses = {{"impl-left"},  {"impl-right"},  {"box-left"},    {"box-right"},
                 {"bbox-left"},  {"bbox-right"},  {"forall-left"}, {"forall-right"}};
  auto clause = [&](const char* name) -> ClauseCheck& {
    for (ClauseCheck& c : out.clauses)
      if (c.clause == name) return c;
    throw std::logic_error("unknown clause");
  };
  // recorded descendants per node, node included
  std::vector<std::vector<int>> desc(rep.nodes.size());
  for (int i = (int)rep.nodes.size() - 1; i >= 0; --i) {
    if (rep.nodes[i].recorded) desc[i].push_back(i);
    for (int k : rep.nodes[i].kids)
      desc[i].insert(desc[i].end(), desc[k].begin(), desc[k].end());
  }
  auto pool_at = [&](const LSeq& s) { return witness_pool(s, rep.cfg, &rep.goal); };
  auto loop_hit = [&](int at, const LFm& pr) {
    std::vector<int> stack = {at};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (const LFm& l : rep.nodes[i].loops)
        if (l == pr) return true;
      for (int k : rep.nodes[i].kids) stack.push_back(k);
    }
    return false;
  };
  for (int i = 0; i < (int)rep.nodes.size(); ++i) {
    if (!rep.nodes[i].recorded) continue;
    const LSeq& s = rep.nodes[i].seq;
    for (const LFm& lf : s.lhs)
      if (s.rhs.count(lf)) out.disjoint = false;
    for (const LFm& lf : s.lhs) {
      switch (lf.f->tag) {
        case Tag::Impl: {
          ClauseCheck& c = clause("impl-left");
          ++c.checked;
          LFm a{lf.w, lf.f->a}, b{lf.w, lf.f->b};
          for (int t : desc[i]) {
            const LSeq& ts = rep.nodes[t].seq;
            if (!ts.rhs.count(a) && !ts.lhs.count(b)) {
              ++c.failed;
              break;
            }
          }
          break;
        }
        case Tag::Box:
        case Tag::BBox: {
          bool fwd = lf.f->tag == Tag::Box;
          ClauseCheck& c = clause(fwd ? "box-left" : "bbox-left");
          ++c.checked;
          bool bad = false;
          for (int t : desc[i]) {
            const LSeq& ts = rep.nodes[t].seq;
            for (const auto& e : ts.rel) {
              if ((fwd ? e.first : e.second) != lf.w) continue;
              LFm aux{fwd ? e.second : e.first, lf.f->a};
              if (!ts.lhs.count(aux)) bad = true;
            }
            if (bad) break;
          }
          if (bad) ++c.failed;
          break;
        }
        case Tag::All: {
          ClauseCheck& c = clause("forall-left");
          ++c.checked;
          bool bad = false;
          for (int t : desc[i]) {
            const LSeq& ts = rep.nodes[t].seq;
            for (const Fm& w : pool_at(ts)) {
              LFm aux{lf.w, instantiate(lf.f->a, w)};
              if (!ts.lhs.count(aux)) {
                bad = true;
                break;
              }
            }
            if (bad) break;
          }
          if (bad) ++c.failed;
          break;
        }
        default: break;
      }
    }
    for (const LFm& lf : s.rhs) {
      switch (lf.f->tag) {
        case Tag::Impl: {
          ClauseCheck& c = clause("impl-right");
          ++c.checked;
          LFm a{lf.w, lf.f->a}, b{lf.w, lf.f->b};
          bool hit = loop_hit(i, lf);
          for (int t : desc[i]) {
            const LSeq& ts = rep.nodes[t].seq;
            if (ts.lhs.count(a) && ts.rhs.count(b)) hit = true;
          }
          if (!hit) ++c.failed;
          break;
        }
        case Tag::Box:
        case Tag::BBox: {
          bool fwd = lf.f->tag == Tag::Box;
          ClauseCheck& c = clause(fwd ? "box-right" : "bbox-right");
          ++c.checked;
          bool hit = loop_hit(i, lf);
          for (int t : desc[i]) {
            const LSeq& ts = rep.nodes[t].seq;
            for (const auto& e : ts.rel) {
              if ((fwd ? e.first : e.second) != lf.w) continue;
              LFm aux{fwd ? e.second : e.first, lf.f->a};
              if (ts.rhs.count(aux)) hit = true;
            }
          }
          if (!hit) ++c.failed;
          break;
        }
        case Tag::All: {
          ClauseCheck& c = clause("forall-right");
          ++c.checked;
          bool hit = loop_hit(i, lf);
          for (int t : desc[i]) {
            const LSeq& ts = rep.nodes[t].seq;
            std::vector<Fm> cands = pool_at(ts);
            std::set<std::string> syms;
            for (const LFm& x : ts.lhs) prop_syms_into(x.f, syms);
            for (const LFm& x : ts.rhs) prop_syms_into(x.f, syms);
            for (const std::string& p : syms) cands.push_back(prop(p));
            for (const Fm& w : cands) {
              LFm aux{lf.w, instantiate(lf.f->a, w)};
              if (ts.rhs.count(aux)) {
                hit = true;
                break;
              }
            }
            if (hit) break;
          }
          if (!hit) ++c.failed;
          break;
        }
        default: break;
      }
    }
  }
  out.ok = out.disjoint;
  for (const ClauseCheck& c : out.clauses)
    if (c.failed > 0) out.ok = false;
  return out;
}

}  // namespace tenselab
