// Transformations between the labelled calculi:
//
//   bottom_derivation    falsum at one world refutes any goal at a world
//                        connected to it, cut free and single succedent
//   multi_to_single      strips a multi-succedent proof down to one chosen
//                        succedent formula, proved in the plain calculus
//   classical_to_negneg  rebuilds a classical proof inside the single
//                        succedent calculus extended with negneg, turning
//                        the succedent into negated antecedent formulas
//
// All three build natural conclusions per step and close the gap to the
// wanted sequent with explicit wl nodes, so every emitted node is an
// instance of the inclusion conditions the checker enforces.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "labelled.hpp"

namespace tenselab {

namespace ltrans_detail {

inline std::vector<std::string> rel_path(const RelCtx& rel, const std::string& v,
                                         const std::string& w) {
  if (v == w) return {v};
  std::map<std::string, std::string> par;
  par[v] = v;
  std::vector<std::string> queue{v};
  size_t qi = 0;
  while (qi < queue.size() && !par.count(w)) {
    std::string cur = queue[qi++];
    auto visit = [&](const std::string& nxt) {
      if (par.emplace(nxt, cur).second) queue.push_back(nxt);
    };
    for (const auto& [a, b] : rel) {
      if (a == cur) visit(b);
      if (b == cur) visit(a);
    }
  }
  if (!par.count(w)) return {};
  std::vector<std::string> path{w};
  while (path.back() != v) path.push_back(par[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

inline int push_node(LabelledProof& out, LNode nd) {
  out.push_back(std::move(nd));
  return (int)out.size() - 1;
}

// append a whole proof, shifting its internal premiss indices
inline int splice(LabelledProof& out, const LabelledProof& block) {
  int base = (int)out.size();
  for (LNode nd : block) {
    if (nd.i >= 0) nd.i += base;
    if (nd.j >= 0) nd.j += base;
    out.push_back(std::move(nd));
  }
  return (int)out.size() - 1;
}

inline int wl_chain(LabelledProof& out, int r, const Cedent& target) {
  for (const LFm& x : target) {
    if (out[r].seq.lhs.count(x)) continue;
    LNode wl;
    wl.rule = LRule::WL;
    wl.i = r;
    wl.seq = out[r].seq;
    wl.seq.lhs.insert(x);
    r = push_node(out, std::move(wl));
  }
  return r;
}

inline Cedent neg_cedent(const Cedent& d) {
  Cedent out;
  for (const auto& lf : d) out.insert({lf.w, f_not(lf.f)});
  return out;
}

}  // namespace ltrans_detail

// Derives  rel | ctx, v:bot => w:a  without cut and with a single
// succedent throughout, by walking a path from v to w: at each hop falsum
// is specialised to box bot or bbox bot and pushed across the edge.
inline LabelledProof bottom_derivation(const RelCtx& rel, const Cedent& ctx,
                                       const std::string& v, const std::string& w, const Fm& a) {
  using namespace ltrans_detail;
  std::vector<std::string> path = rel_path(rel, v, w);
  if (path.empty())
    throw std::invalid_argument("bottom_derivation: " + v + " and " + w + " are not connected");
  LabelledProof out;
  LNode id;
  id.rule = LRule::Id;
  id.seq.rel = rel;
  id.seq.lhs = {{w, a}};
  id.seq.rhs = {{w, a}};
  int r = push_node(out, std::move(id));
  r = wl_chain(out, r, ctx);
  // swap at:witness in the antecedent for at:bot; members of ctx stay put
  auto forall_step = [&](int from, const std::string& at, const Fm& witness) {
    LNode fl;
    fl.rule = LRule::ForallL;
    fl.i = from;
    fl.witness = witness;
    fl.seq = out[from].seq;
    if (!ctx.count({at, witness})) fl.seq.lhs.erase({at, witness});
    fl.seq.lhs.insert({at, f_bot()});
    return push_node(out, std::move(fl));
  };
  r = forall_step(r, w, a);
  for (int k = (int)path.size() - 2; k >= 0; --k) {
    const std::string& here = path[k];
    const std::string& there = path[k + 1];
    bool fwd = rel.count({here, there}) > 0;
    Fm boxed = fwd ? box(f_bot()) : bbox(f_bot());
    LNode push;
    push.rule = fwd ? LRule::BoxL : LRule::BBoxL;
    push.i = r;
    push.seq = out[r].seq;
    if (!ctx.count({there, f_bot()})) push.seq.lhs.erase({there, f_bot()});
    push.seq.lhs.insert({here, boxed});
    r = push_node(out, std::move(push));
    r = forall_step(r, here, boxed);
  }
  return out;
}

struct SingleSuccedent {
  LFm chosen;
  LabelledProof proof;
};

// Given a proof the multi-succedent calculus accepts, picks one formula of
// the final succedent and proves it alone, in the single-succedent
// calculus. Cut survives only where the input used it.
inline SingleSuccedent multi_to_single(const LabelledProof& p) {
  using namespace labelled_detail;
  using namespace ltrans_detail;
  LVerdict ver = check_labelled_proof(p, Calculus{CalcTag::MLIKt2, true}, true);
  if (!ver.ok)
    throw std::invalid_argument("multi_to_single: input rejected at node " +
                                std::to_string(ver.node) + ": " + ver.reason);
  LabelledProof out;
  std::map<int, std::pair<LFm, int>> memo;

  std::function<std::pair<LFm, int>(int)> rec = [&](int n) -> std::pair<LFm, int> {
    auto hit = memo.find(n);
    if (hit != memo.end()) return hit->second;
    const LNode& nd = p[n];
    const LSeq& C = nd.seq;
    std::pair<LFm, int> res;
    switch (nd.rule) {
      case LRule::Id: {
        res = {*C.rhs.begin(), push_node(out, nd)};
        break;
      }
      case LRule::CL:
      case LRule::CR:
      case LRule::WR: {
        // contraction is a no-op on sets; the weakened formula was never
        // the one we keep
        res = rec(nd.i);
        break;
      }
      case LRule::WL: {
        auto [c, ri] = rec(nd.i);
        LNode m;
        m.rule = LRule::WL;
        m.i = ri;
        m.seq = {C.rel, C.lhs, {c}};
        res = {c, push_node(out, std::move(m))};
        break;
      }
      case LRule::ForallL:
      case LRule::BoxL:
      case LRule::BBoxL: {
        auto [c, ri] = rec(nd.i);
        LNode m = nd;
        m.i = ri;
        m.seq.rhs = {c};
        res = {c, push_node(out, std::move(m))};
        break;
      }
      case LRule::ImplR:
      case LRule::ForallR:
      case LRule::BoxR:
      case LRule::BBoxR:
      case LRule::NegNeg: {
        LFm pr;
        bool found = false;
        switch (nd.rule) {
          case LRule::ImplR: found = find_implr(C, p[nd.i].seq, &pr); break;
          case LRule::ForallR: found = find_forallr(C, p[nd.i].seq, nd.eigen, &pr); break;
          case LRule::BoxR: found = find_boxr(C, p[nd.i].seq, true, nd.eigen, &pr); break;
          case LRule::BBoxR: found = find_boxr(C, p[nd.i].seq, false, nd.eigen, &pr); break;
          default: pr = *C.rhs.begin(); found = C.rhs.size() == 1; break;
        }
        if (!found) throw std::logic_error("multi_to_single: lost the principal of a checked node");
        auto [c, ri] = rec(nd.i);
        (void)c;  // the premiss succedent is a singleton, c is its formula
        LNode m = nd;
        m.i = ri;
        m.seq.rhs = {pr};
        res = {pr, push_node(out, std::move(m))};
        break;
      }
      case LRule::ImplL:
      case LRule::Cut: {
        bool icase = nd.rule == LRule::ImplL;
        LFm pr;
        bool found = icase ? find_impll(C, p[nd.i].seq, p[nd.j].seq, &pr)
                           : find_cut(C, p[nd.i].seq, p[nd.j].seq, &pr);
        if (!found) throw std::logic_error("multi_to_single: lost the principal of a checked node");
        auto [c1, r1] = rec(nd.i);
        if (C.rhs.count(c1)) {
          // the left branch already proves a formula of the final
          // succedent; the rule only has to contribute its antecedent
          res = {c1, wl_chain(out, r1, C.lhs)};
          break;
        }
        auto [c2, r2] = rec(nd.j);
        LNode m;
        m.rule = nd.rule;
        m.i = r1;
        m.j = r2;
        m.seq = {C.rel, C.lhs, {c2}};
        res = {c2, push_node(out, std::move(m))};
        break;
      }
    }
    memo.emplace(n, res);
    return res;
  };

  auto [chosen, root] = rec((int)p.size() - 1);
  if (root != (int)out.size() - 1) {
    LNode cl;
    cl.rule = LRule::CL;
    cl.i = root;
    cl.seq = out[root].seq;
    push_node(out, std::move(cl));
  }
  return {chosen, std::move(out)};
}

// Rebuilds a classical proof of R | G => D as a proof of
// R | G, not D => x:bot in the single-succedent calculus plus negneg,
// where x is a world of the conclusion. Each id leaf and each discarded
// succedent walks falsum over to x, so the conclusion's relational
// context must connect its worlds.
inline LabelledProof classical_to_negneg(const LabelledProof& p, const std::string& x) {
  using namespace labelled_detail;
  using namespace ltrans_detail;
  LVerdict ver = check_labelled_proof(p, Calculus{CalcTag::LKt2, true});
  if (!ver.ok)
    throw std::invalid_argument("classical_to_negneg: input rejected at node " +
                                std::to_string(ver.node) + ": " + ver.reason);
  if (!world_in_seq(p.back().seq, x))
    throw std::invalid_argument("classical_to_negneg: world " + x +
                                " does not occur in the conclusion");

  LabelledProof out;
  std::map<std::pair<int, std::string>, int> memo;
  auto goal_lhs = [&](const LSeq& C) { return uni(C.lhs, neg_cedent(C.rhs)); };

  // turn ... , v:not a => v:bot into ... => v:a via implr then negneg
  auto unnegate = [&](int r, const std::string& v, const Fm& a) {
    LFm na{v, f_not(a)};
    LNode ir;
    ir.rule = LRule::ImplR;
    ir.i = r;
    ir.seq.rel = out[r].seq.rel;
    ir.seq.lhs = minus(out[r].seq.lhs, na);
    ir.seq.rhs = {{v, f_not(f_not(a))}};
    int r2 = push_node(out, std::move(ir));
    LNode nn;
    nn.rule = LRule::NegNeg;
    nn.i = r2;
    nn.seq = out[r2].seq;
    nn.seq.rhs = {{v, a}};
    return push_node(out, std::move(nn));
  };

  std::function<int(int, const std::string&)> rec = [&](int n, const std::string& xw) -> int {
    auto key = std::make_pair(n, xw);
    auto hit = memo.find(key);
    if (hit != memo.end()) return hit->second;
    const LNode& nd = p[n];
    const LSeq& C = nd.seq;
    LFm xbot{xw, f_bot()};
    int res = -1;
    switch (nd.rule) {
      case LRule::Id: {
        const LFm& va = *C.lhs.begin();
        int r1 = push_node(out, nd);
        int r2 = splice(out, bottom_derivation(C.rel, {}, va.w, xw, f_bot()));
        LNode il;
        il.rule = LRule::ImplL;
        il.i = r1;
        il.j = r2;
        il.seq.rel = C.rel;
        il.seq.lhs = {va, {va.w, f_not(va.f)}};
        il.seq.rhs = {xbot};
        res = push_node(out, std::move(il));
        break;
      }

      case LRule::WL:
      case LRule::WR:
      case LRule::CL:
      case LRule::CR: {
        // both weakenings grow the antecedent of the rebuilt sequent
        res = wl_chain(out, rec(nd.i, xw), goal_lhs(C));
        break;
      }

      case LRule::ImplL:
      case LRule::Cut: {
        bool icase = nd.rule == LRule::ImplL;
        LFm pr;
        bool found = icase ? find_impll(C, p[nd.i].seq, p[nd.j].seq, &pr)
                           : find_cut(C, p[nd.i].seq, p[nd.j].seq, &pr);
        if (!found) throw std::logic_error("classical_to_negneg: lost the principal of a checked node");
        const std::string& v = pr.w;
        Fm cutf = icase ? pr.f->a : pr.f;
        int r1 = unnegate(rec(nd.i, v), v, cutf);
        int r2 = rec(nd.j, xw);
        LNode m;
        m.rule = nd.rule;
        m.i = r1;
        m.j = r2;
        m.seq.rel = C.rel;
        LFm auxb = icase ? LFm{v, pr.f->b} : LFm{v, cutf};
        m.seq.lhs = uni(out[r1].seq.lhs, minus(out[r2].seq.lhs, auxb));
        if (icase) m.seq.lhs.insert(pr);
        m.seq.rhs = {xbot};
        res = wl_chain(out, push_node(out, std::move(m)), goal_lhs(C));
        break;
      }

      case LRule::ImplR: {
        LFm pr;
        if (!find_implr(C, p[nd.i].seq, &pr))
          throw std::logic_error("classical_to_negneg: lost the principal of a checked node");
        const std::string& v = pr.w;
        int r = unnegate(rec(nd.i, v), v, pr.f->b);
        LNode ir;
        ir.rule = LRule::ImplR;
        ir.i = r;
        ir.seq.rel = C.rel;
        ir.seq.lhs = minus(out[r].seq.lhs, {v, pr.f->a});
        ir.seq.rhs = {pr};
        int r3 = push_node(out, std::move(ir));
        int rb = splice(out, bottom_derivation(C.rel, out[r3].seq.lhs, v, xw, f_bot()));
        LNode il;
        il.rule = LRule::ImplL;
        il.i = r3;
        il.j = rb;
        il.seq.rel = C.rel;
        il.seq.lhs = out[r3].seq.lhs;
        il.seq.lhs.insert({v, f_not(pr.f)});
        il.seq.rhs = {xbot};
        res = wl_chain(out, push_node(out, std::move(il)), goal_lhs(C));
        break;
      }

      case LRule::ForallR:
      case LRule::BoxR:
      case LRule::BBoxR: {
        LFm pr;
        bool found = false;
        if (nd.rule == LRule::ForallR) found = find_forallr(C, p[nd.i].seq, nd.eigen, &pr);
        else found = find_boxr(C, p[nd.i].seq, nd.rule == LRule::BoxR, nd.eigen, &pr);
        if (!found) throw std::logic_error("classical_to_negneg: lost the principal of a checked node");
        bool quant = nd.rule == LRule::ForallR;
        // the aux lives at the eigen world for the modal rules, at the
        // principal's world for the quantifier
        std::string at = quant ? pr.w : nd.eigen;
        Fm auxf = quant ? instantiate(pr.f->a, prop(nd.eigen)) : pr.f->a;
        int r = unnegate(rec(nd.i, at), at, auxf);
        LNode rr = nd;
        rr.i = r;
        rr.seq.rel = C.rel;
        rr.seq.lhs = out[r].seq.lhs;
        rr.seq.rhs = {pr};
        int r3 = push_node(out, std::move(rr));
        int rb = splice(out, bottom_derivation(C.rel, out[r3].seq.lhs, pr.w, xw, f_bot()));
        LNode il;
        il.rule = LRule::ImplL;
        il.i = r3;
        il.j = rb;
        il.seq.rel = C.rel;
        il.seq.lhs = out[r3].seq.lhs;
        il.seq.lhs.insert({pr.w, f_not(pr.f)});
        il.seq.rhs = {xbot};
        res = wl_chain(out, push_node(out, std::move(il)), goal_lhs(C));
        break;
      }

      case LRule::ForallL:
      case LRule::BoxL:
      case LRule::BBoxL: {
        LFm pr, aux;
        bool found = false;
        if (nd.rule == LRule::ForallL) {
          found = find_foralll(C, p[nd.i].seq, nd.witness, &pr);
          if (found) aux = {pr.w, instantiate(pr.f->a, nd.witness)};
        } else {
          found = find_boxl(C, p[nd.i].seq, nd.rule == LRule::BoxL, &pr, &aux);
        }
        if (!found) throw std::logic_error("classical_to_negneg: lost the principal of a checked node");
        int r = rec(nd.i, xw);
        LNode m = nd;
        m.i = r;
        m.j = -1;
        m.seq.rel = C.rel;
        m.seq.lhs = minus(out[r].seq.lhs, aux);
        m.seq.lhs.insert(pr);
        m.seq.rhs = {xbot};
        res = wl_chain(out, push_node(out, std::move(m)), goal_lhs(C));
        break;
      }

      case LRule::NegNeg:
        throw std::logic_error("classical_to_negneg: negneg cannot occur in the input");
    }
    memo.emplace(key, res);
    return res;
  };

  int root = rec((int)p.size() - 1, x);
  LSeq want{p.back().seq.rel, goal_lhs(p.back().seq), {{x, f_bot()}}};
  if (!(out[root].seq == want))
    throw std::logic_error("classical_to_negneg: rebuilt conclusion drifted off target");
  if (root != (int)out.size() - 1) {
    LNode cl;
    cl.rule = LRule::CL;
    cl.i = root;
    cl.seq = out[root].seq;
    push_node(out, std::move(cl));
  }
  return out;
}

}  // namespace tenselab
