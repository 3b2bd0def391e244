// Checker for the labelled tense calculi. A proof is a vector of nodes in
// dependency order; each node names a rule and the indices of its
// premisses, so the same subtree can be referenced twice without copying.
// Cedents are sets, so the conditions here are inclusion based: a rule
// application may silently absorb a contraction (the principal or an aux
// formula being already present elsewhere), which is sound because the
// difference from the reference reading is a few admissible structural
// steps. Weakening itself is NOT absorbed; wl/wr are explicit nodes.

#pragma once

#include <string>
#include <vector>

#include "sequent.hpp"

namespace tenselab {

enum class LRule {
  Id,
  Cut,
  WL,
  WR,
  CL,
  CR,
  ImplL,
  ImplR,
  ForallL,
  ForallR,
  BoxL,
  BoxR,
  BBoxL,
  BBoxR,
  NegNeg,
};

inline const char* lrule_name(LRule r) {
  switch (r) {
    case LRule::Id: return "id";
    case LRule::Cut: return "cut";
    case LRule::WL: return "wl";
    case LRule::WR: return "wr";
    case LRule::CL: return "cl";
    case LRule::CR: return "cr";
    case LRule::ImplL: return "impll";
    case LRule::ImplR: return "implr";
    case LRule::ForallL: return "foralll";
    case LRule::ForallR: return "forallr";
    case LRule::BoxL: return "boxl";
    case LRule::BoxR: return "boxr";
    case LRule::BBoxL: return "bboxl";
    case LRule::BBoxR: return "bboxr";
    case LRule::NegNeg: return "negneg";
  }
  return "?";
}

inline int lrule_arity(LRule r) {
  switch (r) {
    case LRule::Id: return 0;
    case LRule::Cut:
    case LRule::ImplL: return 2;
    default: return 1;
  }
}

struct LNode {
  LSeq seq;
  LRule rule = LRule::Id;
  int i = -1, j = -1;    // premiss indices, j only for cut / impll
  Fm witness;            // foralll
  std::string eigen;     // forallr (proposition), boxr / bboxr (world)
};

using LabelledProof = std::vector<LNode>;

enum class CalcTag { LKt2, LIKt2, MLIKt2 };

struct Calculus {
  CalcTag tag = CalcTag::LKt2;
  bool cut_allowed = true;
};

inline const char* calc_name(CalcTag t) {
  switch (t) {
    case CalcTag::LKt2: return "LKt2";
    case CalcTag::LIKt2: return "LIKt2";
    case CalcTag::MLIKt2: return "MLIKt2";
  }
  return "?";
}

struct LVerdict {
  bool ok = true;
  int node = -1;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// The instantiation finders below are shared between the checker and the
// proof transformations, which need to know which principal a node acted
// on, not merely that one exists.

namespace labelled_detail {

inline bool subset(const Cedent& a, const Cedent& b) {
  for (const auto& x : a)
    if (!b.count(x)) return false;
  return true;
}

inline Cedent minus(Cedent a, const LFm& x) {
  a.erase(x);
  return a;
}

inline Cedent uni(Cedent a, const Cedent& b) {
  a.insert(b.begin(), b.end());
  return a;
}

// premiss zone sandwiched between conclusion-minus-principal and
// conclusion-plus-aux; the aux itself must be present
inline bool zone_step(const Cedent& concl, const LFm& pr, const LFm& aux, const Cedent& prem) {
  if (!prem.count(aux)) return false;
  if (!subset(minus(concl, pr), prem)) return false;
  Cedent cap = concl;
  cap.insert(aux);
  return subset(prem, cap);
}

inline bool is_right_logical(LRule r) {
  return r == LRule::ImplR || r == LRule::ForallR || r == LRule::BoxR ||
         r == LRule::BBoxR || r == LRule::NegNeg;
}

inline bool find_impll(const LSeq& C, const LSeq& P1, const LSeq& P2, LFm* pr_out = nullptr) {
  if (!(P1.rel == C.rel) || !(P2.rel == C.rel)) return false;
  for (const LFm& pr : C.lhs) {
    if (pr.f->tag != Tag::Impl) continue;
    LFm auxa{pr.w, pr.f->a}, auxb{pr.w, pr.f->b};
    if (!P1.rhs.count(auxa) || !P2.lhs.count(auxb)) continue;
    if (!subset(P1.lhs, C.lhs) || !subset(P2.rhs, C.rhs)) continue;
    if (!subset(minus(P1.rhs, auxa), C.rhs)) continue;
    if (!subset(minus(P2.lhs, auxb), C.lhs)) continue;
    Cedent lcov = uni(P1.lhs, minus(P2.lhs, auxb));
    lcov.insert(pr);
    if (!subset(C.lhs, lcov)) continue;
    if (!subset(C.rhs, uni(minus(P1.rhs, auxa), P2.rhs))) continue;
    if (pr_out) *pr_out = pr;
    return true;
  }
  return false;
}

inline bool find_implr(const LSeq& C, const LSeq& P, LFm* pr_out = nullptr) {
  if (!(P.rel == C.rel)) return false;
  for (const LFm& pr : C.rhs) {
    if (pr.f->tag != Tag::Impl) continue;
    LFm auxa{pr.w, pr.f->a}, auxb{pr.w, pr.f->b};
    if (!P.lhs.count(auxa)) continue;
    if (!subset(C.lhs, P.lhs)) continue;
    Cedent cap = C.lhs;
    cap.insert(auxa);
    if (!subset(P.lhs, cap)) continue;
    if (!zone_step(C.rhs, pr, auxb, P.rhs)) continue;
    if (pr_out) *pr_out = pr;
    return true;
  }
  return false;
}

inline bool find_foralll(const LSeq& C, const LSeq& P, const Fm& witness, LFm* pr_out = nullptr) {
  if (!witness || witness->dangling > 0) return false;
  if (!(P.rel == C.rel) || !(P.rhs == C.rhs)) return false;
  for (const LFm& pr : C.lhs) {
    if (pr.f->tag != Tag::All) continue;
    LFm aux{pr.w, instantiate(pr.f->a, witness)};
    if (!zone_step(C.lhs, pr, aux, P.lhs)) continue;
    if (pr_out) *pr_out = pr;
    return true;
  }
  return false;
}

inline bool find_forallr(const LSeq& C, const LSeq& P, const std::string& eigen, LFm* pr_out = nullptr) {
  if (eigen.empty() || !isupper((unsigned char)eigen[0])) return false;
  if (prop_in_seq(C, eigen)) return false;
  if (!(P.rel == C.rel) || !(P.lhs == C.lhs)) return false;
  for (const LFm& pr : C.rhs) {
    if (pr.f->tag != Tag::All) continue;
    LFm aux{pr.w, instantiate(pr.f->a, prop(eigen))};
    if (!zone_step(C.rhs, pr, aux, P.rhs)) continue;
    if (pr_out) *pr_out = pr;
    return true;
  }
  return false;
}

// fwd selects boxl, otherwise bboxl; the edge runs principal-to-aux for
// box and aux-to-principal for bbox
inline bool find_boxl(const LSeq& C, const LSeq& P, bool fwd, LFm* pr_out = nullptr,
                      LFm* aux_out = nullptr) {
  if (!(P.rel == C.rel) || !(P.rhs == C.rhs)) return false;
  for (const LFm& pr : C.lhs) {
    if (pr.f->tag != (fwd ? Tag::Box : Tag::BBox)) continue;
    for (const auto& [a, b] : C.rel) {
      if ((fwd ? a : b) != pr.w) continue;
      LFm aux{fwd ? b : a, pr.f->a};
      if (!zone_step(C.lhs, pr, aux, P.lhs)) continue;
      if (pr_out) *pr_out = pr;
      if (aux_out) *aux_out = aux;
      return true;
    }
  }
  return false;
}

inline bool find_boxr(const LSeq& C, const LSeq& P, bool fwd, const std::string& eigen,
                      LFm* pr_out = nullptr) {
  if (!lseq_detail::world_ok(eigen) || world_in_seq(C, eigen)) return false;
  if (!(P.lhs == C.lhs)) return false;
  for (const LFm& pr : C.rhs) {
    if (pr.f->tag != (fwd ? Tag::Box : Tag::BBox)) continue;
    RelCtx want = C.rel;
    want.insert(fwd ? RelAtom{pr.w, eigen} : RelAtom{eigen, pr.w});
    if (!(P.rel == want)) continue;
    LFm aux{eigen, pr.f->a};
    if (!zone_step(C.rhs, pr, aux, P.rhs)) continue;
    if (pr_out) *pr_out = pr;
    return true;
  }
  return false;
}

inline bool find_cut(const LSeq& C, const LSeq& P1, const LSeq& P2, LFm* cf_out = nullptr) {
  if (!(P1.rel == C.rel) || !(P2.rel == C.rel)) return false;
  for (const LFm& cf : P1.rhs) {
    if (!P2.lhs.count(cf)) continue;
    if (!subset(P1.lhs, C.lhs) || !subset(P2.rhs, C.rhs)) continue;
    if (!subset(minus(P1.rhs, cf), C.rhs)) continue;
    if (!subset(minus(P2.lhs, cf), C.lhs)) continue;
    if (!subset(C.lhs, uni(P1.lhs, minus(P2.lhs, cf)))) continue;
    if (!subset(C.rhs, uni(minus(P1.rhs, cf), P2.rhs))) continue;
    if (cf_out) *cf_out = cf;
    return true;
  }
  return false;
}

}  // namespace labelled_detail

inline LVerdict check_labelled_proof(const LabelledProof& p, Calculus calc, bool extended = false) {
  using namespace labelled_detail;
  LVerdict v;
  auto fail = [&](int n, std::string r) {
    v.ok = false;
    v.node = n;
    v.reason = std::move(r);
    return v;
  };
  if (p.empty()) return fail(-1, "empty proof");
  for (int n = 0; n < (int)p.size(); ++n) {
    const LNode& nd = p[n];
    const LSeq& C = nd.seq;
    int arity = lrule_arity(nd.rule);
    if (arity >= 1 && (nd.i < 0 || nd.i >= n)) return fail(n, "premiss index out of range");
    if (arity == 2 && (nd.j < 0 || nd.j >= n)) return fail(n, "premiss index out of range");
    if (calc.tag == CalcTag::LIKt2 && C.rhs.size() != 1)
      return fail(n, "succedent must be a single formula in this calculus");
    if (calc.tag == CalcTag::MLIKt2 && is_right_logical(nd.rule) &&
        p[nd.i].seq.rhs.size() != 1)
      return fail(n, "right rule needs a single-succedent premiss in this calculus");

    switch (nd.rule) {
      case LRule::Id: {
        if (C.lhs.size() != 1 || C.rhs.size() != 1 || !(*C.lhs.begin() == *C.rhs.begin()))
          return fail(n, "id must conclude v:A => v:A");
        break;
      }

      case LRule::WL:
      case LRule::WR: {
        const LSeq& P = p[nd.i].seq;
        bool left = nd.rule == LRule::WL;
        const Cedent& grow = left ? C.lhs : C.rhs;
        const Cedent& from = left ? P.lhs : P.rhs;
        bool other_same = left ? P.rhs == C.rhs : P.lhs == C.lhs;
        if (!(P.rel == C.rel) || !other_same)
          return fail(n, "weakening changes exactly one cedent");
        if (!subset(from, grow))
          return fail(n, "weakening premiss is not contained in the conclusion");
        int added = 0;
        for (const auto& x : grow)
          if (!from.count(x)) ++added;
        if (added > 1) return fail(n, "weakening adds more than one formula");
        break;
      }

      case LRule::CL:
      case LRule::CR: {
        // contraction is invisible on sets; the node is pure bookkeeping
        if (!(p[nd.i].seq == C)) return fail(n, "contraction premiss must equal the conclusion");
        break;
      }

      case LRule::Cut: {
        if (!calc.cut_allowed) return fail(n, "cut is not allowed here");
        if (!find_cut(C, p[nd.i].seq, p[nd.j].seq))
          return fail(n, "no cut formula joins the premisses to this conclusion");
        break;
      }

      case LRule::ImplL: {
        if (!find_impll(C, p[nd.i].seq, p[nd.j].seq))
          return fail(n, "no implication in the antecedent matches the premisses");
        break;
      }

      case LRule::ImplR: {
        if (!find_implr(C, p[nd.i].seq))
          return fail(n, "no implication in the succedent matches the premiss");
        break;
      }

      case LRule::ForallL: {
        if (!nd.witness) return fail(n, "foralll needs a witness formula");
        if (nd.witness->dangling > 0) return fail(n, "foralll witness has unbound variables");
        if (!find_foralll(C, p[nd.i].seq, nd.witness))
          return fail(n, "no forall in the antecedent matches the premiss at this witness");
        break;
      }

      case LRule::ForallR: {
        if (nd.eigen.empty() || !isupper((unsigned char)nd.eigen[0]))
          return fail(n, "forallr needs a proposition symbol as eigenvariable");
        if (prop_in_seq(C, nd.eigen))
          return fail(n, "eigenvariable " + nd.eigen + " occurs in the conclusion");
        if (!find_forallr(C, p[nd.i].seq, nd.eigen))
          return fail(n, "no forall in the succedent matches the premiss at the eigenvariable");
        break;
      }

      case LRule::BoxL:
      case LRule::BBoxL: {
        bool fwd = nd.rule == LRule::BoxL;
        if (!find_boxl(C, p[nd.i].seq, fwd))
          return fail(n, std::string("no ") + (fwd ? "box" : "bbox") +
                             " in the antecedent reaches the premiss along an edge");
        break;
      }

      case LRule::BoxR:
      case LRule::BBoxR: {
        bool fwd = nd.rule == LRule::BoxR;
        if (!lseq_detail::world_ok(nd.eigen))
          return fail(n, std::string(lrule_name(nd.rule)) + " needs a fresh world symbol");
        if (world_in_seq(C, nd.eigen))
          return fail(n, "world " + nd.eigen + " occurs in the conclusion");
        if (!find_boxr(C, p[nd.i].seq, fwd, nd.eigen))
          return fail(n, std::string("no ") + (fwd ? "box" : "bbox") +
                             " in the succedent matches the premiss at the new world");
        break;
      }

      case LRule::NegNeg: {
        if (!extended) return fail(n, "negneg needs the extended checker");
        const LSeq& P = p[nd.i].seq;
        if (!(P.rel == C.rel) || !(P.lhs == C.lhs))
          return fail(n, "negneg only rewrites the succedent");
        if (C.rhs.size() != 1 || P.rhs.size() != 1)
          return fail(n, "negneg works on single succedents");
        const LFm& goal = *C.rhs.begin();
        const LFm& prem = *P.rhs.begin();
        if (prem.w != goal.w || !eq(prem.f, f_not(f_not(goal.f))))
          return fail(n, "negneg premiss must be the double negation of the conclusion");
        break;
      }
    }
  }
  return v;
}

}  // namespace tenselab
