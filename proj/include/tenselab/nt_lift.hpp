// Proof-level double-negation translation: a Kt2 proof becomes an IKt2 proof
// of the translated conclusion, line by line.
//
// Most axioms translate to instances of themselves at translated bindings.
// The exceptions, handled by small derivation blocks:
//   - the diamond schemas: translating an encoding relativises the bound
//     variable (X becomes not not X inside the quantifier), which is no
//     longer the encoding template, so the translated instances are
//     re-derived directly;
//   - Compr: (A[C/X])^N matches forall X A^N -> A^N[C^N/X] only up to the
//     provable equivalence not not C^N <-> C^N at the substituted spots,
//     spliced in via a substitution congruence;
//   - DNE: replaced by the dne-of-translation block, since translated
//     formulas are negative.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lemma_bank.hpp"

namespace tenselab {

namespace nt_detail {

using namespace glue;
using pl::app;
using pl::hyp;
using pl::lam;
using pl::lam2;
using pl::thm;

// Recover the components of an encoded conjunction. A conjunction of
// mutually converse implications reads back as an iff, so accept both.
inline std::pair<Fm, Fm> conj_parts(const Fm& cf) {
  Sugar s = match_sugar(cf);
  if (s.kind == Sugar::And) return {s.a, s.b};
  if (s.kind == Sugar::Iff) return {imp(s.a, s.b), imp(s.b, s.a)};
  throw std::logic_error("conj_parts: not a conjunction: " + print(cf));
}

// Split a line proving an encoded conjunction into its two components.
inline std::pair<int, int> conj_split(ProofBuilder& pb, int cl) {
  auto [f, g] = conj_parts(pb.formula(cl));
  int el = and_elim_l(pb, f, g);
  int er = and_elim_r(pb, f, g);
  return {pb.mp(el, cl), pb.mp(er, cl)};
}

// Left component only. Used where the right half would be a dead line,
// which the generalisation freshness scan of a surrounding proof would
// then flag: every spliced line must stay inside the cone of the line it
// replaces.
inline int conj_fst(ProofBuilder& pb, int cl) {
  auto [f, g] = conj_parts(pb.formula(cl));
  return pb.mp(and_elim_l(pb, f, g), cl);
}

// Double-negation translation with a marker: the propositional symbol s
// stays bare while every other atom is double-negated.
inline Fm nt_marked(const Fm& f, const std::string& s) {
  switch (f->tag) {
    case Tag::Prop:
      if (f->name == s) return f;
      [[fallthrough]];
    case Tag::Var:
    case Tag::Bound:
      return nn(f);
    case Tag::Impl:
      return imp(nt_marked(f->a, s), nt_marked(f->b, s));
    case Tag::Box:
      return box(nt_marked(f->a, s));
    case Tag::BBox:
      return bbox(nt_marked(f->a, s));
    case Tag::All:
      return all(nt_marked(f->a, s));
    default:
      throw std::invalid_argument("nt_marked: native diamonds not translatable");
  }
}

// Congruence: from d2e : D -> E and e2d : E -> D, a line proving
// (G[D/s] -> G[E/s]) and (G[E/s] -> G[D/s]) as one encoded conjunction.
// Keeping both directions in a single conclusion keeps every line of the
// construction inside the dependency cone of the generalisations performed
// at the binder case.
inline int subst_iff(ProofBuilder& pb, const Fm& g, const std::string& s,
                     const Fm& d, const Fm& e, int d2e, int e2d) {
  if (!has_prop(g, s)) {
    int i = pb.thm_I(g);
    return conj_pair(pb, i, i);
  }
  if (g->tag == Tag::Prop)  // g is exactly the marker
    return conj_pair(pb, d2e, e2d);
  switch (g->tag) {
    case Tag::Impl: {
      int r1 = subst_iff(pb, g->a, s, d, e, d2e, e2d);
      int r2 = subst_iff(pb, g->b, s, d, e, d2e, e2d);
      auto [f1, b1] = conj_split(pb, r1);
      auto [f2, b2] = conj_split(pb, r2);
      Fm ad = subst_prop(g->a, s, d), ae = subst_prop(g->a, s, e);
      Fm bd = subst_prop(g->b, s, d), be = subst_prop(g->b, s, e);
      int fwd = pl::compile(pb, lam2(imp(ad, bd), ae,
                                     app(thm(f2), app(hyp(1), app(thm(b1), hyp(0))))));
      int bwd = pl::compile(pb, lam2(imp(ae, be), ad,
                                     app(thm(b2), app(hyp(1), app(thm(f1), hyp(0))))));
      return conj_pair(pb, fwd, bwd);
    }
    case Tag::Box: {
      auto [f1, b1] = conj_split(pb, subst_iff(pb, g->a, s, d, e, d2e, e2d));
      return conj_pair(pb, box_map(pb, f1), box_map(pb, b1));
    }
    case Tag::BBox: {
      auto [f1, b1] = conj_split(pb, subst_iff(pb, g->a, s, d, e, d2e, e2d));
      return conj_pair(pb, bbox_map(pb, f1), bbox_map(pb, b1));
    }
    case Tag::All: {
      std::string t = pb.fresh_prop();
      Fm gb = instantiate(g->a, prop(t));
      int c = subst_iff(pb, gb, s, d, e, d2e, e2d);
      int g1 = pb.gen(c, t);  // forall X of the instantiated conjunction
      Fm gd = subst_prop(g, s, d), ge = subst_prop(g, s, e);
      auto half = [&](bool forward) {
        std::string t2 = pb.fresh_prop();
        Fm tp = prop(t2);
        Fm src = forward ? gd : ge, dst = forward ? ge : gd;
        Fm ft = imp(instantiate(src->a, tp), instantiate(dst->a, tp));
        Fm gt = imp(instantiate(dst->a, tp), instantiate(src->a, tp));
        int el = forward ? and_elim_l(pb, ft, gt) : and_elim_r(pb, gt, ft);
        int g2 = pb.gen(el, t2);  // forall X (conj body -> direction body)
        Fm g2f = pb.formula(g2);
        int fa1 = pb.axiom(AxiomSchema::FunAll, {g2f->a->a, g2f->a->b});
        int w1 = pb.mp(pb.mp(fa1, g2), g1);  // forall X (src body -> dst body)
        int fa2 = pb.axiom(AxiomSchema::FunAll, {src->a, dst->a});
        return pb.mp(fa2, w1);
      };
      int fwd = half(true);
      int bwd = half(false);
      return conj_pair(pb, fwd, bwd);
    }
    default:
      throw std::logic_error("subst_iff: unexpected node");
  }
}

// botN -> bot and its converse, as lines.
inline int botn_to_bot(ProofBuilder& pb) {
  Fm bot = f_bot();
  int c2 = compr(pb, nn(bnd(0)), bot);
  int i = pb.thm_I(bot);
  return pl::compile(pb, lam(negative_translate(bot),
                             app(app(thm(c2), hyp(0)), thm(i))));
}

inline int bot_to_botn(ProofBuilder& pb) {
  return compr(pb, bnd(0), negative_translate(f_bot()));
}

// The translation of a Compr instance: Compr at the translated bindings,
// then a congruence bridge across not not C^N <-> C^N at the spots.
inline int lift_compr(ProofBuilder& pb, const Fm& body, const Fm& c) {
  Fm ntb = negative_translate(body);
  Fm ntc = negative_translate(c);
  int ca = pb.axiom(AxiomSchema::Compr, {ntb, ntc});
  if (!uses_bound(body, 0)) return ca;  // vacuous binder: both sides coincide
  std::string s = pb.fresh_prop();
  Fm h = nt_marked(instantiate(body, prop(s)), s);
  int d2e = detail_lemmas::dne_of_translation(pb, c);
  int e2d = dn_intro(pb, ntc);
  int conj = subst_iff(pb, h, s, nn(ntc), ntc, d2e, e2d);
  return chain(pb, ca, conj_fst(pb, conj));
}

// Translations of the diamond schema instances, re-derived against the
// relativised encodings.
inline int lift_fun_dia(ProofBuilder& pb, const Fm& nta, const Fm& ntb) {
  std::string p = pb.fresh_prop();
  Fm w = nn(prop(p));
  int s1 = pl::compile(pb, pl::lam3(imp(nta, ntb), imp(ntb, bbox(w)), nta,
                                    app(hyp(1), app(hyp(2), hyp(0)))));
  int s2 = box_map2(pb, s1);
  Fm body = imp(box(imp(shift_above(nta, 0, 1), bbox(nn(bnd(0))))), nn(bnd(0)));
  int c = compr(pb, body, prop(p));
  int s3 = pl::compile(pb, pl::lam3(box(imp(nta, ntb)), all(body), box(imp(ntb, bbox(w))),
                                    app(app(thm(c), hyp(1)), app(app(thm(s2), hyp(2)), hyp(0)))));
  return gen_dist_n(pb, s3, p, 2);
}

inline int lift_fun_bdia(ProofBuilder& pb, const Fm& nta, const Fm& ntb) {
  std::string p = pb.fresh_prop();
  Fm w = nn(prop(p));
  int s1 = pl::compile(pb, pl::lam3(imp(nta, ntb), imp(ntb, box(w)), nta,
                                    app(hyp(1), app(hyp(2), hyp(0)))));
  int s2 = bbox_map2(pb, s1);
  Fm body = imp(bbox(imp(shift_above(nta, 0, 1), box(nn(bnd(0))))), nn(bnd(0)));
  int c = compr(pb, body, prop(p));
  int s3 = pl::compile(pb, pl::lam3(bbox(imp(nta, ntb)), all(body), bbox(imp(ntb, box(w))),
                                    app(app(thm(c), hyp(1)), app(app(thm(s2), hyp(2)), hyp(0)))));
  return gen_dist_n(pb, s3, p, 2);
}

// Relativisation bridge dia^enc A -> dia^N A (specialise X to not not X),
// for the T schemas with a diamond in argument position.
inline int dia_relativise(ProofBuilder& pb, const Fm& a) {
  std::string p = pb.fresh_prop();
  int e1 = compr(pb, f_dia(a)->a, nn(prop(p)));
  return gen_dist(pb, e1, p);
}

inline int bdia_relativise(ProofBuilder& pb, const Fm& a) {
  std::string p = pb.fresh_prop();
  int e1 = compr(pb, f_bdia(a)->a, nn(prop(p)));
  return gen_dist(pb, e1, p);
}

}  // namespace nt_detail

// Lift a Kt2 proof to an IKt2 proof of the translated conclusion.
inline HilbertProof lift_kt2_proof(const HilbertProof& p) {
  Verdict v = check_proof(p, System::Kt2);
  if (!v) throw std::invalid_argument("lift: input proof rejected at line " +
                                      std::to_string(v.line) + ": " + v.reason);
  using namespace nt_detail;
  ProofBuilder pb(System::IKt2);
  pb.set_dedup(false);
  for (const auto& st : p) {
    pb.supply().avoid_all(st.formula);
    for (const Fm& bf : st.binds) pb.supply().avoid_all(bf);
    if (!st.gen_sym.empty()) pb.supply().avoid(st.gen_sym);
  }
  std::vector<int> m(p.size());
  for (size_t n = 0; n < p.size(); n++) {
    const HilbertStep& st = p[n];
    Fm target = negative_translate(st.formula);
    int line = -1;
    switch (st.kind) {
      case StepKind::Axiom: {
        std::vector<Fm> b = st.binds;
        if (b.empty()) b = *match_axiom(st.schema, st.formula);
        switch (st.schema) {
          case AxiomSchema::K:
          case AxiomSchema::S:
          case AxiomSchema::FunAll:
          case AxiomSchema::V:
          case AxiomSchema::FunBox:
          case AxiomSchema::FunBBox: {
            std::vector<Fm> nb;
            for (const Fm& f : b) nb.push_back(negative_translate(f));
            line = pb.axiom(st.schema, nb);
            break;
          }
          case AxiomSchema::Compr:
            line = lift_compr(pb, b[0], b[1]);
            break;
          case AxiomSchema::FunDia:
            line = lift_fun_dia(pb, negative_translate(b[0]), negative_translate(b[1]));
            break;
          case AxiomSchema::FunBDia:
            line = lift_fun_bdia(pb, negative_translate(b[0]), negative_translate(b[1]));
            break;
          case AxiomSchema::TenseBoxBDia: {
            Fm nta = negative_translate(b[0]);
            int t = pb.axiom(AxiomSchema::TenseBoxBDia, {nta});
            line = chain(pb, t, box_map(pb, bdia_relativise(pb, nta)));
            break;
          }
          case AxiomSchema::TenseBBoxDia: {
            Fm nta = negative_translate(b[0]);
            int t = pb.axiom(AxiomSchema::TenseBBoxDia, {nta});
            line = chain(pb, t, bbox_map(pb, dia_relativise(pb, nta)));
            break;
          }
          case AxiomSchema::TenseBDiaBox: {
            Fm nta = negative_translate(b[0]);
            int c = compr(pb, target->a->a, nta);
            int nb = pb.nec_bbox(box_map(pb, dn_intro(pb, nta)));
            int dne = detail_lemmas::dne_of_translation(pb, b[0]);
            line = pl::compile(pb, lam(target->a,
                                       app(thm(dne), app(app(thm(c), hyp(0)), thm(nb)))));
            break;
          }
          case AxiomSchema::TenseDiaBBox: {
            Fm nta = negative_translate(b[0]);
            int c = compr(pb, target->a->a, nta);
            int nb = pb.nec_box(bbox_map(pb, dn_intro(pb, nta)));
            int dne = detail_lemmas::dne_of_translation(pb, b[0]);
            line = pl::compile(pb, lam(target->a,
                                       app(thm(dne), app(app(thm(c), hyp(0)), thm(nb)))));
            break;
          }
          case AxiomSchema::DNE: {
            Fm nta = negative_translate(b[0]);
            int dne = detail_lemmas::dne_of_translation(pb, b[0]);
            int bn2b = botn_to_bot(pb);
            int b2bn = bot_to_botn(pb);
            Fm botn = negative_translate(f_bot());
            line = pl::compile(
                pb,
                lam(imp(imp(nta, botn), botn),
                    app(thm(dne),
                        lam(f_not(nta),
                            app(thm(bn2b),
                                app(hyp(1), lam(nta, app(thm(b2bn),
                                                         app(hyp(1), hyp(0))))))))));
            break;
          }
        }
        break;
      }
      case StepKind::MP:
        line = pb.mp(m[st.i], m[st.j]);
        break;
      case StepKind::Gen:
        line = pb.gen(m[st.i], st.gen_sym);
        break;
      case StepKind::NecBox:
        line = pb.nec_box(m[st.i]);
        break;
      case StepKind::NecBBox:
        line = pb.nec_bbox(m[st.i]);
        break;
    }
    if (!eq(pb.formula(line), target))
      throw std::logic_error("lift: line " + std::to_string(n) + " produced " +
                             print(pb.formula(line)) + " instead of " + print(target));
    m[n] = line;
  }
  HilbertProof out = pb.lines();
  out.resize(m[p.size() - 1] + 1);
  return out;
}

}  // namespace tenselab
