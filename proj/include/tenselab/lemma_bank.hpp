// The lemma bank: machine-built Hilbert proofs for the derived principles
// the systems are expected to validate, from the forall/box distribution
// examples up to the negativity lemmas behind the double-negation
// translation.
//
// Parameter conventions: parameters are formulas. Lemmas about a binder
// (box-dist-forall, barcan-*, neg-forall) read the free variable X of their
// parameter as the bound slot; a parameter without free X yields the vacuous
// instance. The dia-iff lemmas live in IKt2Dia (they relate the native
// diamonds to their encodings); everything else is derived in IKt2 with
// diamonds macro-expanded.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hilbert.hpp"
#include "pl.hpp"

namespace tenselab {

namespace glue {

inline Fm nn(const Fm& f) { return f_not(f_not(f)); }

// Compr instance: forall X body -> body[c].
inline int compr(ProofBuilder& pb, const Fm& body, const Fm& c) {
  return pb.axiom(AxiomSchema::Compr, {body, c});
}

// From ab : A -> B and bc : B -> C, the composite A -> C.
inline int chain(ProofBuilder& pb, int ab, int bc) {
  Fm f = pb.formula(ab);
  return pl::compile(pb, pl::lam(f->a, pl::app(pl::thm(bc), pl::app(pl::thm(ab), pl::hyp(0)))));
}

// box A -> box B from A -> B (nec + funBox); the *2 forms push through two
// arguments of a curried implication.
inline int box_map(ProofBuilder& pb, int l) {
  Fm f = pb.formula(l);
  int n = pb.nec_box(l);
  return pb.mp(pb.axiom(AxiomSchema::FunBox, {f->a, f->b}), n);
}

inline int bbox_map(ProofBuilder& pb, int l) {
  Fm f = pb.formula(l);
  int n = pb.nec_bbox(l);
  return pb.mp(pb.axiom(AxiomSchema::FunBBox, {f->a, f->b}), n);
}

inline int box_map2(ProofBuilder& pb, int l) {
  Fm f = pb.formula(l);  // A -> (B -> C)
  int f1 = pb.mp(pb.axiom(AxiomSchema::FunBox, {f->a, f->b}), pb.nec_box(l));
  int f2 = pb.axiom(AxiomSchema::FunBox, {f->b->a, f->b->b});
  return pl::compile(pb, pl::lam(box(f->a), pl::app(pl::thm(f2), pl::app(pl::thm(f1), pl::hyp(0)))));
}

inline int bbox_map2(ProofBuilder& pb, int l) {
  Fm f = pb.formula(l);
  int f1 = pb.mp(pb.axiom(AxiomSchema::FunBBox, {f->a, f->b}), pb.nec_bbox(l));
  int f2 = pb.axiom(AxiomSchema::FunBBox, {f->b->a, f->b->b});
  return pl::compile(pb, pl::lam(bbox(f->a), pl::app(pl::thm(f2), pl::app(pl::thm(f1), pl::hyp(0)))));
}

// Theorem forall X (C -> D) -> (C -> forall X D), C without the bound slot.
inline int all_dist_thm(ProofBuilder& pb, const Fm& c, const Fm& dbody) {
  int fa = pb.axiom(AxiomSchema::FunAll, {c, dbody});
  int v = pb.axiom(AxiomSchema::V, {c});
  return pl::compile(pb, pl::lam2(all(imp(c, dbody)), c,
                                  pl::app(pl::app(pl::thm(fa), pl::hyp(1)),
                                          pl::app(pl::thm(v), pl::hyp(0)))));
}

namespace detail {

// Composite distributor: from forall X (A1 -> ... -> An -> G) to
// A1 -> ... -> An -> forall X G, as a term awaiting the forall line.
inline pl::Tm distribute(ProofBuilder& pb, const Fm& allf, int n) {
  const Fm& body = allf->a;
  if (body->tag != Tag::Impl || uses_bound(body->a, 0))
    throw std::logic_error("distribute: prefix captures the binder");
  Fm a1 = shift_above(body->a, 0, -1);
  int t1 = all_dist_thm(pb, a1, body->b);
  if (n == 1) return pl::thm(t1);
  pl::Tm inner = distribute(pb, all(body->b), n - 1);
  return pl::lam2(allf, a1,
                  pl::app(inner, pl::app(pl::app(pl::thm(t1), pl::hyp(1)), pl::hyp(0))));
}

}  // namespace detail

// From line : A1 -> ... -> An -> G with eigen symbol p only in G, conclude
// A1 -> ... -> An -> forall X G ("by gen, funAll, V").
inline int gen_dist_n(ProofBuilder& pb, int line, const std::string& p, int n) {
  int g = pb.gen(line, p);
  if (n == 0) return g;
  Fm gf = pb.formula(g);
  return pl::compile(pb, pl::app(detail::distribute(pb, gf, n), pl::thm(g)));
}

inline int gen_dist(ProofBuilder& pb, int line, const std::string& p) {
  return gen_dist_n(pb, line, p, 1);
}

// Introduction/elimination theorems for the encoded connectives.
inline int or_intro_l(ProofBuilder& pb, const Fm& a, const Fm& b) {
  std::string p = pb.fresh_prop();
  Fm pp = prop(p);
  int base = pl::compile(pb, pl::lam3(a, imp(a, pp), imp(b, pp),
                                      pl::app(pl::hyp(1), pl::hyp(2))));
  return gen_dist(pb, base, p);
}

inline int or_intro_r(ProofBuilder& pb, const Fm& a, const Fm& b) {
  std::string p = pb.fresh_prop();
  Fm pp = prop(p);
  int base = pl::compile(pb, pl::lam3(b, imp(a, pp), imp(b, pp),
                                      pl::app(pl::hyp(0), pl::hyp(2))));
  return gen_dist(pb, base, p);
}

inline int and_intro(ProofBuilder& pb, const Fm& a, const Fm& b) {
  std::string p = pb.fresh_prop();
  Fm pp = prop(p);
  int base = pl::compile(pb, pl::lam3(a, b, imp(a, imp(b, pp)),
                                      pl::app(pl::app(pl::hyp(0), pl::hyp(2)), pl::hyp(1))));
  return gen_dist_n(pb, base, p, 2);
}

inline int and_elim_l(ProofBuilder& pb, const Fm& a, const Fm& b) {
  int c = compr(pb, f_and(a, b)->a, a);
  int k = pb.axiom(AxiomSchema::K, {a, b});
  return pl::compile(pb, pl::lam(f_and(a, b), pl::app(pl::app(pl::thm(c), pl::hyp(0)), pl::thm(k))));
}

inline int and_elim_r(ProofBuilder& pb, const Fm& a, const Fm& b) {
  int c = compr(pb, f_and(a, b)->a, b);
  int k2 = pl::compile(pb, pl::lam2(a, b, pl::hyp(0)));
  return pl::compile(pb, pl::lam(f_and(a, b), pl::app(pl::app(pl::thm(c), pl::hyp(0)), pl::thm(k2))));
}

// Pair two implication lines into the encoded conjunction of their formulas.
inline int conj_pair(ProofBuilder& pb, int fwd, int bwd) {
  int ai = and_intro(pb, pb.formula(fwd), pb.formula(bwd));
  return pb.mp(pb.mp(ai, fwd), bwd);
}

// A -> not not A.
inline int dn_intro(ProofBuilder& pb, const Fm& a) {
  return pl::compile(pb, pl::lam2(a, f_not(a), pl::app(pl::hyp(0), pl::hyp(1))));
}

}  // namespace glue

namespace detail_lemmas {

using namespace glue;
using pl::app;
using pl::hyp;
using pl::lam;
using pl::lam2;
using pl::lam3;
using pl::thm;

// --- diamonds vs their encodings (IKt2Dia) -------------------------------

inline int dia_iff_fwd(ProofBuilder& pb, const Fm& a) {
  std::string p = pb.fresh_prop();
  Fm pp = prop(p);
  int t = pb.axiom(AxiomSchema::TenseDiaBBox, {pp});  // dia bbox P -> P
  int s2 = pl::compile(pb, lam2(dia(a), imp(dia(a), dia(bbox(pp))),
                                app(thm(t), app(hyp(0), hyp(1)))));
  int fd = pb.axiom(AxiomSchema::FunDia, {a, bbox(pp)});
  int s3 = pl::compile(pb, lam2(dia(a), box(imp(a, bbox(pp))),
                                app(app(thm(s2), hyp(1)), app(thm(fd), hyp(0)))));
  return gen_dist(pb, s3, p);
}

inline int dia_iff_bwd(ProofBuilder& pb, const Fm& a) {
  int t = pb.axiom(AxiomSchema::TenseBBoxDia, {a});  // A -> bbox dia A
  int n = pb.nec_box(t);
  Fm hypo = imp(pb.formula(n), dia(a));
  int s3 = pl::compile(pb, lam(hypo, app(hyp(0), thm(n))));
  int c = compr(pb, f_dia(a)->a, dia(a));
  return chain(pb, c, s3);
}

inline int bdia_iff_fwd(ProofBuilder& pb, const Fm& a) {
  std::string p = pb.fresh_prop();
  Fm pp = prop(p);
  int t = pb.axiom(AxiomSchema::TenseBDiaBox, {pp});  // bdia box P -> P
  int s2 = pl::compile(pb, lam2(bdia(a), imp(bdia(a), bdia(box(pp))),
                                app(thm(t), app(hyp(0), hyp(1)))));
  int fd = pb.axiom(AxiomSchema::FunBDia, {a, box(pp)});
  int s3 = pl::compile(pb, lam2(bdia(a), bbox(imp(a, box(pp))),
                                app(app(thm(s2), hyp(1)), app(thm(fd), hyp(0)))));
  return gen_dist(pb, s3, p);
}

inline int bdia_iff_bwd(ProofBuilder& pb, const Fm& a) {
  int t = pb.axiom(AxiomSchema::TenseBoxBDia, {a});  // A -> box bdia A
  int n = pb.nec_bbox(t);
  Fm hypo = imp(pb.formula(n), bdia(a));
  int s3 = pl::compile(pb, lam(hypo, app(hyp(0), thm(n))));
  int c = compr(pb, f_bdia(a)->a, bdia(a));
  return chain(pb, c, s3);
}

// --- distribution over forall (§ box/forall interaction) -----------------

inline int box_dist_forall(ProofBuilder& pb, const Fm& a_marked) {
  Fm body = abstract_var(a_marked, "X");
  std::string p = pb.fresh_prop();
  int c = compr(pb, body, prop(p));  // forall X A -> A[P]
  int m = box_map(pb, c);
  return gen_dist(pb, m, p);
}

inline int bbox_dist_forall(ProofBuilder& pb, const Fm& a_marked) {
  Fm body = abstract_var(a_marked, "X");
  std::string p = pb.fresh_prop();
  int c = compr(pb, body, prop(p));
  int m = bbox_map(pb, c);
  return gen_dist(pb, m, p);
}

inline int barcan_box(ProofBuilder& pb, const Fm& a_marked) {
  Fm body = abstract_var(a_marked, "X");
  std::string p = pb.fresh_prop();
  Fm ap = instantiate(body, prop(p));
  Fm e = all(box(body));  // forall X box A
  int c1 = compr(pb, box(body), prop(p));  // forall X box A -> box A[P]
  int n1 = pb.nec_bbox(c1);
  Fm hypo = imp(pb.formula(n1), ap);
  int s3 = pl::compile(pb, lam(hypo, app(hyp(0), thm(n1))));
  int c2 = compr(pb, pb.mk_bdia(e)->a, ap);  // bdia(forall X box A) elim at A[P]
  int s4 = pl::compile(pb, lam(pb.mk_bdia(e), app(thm(s3), app(thm(c2), hyp(0)))));
  int g = gen_dist(pb, s4, p);  // bdia(forall X box A) -> forall X A
  int m = box_map(pb, g);
  int t = pb.axiom(AxiomSchema::TenseBoxBDia, {e});  // E -> box bdia E
  return chain(pb, t, m);
}

inline int barcan_bbox(ProofBuilder& pb, const Fm& a_marked) {
  Fm body = abstract_var(a_marked, "X");
  std::string p = pb.fresh_prop();
  Fm ap = instantiate(body, prop(p));
  Fm e = all(bbox(body));
  int c1 = compr(pb, bbox(body), prop(p));
  int n1 = pb.nec_box(c1);
  Fm hypo = imp(pb.formula(n1), ap);
  int s3 = pl::compile(pb, lam(hypo, app(hyp(0), thm(n1))));
  int c2 = compr(pb, pb.mk_dia(e)->a, ap);
  int s4 = pl::compile(pb, lam(pb.mk_dia(e), app(thm(s3), app(thm(c2), hyp(0)))));
  int g = gen_dist(pb, s4, p);
  int m = bbox_map(pb, g);
  int t = pb.axiom(AxiomSchema::TenseBBoxDia, {e});
  return chain(pb, t, m);
}

// --- redundancy of the diamond axioms under the encodings ----------------

inline int funct_dia_derived(ProofBuilder& pb, const Fm& a, const Fm& b) {
  std::string p = pb.fresh_prop();
  Fm pp = prop(p);
  int s1 = pl::compile(pb, lam3(imp(a, b), imp(b, bbox(pp)), a,
                                app(hyp(1), app(hyp(2), hyp(0)))));
  int s2 = box_map2(pb, s1);  // box(A->B) -> box(B->bbox P) -> box(A->bbox P)
  int c = compr(pb, f_dia(a)->a, pp);
  int s3 = pl::compile(pb, lam3(box(imp(a, b)), f_dia(a), box(imp(b, bbox(pp))),
                                app(app(thm(c), hyp(1)), app(app(thm(s2), hyp(2)), hyp(0)))));
  return gen_dist_n(pb, s3, p, 2);
}

inline int tense_dia_bbox_derived(ProofBuilder& pb, const Fm& a) {
  int s1 = pb.thm_I(bbox(a));
  int n = pb.nec_box(s1);
  Fm hypo = imp(pb.formula(n), a);
  int s3 = pl::compile(pb, lam(hypo, app(hyp(0), thm(n))));
  int c = compr(pb, f_dia(bbox(a))->a, a);
  return chain(pb, c, s3);
}

// --- §2.3 consequences ----------------------------------------------------

inline int n_dia_bot(ProofBuilder& pb) {
  Fm bot = f_bot();
  int efq = compr(pb, bnd(0), bbox(bot));  // bot -> bbox bot
  int n = pb.nec_box(efq);
  Fm hypo = imp(pb.formula(n), bot);
  int s3 = pl::compile(pb, lam(hypo, app(hyp(0), thm(n))));
  int c = compr(pb, f_dia(bot)->a, bot);
  return chain(pb, c, s3);
}

inline int n_dia_or(ProofBuilder& pb, const Fm& a, const Fm& b) {
  Fm d = f_or(f_dia(a), f_dia(b));
  int i0 = or_intro_l(pb, f_dia(a), f_dia(b));
  int i1 = or_intro_r(pb, f_dia(a), f_dia(b));
  int j0 = chain(pb, pb.axiom(AxiomSchema::TenseBBoxDia, {a}), bbox_map(pb, i0));
  int j1 = chain(pb, pb.axiom(AxiomSchema::TenseBBoxDia, {b}), bbox_map(pb, i1));
  int oe = compr(pb, f_or(a, b)->a, bbox(d));
  int s = pl::compile(pb, lam(f_or(a, b),
                              app(app(app(thm(oe), hyp(0)), thm(j0)), thm(j1))));
  int n = pb.nec_box(s);
  Fm hypo = imp(pb.formula(n), d);
  int s3 = pl::compile(pb, lam(hypo, app(hyp(0), thm(n))));
  int c2 = compr(pb, f_dia(f_or(a, b))->a, d);
  return chain(pb, c2, s3);
}

inline int i_dia_box(ProofBuilder& pb, const Fm& a, const Fm& b) {
  Fm c = f_dia(a), d = box(b);
  // helper: bdia(C->D) -> bbox C -> bdia D
  int h1 = pl::compile(pb, lam2(c, imp(c, d), app(hyp(0), hyp(1))));
  int h2 = bbox_map(pb, h1);
  int fbd = pb.axiom(AxiomSchema::FunBDia, {imp(c, d), d});
  int helper = pl::compile(pb, lam2(f_bdia(imp(c, d)), bbox(c),
                                    app(app(thm(fbd), app(thm(h2), hyp(0))), hyp(1))));
  int tad = pb.axiom(AxiomSchema::TenseBBoxDia, {a});  // A -> bbox dia A
  int tbd = pb.axiom(AxiomSchema::TenseBDiaBox, {b});  // bdia box B -> B
  int s2 = pl::compile(pb, lam2(f_bdia(imp(c, d)), a,
                                app(thm(tbd), app(app(thm(helper), hyp(1)), app(thm(tad), hyp(0))))));
  int m = box_map(pb, s2);
  int t2 = pb.axiom(AxiomSchema::TenseBoxBDia, {imp(c, d)});
  return chain(pb, t2, m);
}

inline int i_bdia_bbox(ProofBuilder& pb, const Fm& a, const Fm& b) {
  Fm c = f_bdia(a), d = bbox(b);
  // helper: dia(C->D) -> box C -> dia D
  int h1 = pl::compile(pb, lam2(c, imp(c, d), app(hyp(0), hyp(1))));
  int h2 = box_map(pb, h1);
  int fd = pb.axiom(AxiomSchema::FunDia, {imp(c, d), d});
  int helper = pl::compile(pb, lam2(f_dia(imp(c, d)), box(c),
                                    app(app(thm(fd), app(thm(h2), hyp(0))), hyp(1))));
  int tad = pb.axiom(AxiomSchema::TenseBoxBDia, {a});  // A -> box bdia A
  int tbd = pb.axiom(AxiomSchema::TenseDiaBBox, {b});  // dia bbox B -> B
  int s2 = pl::compile(pb, lam2(f_dia(imp(c, d)), a,
                                app(thm(tbd), app(app(thm(helper), hyp(1)), app(thm(tad), hyp(0))))));
  int m = bbox_map(pb, s2);
  int t2 = pb.axiom(AxiomSchema::TenseBBoxDia, {imp(c, d)});
  return chain(pb, t2, m);
}

inline int ik_thm_1(ProofBuilder& pb, const Fm& a, const Fm& b) {
  Fm ab = f_and(a, b);
  std::string p = pb.fresh_prop();
  Fm pp = prop(p);
  int pr = and_intro(pb, a, b);
  int s1 = pl::compile(pb, lam3(a, imp(ab, bbox(pp)), b,
                                app(hyp(1), app(app(thm(pr), hyp(2)), hyp(0)))));
  int s2 = box_map2(pb, s1);  // box A -> box(AB -> bbox P) -> box(B -> bbox P)
  int cb = compr(pb, f_dia(b)->a, pp);
  int s3 = pl::compile(pb, lam3(box(a), f_dia(b), box(imp(ab, bbox(pp))),
                                app(app(thm(cb), hyp(1)), app(app(thm(s2), hyp(2)), hyp(0)))));
  int g = gen_dist_n(pb, s3, p, 2);  // box A -> dia B -> dia(A and B)
  Fm t = f_dia(ab);
  int ca = compr(pb, f_and(box(a), f_dia(b))->a, t);
  return pl::compile(pb, lam(f_and(box(a), f_dia(b)), app(app(thm(ca), hyp(0)), thm(g))));
}

inline int ik_thm_2(ProofBuilder& pb, const Fm& a, const Fm& b) {
  Fm ab = f_and(a, b);
  std::string p = pb.fresh_prop();
  Fm pp = prop(p);
  int pr = and_intro(pb, a, b);
  int s1 = pl::compile(pb, lam3(a, imp(ab, box(pp)), b,
                                app(hyp(1), app(app(thm(pr), hyp(2)), hyp(0)))));
  int s2 = bbox_map2(pb, s1);
  int cb = compr(pb, f_bdia(b)->a, pp);
  int s3 = pl::compile(pb, lam3(bbox(a), f_bdia(b), bbox(imp(ab, box(pp))),
                                app(app(thm(cb), hyp(1)), app(app(thm(s2), hyp(2)), hyp(0)))));
  int g = gen_dist_n(pb, s3, p, 2);
  Fm t = f_bdia(ab);
  int ca = compr(pb, f_and(bbox(a), f_bdia(b))->a, t);
  return pl::compile(pb, lam(f_and(bbox(a), f_bdia(b)), app(app(thm(ca), hyp(0)), thm(g))));
}

inline int ik_thm_5(ProofBuilder& pb, const Fm& a, const Fm& b) {
  std::string p = pb.fresh_prop();
  Fm pp = prop(p);
  int s1 = pl::compile(pb, lam3(a, imp(b, bbox(pp)), imp(a, b),
                                app(hyp(1), app(hyp(0), hyp(2)))));
  int s2 = box_map2(pb, s1);  // box A -> box(B -> bbox P) -> box((A->B) -> bbox P)
  int c = compr(pb, f_dia(imp(a, b))->a, pp);
  int s3 = pl::compile(pb, lam3(f_dia(imp(a, b)), box(a), box(imp(b, bbox(pp))),
                                app(app(thm(c), hyp(2)), app(app(thm(s2), hyp(1)), hyp(0)))));
  return gen_dist_n(pb, s3, p, 2);
}

inline int ik_thm_6(ProofBuilder& pb, const Fm& a, const Fm& b) {
  std::string p = pb.fresh_prop();
  Fm pp = prop(p);
  int s1 = pl::compile(pb, lam3(a, imp(b, box(pp)), imp(a, b),
                                app(hyp(1), app(hyp(0), hyp(2)))));
  int s2 = bbox_map2(pb, s1);
  int c = compr(pb, f_bdia(imp(a, b))->a, pp);
  int s3 = pl::compile(pb, lam3(f_bdia(imp(a, b)), bbox(a), bbox(imp(b, box(pp))),
                                app(app(thm(c), hyp(2)), app(app(thm(s2), hyp(1)), hyp(0)))));
  return gen_dist_n(pb, s3, p, 2);
}

// --- negativity lemmas (§ double-negation translation) -------------------

inline int neg_triple(ProofBuilder& pb, const Fm& a) {
  return pl::compile(pb, lam2(f_not(f_not(f_not(a))), a,
                              app(hyp(1), lam(f_not(a), app(hyp(0), hyp(1))))));
}

inline int neg_impl(ProofBuilder& pb, const Fm& a, const Fm& b) {
  Fm u = nn(imp(a, b));
  return pl::compile(
      pb, lam3(u, nn(a), f_not(b),
               app(hyp(2), lam(imp(a, b),
                               app(hyp(2), lam(a, app(hyp(2), app(hyp(1), hyp(0)))))))));
}

inline int neg_forall_body(ProofBuilder& pb, const Fm& body) {
  std::string p = pb.fresh_prop();
  Fm ap = instantiate(body, prop(p));
  int c = compr(pb, body, prop(p));
  int s = pl::compile(pb, lam2(nn(all(body)), f_not(ap),
                               app(hyp(1), lam(all(body), app(hyp(1), app(thm(c), hyp(0)))))));
  return gen_dist(pb, s, p);
}

inline int neg_forall(ProofBuilder& pb, const Fm& a_marked) {
  return neg_forall_body(pb, abstract_var(a_marked, "X"));
}

inline int neg_box(ProofBuilder& pb, const Fm& a) {
  int dn1 = dn_intro(pb, a);
  int m = box_map(pb, dn1);  // box A -> box not not A
  int fdd = funct_dia_derived(pb, f_not(a), f_bot());  // box(¬A -> bot) -> dia ¬A -> dia bot
  int ndb = n_dia_bot(pb);
  int s4 = pl::compile(pb, lam2(box(a), f_dia(f_not(a)),
                                app(thm(ndb), app(app(thm(fdd), app(thm(m), hyp(1))), hyp(0)))));
  int s5 = pl::compile(pb, lam2(nn(box(a)), f_dia(f_not(a)),
                                app(hyp(1), lam(box(a), app(app(thm(s4), hyp(0)), hyp(1))))));
  int botbox = compr(pb, bnd(0), box(f_bot()));  // bot -> box bot
  int s6 = pl::compile(pb, lam2(nn(box(a)), f_dia(f_not(a)),
                                app(thm(botbox), app(app(thm(s5), hyp(1)), hyp(0)))));
  int idb = i_dia_box(pb, f_not(a), f_bot());  // (dia ¬A -> box bot) -> box(¬A -> bot)
  return pl::compile(pb, lam(nn(box(a)),
                             app(thm(idb), app(thm(s6), hyp(0)))));
}

inline int neg_bbox(ProofBuilder& pb, const Fm& a) {
  int dn1 = dn_intro(pb, a);
  int m = bbox_map(pb, dn1);
  int fdd = [&] {  // bbox(¬A -> bot) -> bdia ¬A -> bdia bot, mirror script
    Fm x = f_not(a), y = f_bot();
    std::string p = pb.fresh_prop();
    Fm pp = prop(p);
    int s1 = pl::compile(pb, lam3(imp(x, y), imp(y, box(pp)), x,
                                  app(hyp(1), app(hyp(2), hyp(0)))));
    int s2 = bbox_map2(pb, s1);
    int c = compr(pb, f_bdia(x)->a, pp);
    int s3 = pl::compile(pb, lam3(bbox(imp(x, y)), f_bdia(x), bbox(imp(y, box(pp))),
                                  app(app(thm(c), hyp(1)), app(app(thm(s2), hyp(2)), hyp(0)))));
    return gen_dist_n(pb, s3, p, 2);
  }();
  int ndb = [&] {  // bdia bot -> bot
    Fm bot = f_bot();
    int efq = compr(pb, bnd(0), box(bot));
    int n = pb.nec_bbox(efq);
    Fm hypo = imp(pb.formula(n), bot);
    int s3 = pl::compile(pb, lam(hypo, app(hyp(0), thm(n))));
    int c = compr(pb, f_bdia(bot)->a, bot);
    return chain(pb, c, s3);
  }();
  int s4 = pl::compile(pb, lam2(bbox(a), f_bdia(f_not(a)),
                                app(thm(ndb), app(app(thm(fdd), app(thm(m), hyp(1))), hyp(0)))));
  int s5 = pl::compile(pb, lam2(nn(bbox(a)), f_bdia(f_not(a)),
                                app(hyp(1), lam(bbox(a), app(app(thm(s4), hyp(0)), hyp(1))))));
  int botbbox = compr(pb, bnd(0), bbox(f_bot()));
  int s6 = pl::compile(pb, lam2(nn(bbox(a)), f_bdia(f_not(a)),
                                app(thm(botbbox), app(app(thm(s5), hyp(1)), hyp(0)))));
  int idb = i_bdia_bbox(pb, f_not(a), f_bot());
  return pl::compile(pb, lam(nn(bbox(a)), app(thm(idb), app(thm(s6), hyp(0)))));
}

inline int dne_of_translation(ProofBuilder& pb, const Fm& a) {
  switch (a->tag) {
    case Tag::Prop:
    case Tag::Var:
    case Tag::Bound:
      return neg_triple(pb, f_not(a));
    case Tag::Impl: {
      Fm bn = negative_translate(a->a), cn = negative_translate(a->b);
      int ih = dne_of_translation(pb, a->b);
      return pl::compile(
          pb, lam2(nn(imp(bn, cn)), bn,
                   app(thm(ih),
                       lam(f_not(cn),
                           app(hyp(2), lam(imp(bn, cn),
                                           app(hyp(1), app(hyp(0), hyp(2)))))))));
    }
    case Tag::Box: {
      int ih = dne_of_translation(pb, a->a);
      int m = box_map(pb, ih);
      int nb = neg_box(pb, negative_translate(a->a));
      return chain(pb, nb, m);
    }
    case Tag::BBox: {
      int ih = dne_of_translation(pb, a->a);
      int m = bbox_map(pb, ih);
      int nb = neg_bbox(pb, negative_translate(a->a));
      return chain(pb, nb, m);
    }
    case Tag::All: {
      Fm ntbody = negative_translate(a->a);
      std::string p = pb.fresh_prop();
      int ih = dne_of_translation(pb, instantiate(a->a, prop(p)));
      int g = pb.gen(ih, p);  // forall X (nn A^N -> A^N)
      Fm gf = pb.formula(g);
      int fa = pb.axiom(AxiomSchema::FunAll, {gf->a->a, gf->a->b});
      int lift = pb.mp(fa, g);  // forall X nn A^N -> forall X A^N
      int nf = neg_forall_body(pb, ntbody);
      return chain(pb, nf, lift);
    }
    default:
      throw std::invalid_argument("dne-of-translation: native diamonds not translatable");
  }
}

inline int bot_iff_botn(ProofBuilder& pb) {
  Fm bot = f_bot();
  Fm botn = negative_translate(bot);  // forall X not not X
  int fwd = compr(pb, bnd(0), botn);  // bot -> botN
  int c2 = compr(pb, nn(bnd(0)), bot);  // botN -> not not bot
  int i = pb.thm_I(bot);
  int bwd = pl::compile(pb, lam(botn, app(app(thm(c2), hyp(0)), thm(i))));
  return conj_pair(pb, fwd, bwd);
}

}  // namespace detail_lemmas

struct LemmaInfo {
  std::string name;
  int arity;
  System sys;
  // first parameter is read as a binder body, its free X marking the hole
  bool body_param = false;
};

inline const std::vector<LemmaInfo>& lemma_catalogue() {
  static const std::vector<LemmaInfo> cat = {
      {"dia-iff-fwd", 1, System::IKt2Dia},
      {"dia-iff-bwd", 1, System::IKt2Dia},
      {"bdia-iff-fwd", 1, System::IKt2Dia},
      {"bdia-iff-bwd", 1, System::IKt2Dia},
      {"box-dist-forall", 1, System::IKt2, true},
      {"bbox-dist-forall", 1, System::IKt2, true},
      {"barcan-box", 1, System::IKt2, true},
      {"barcan-bbox", 1, System::IKt2, true},
      {"funct-dia-derived", 2, System::IKt2},
      {"tense-dia-bbox-derived", 1, System::IKt2},
      {"n-dia-bot", 0, System::IKt2},
      {"n-dia-or", 2, System::IKt2},
      {"i-dia-box", 2, System::IKt2},
      {"ik-thm-1", 2, System::IKt2},
      {"ik-thm-2", 2, System::IKt2},
      {"ik-thm-3", 2, System::IKt2},
      {"ik-thm-4", 2, System::IKt2},
      {"ik-thm-5", 2, System::IKt2},
      {"ik-thm-6", 2, System::IKt2},
      {"neg-box", 1, System::IKt2},
      {"neg-bbox", 1, System::IKt2},
      {"neg-impl", 2, System::IKt2},
      {"neg-forall", 1, System::IKt2, true},
      {"neg-triple", 1, System::IKt2},
      {"dne-of-translation", 1, System::IKt2},
      {"bot-iff-botN", 0, System::IKt2},
  };
  return cat;
}

inline const LemmaInfo* lemma_info(const std::string& name) {
  for (const auto& li : lemma_catalogue())
    if (li.name == name) return &li;
  return nullptr;
}

// Derive the named lemma inside an existing builder; returns the concluding
// line. The builder's system must match the catalogue entry.
inline int derive_lemma_line(ProofBuilder& pb, const std::string& name,
                             const std::vector<Fm>& ps) {
  const LemmaInfo* li = lemma_info(name);
  if (!li) throw std::invalid_argument("unknown lemma: " + name);
  if ((int)ps.size() != li->arity)
    throw std::invalid_argument(name + ": expected " + std::to_string(li->arity) +
                                " parameter(s)");
  for (const Fm& p : ps) {
    if (!p || p->dangling != 0) throw std::invalid_argument(name + ": bad parameter");
    if (li->sys != System::IKt2Dia && p->has_native)
      throw std::invalid_argument(name + ": native diamonds not admitted here");
    pb.supply().avoid_all(p);
  }
  using namespace detail_lemmas;
  if (name == "dia-iff-fwd") return dia_iff_fwd(pb, ps[0]);
  if (name == "dia-iff-bwd") return dia_iff_bwd(pb, ps[0]);
  if (name == "bdia-iff-fwd") return bdia_iff_fwd(pb, ps[0]);
  if (name == "bdia-iff-bwd") return bdia_iff_bwd(pb, ps[0]);
  if (name == "box-dist-forall") return box_dist_forall(pb, ps[0]);
  if (name == "bbox-dist-forall") return bbox_dist_forall(pb, ps[0]);
  if (name == "barcan-box") return barcan_box(pb, ps[0]);
  if (name == "barcan-bbox") return barcan_bbox(pb, ps[0]);
  if (name == "funct-dia-derived") return funct_dia_derived(pb, ps[0], ps[1]);
  if (name == "tense-dia-bbox-derived") return tense_dia_bbox_derived(pb, ps[0]);
  if (name == "n-dia-bot") return n_dia_bot(pb);
  if (name == "n-dia-or") return n_dia_or(pb, ps[0], ps[1]);
  if (name == "i-dia-box" || name == "ik-thm-3") return i_dia_box(pb, ps[0], ps[1]);
  if (name == "ik-thm-1") return ik_thm_1(pb, ps[0], ps[1]);
  if (name == "ik-thm-2") return ik_thm_2(pb, ps[0], ps[1]);
  if (name == "ik-thm-4") return i_bdia_bbox(pb, ps[0], ps[1]);
  if (name == "ik-thm-5") return ik_thm_5(pb, ps[0], ps[1]);
  if (name == "ik-thm-6") return ik_thm_6(pb, ps[0], ps[1]);
  if (name == "neg-box") return neg_box(pb, ps[0]);
  if (name == "neg-bbox") return neg_bbox(pb, ps[0]);
  if (name == "neg-impl") return neg_impl(pb, ps[0], ps[1]);
  if (name == "neg-forall") return neg_forall(pb, ps[0]);
  if (name == "neg-triple") return neg_triple(pb, ps[0]);
  if (name == "dne-of-translation") return dne_of_translation(pb, ps[0]);
  if (name == "bot-iff-botN") return bot_iff_botn(pb);
  throw std::logic_error("lemma dispatch out of sync with catalogue");
}

// Standalone derivation: returns a proof whose final line is the lemma.
inline HilbertProof derive_lemma(const std::string& name, const std::vector<Fm>& ps,
                                 System* sys_out = nullptr) {
  const LemmaInfo* li = lemma_info(name);
  if (!li) throw std::invalid_argument("unknown lemma: " + name);
  ProofBuilder pb(li->sys);
  int line = derive_lemma_line(pb, name, ps);
  if (sys_out) *sys_out = li->sys;
  HilbertProof out = pb.lines();
  out.resize(line + 1);
  return out;
}

}  // namespace tenselab
