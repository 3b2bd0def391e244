// Second-order tense formulas over the minimal grammar
//
//   A ::= P | X | A -> B | box A | bbox A | forall X A
//
// plus native dia/bdia nodes that only the IKt2(dia,bdia) axiom system admits.
// Bound second-order variables are nameless (de Bruijn indices); names exist
// only at the parse/print boundary, so alpha-equality is plain structural
// equality and substitution can never capture.
//
// Convention: a Formula held on its own has no dangling indices. A "body"
// (the subterm of a forall, or a schema slot that mentions the bound slot)
// may mention index 0 at depth 0; helpers that accept bodies say so.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tenselab {

enum class Tag : uint8_t { Prop, Var, Bound, Impl, Box, BBox, All, Dia, BDia };

struct Formula;
using Fm = std::shared_ptr<const Formula>;

struct Formula {
  Tag tag;
  std::string name;  // Prop, Var
  int idx = 0;       // Bound
  Fm a, b;           // Impl: a -> b; unary tags use a
  uint64_t hash = 0;
  uint32_t nsize = 1;       // node count
  int dangling = 0;         // 1 + highest unbound index, 0 if none
  bool has_native = false;  // contains Dia/BDia
};

namespace detail {
inline uint64_t mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}
inline uint64_t str_hash(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}
}  // namespace detail

inline Fm make(Tag t, std::string nm, int ix, Fm a, Fm b) {
  auto f = std::make_shared<Formula>();
  f->tag = t;
  f->name = std::move(nm);
  f->idx = ix;
  f->a = a;
  f->b = b;
  uint64_t h = detail::mix(0, (uint64_t)t);
  f->nsize = 1;
  switch (t) {
    case Tag::Prop:
    case Tag::Var:
      h = detail::mix(h, detail::str_hash(f->name));
      break;
    case Tag::Bound:
      h = detail::mix(h, (uint64_t)ix);
      f->dangling = ix + 1;
      break;
    case Tag::Impl:
      h = detail::mix(detail::mix(h, a->hash), b->hash);
      f->nsize += a->nsize + b->nsize;
      f->dangling = std::max(a->dangling, b->dangling);
      f->has_native = a->has_native || b->has_native;
      break;
    case Tag::All:
      h = detail::mix(h, a->hash);
      f->nsize += a->nsize;
      f->dangling = std::max(0, a->dangling - 1);
      f->has_native = a->has_native;
      break;
    default:  // Box, BBox, Dia, BDia
      h = detail::mix(h, a->hash);
      f->nsize += a->nsize;
      f->dangling = a->dangling;
      f->has_native = a->has_native || t == Tag::Dia || t == Tag::BDia;
      break;
  }
  f->hash = h;
  return f;
}

inline Fm prop(std::string p) { return make(Tag::Prop, std::move(p), 0, nullptr, nullptr); }
inline Fm var(std::string x) { return make(Tag::Var, std::move(x), 0, nullptr, nullptr); }
inline Fm bnd(int i) { return make(Tag::Bound, "", i, nullptr, nullptr); }
inline Fm imp(Fm a, Fm b) { return make(Tag::Impl, "", 0, a, b); }
inline Fm box(Fm a) { return make(Tag::Box, "", 0, a, nullptr); }
inline Fm bbox(Fm a) { return make(Tag::BBox, "", 0, a, nullptr); }
inline Fm all(Fm body) { return make(Tag::All, "", 0, body, nullptr); }
inline Fm dia(Fm a) { return make(Tag::Dia, "", 0, a, nullptr); }
inline Fm bdia(Fm a) { return make(Tag::BDia, "", 0, a, nullptr); }

inline bool eq(const Fm& x, const Fm& y) {
  if (x.get() == y.get()) return true;
  if (x->hash != y->hash || x->tag != y->tag || x->nsize != y->nsize) return false;
  switch (x->tag) {
    case Tag::Prop:
    case Tag::Var:
      return x->name == y->name;
    case Tag::Bound:
      return x->idx == y->idx;
    case Tag::Impl:
      return eq(x->a, y->a) && eq(x->b, y->b);
    default:
      return eq(x->a, y->a);
  }
}

// Deterministic total order (used for canonical cedents and witness pools).
inline int cmp(const Fm& x, const Fm& y) {
  if (x.get() == y.get()) return 0;
  if (x->tag != y->tag) return (int)x->tag < (int)y->tag ? -1 : 1;
  switch (x->tag) {
    case Tag::Prop:
    case Tag::Var:
      return x->name.compare(y->name) < 0 ? -1 : (x->name == y->name ? 0 : 1);
    case Tag::Bound:
      return x->idx < y->idx ? -1 : (x->idx == y->idx ? 0 : 1);
    case Tag::Impl: {
      int c = cmp(x->a, y->a);
      return c ? c : cmp(x->b, y->b);
    }
    default:
      return cmp(x->a, y->a);
  }
}

struct FmLess {
  bool operator()(const Fm& x, const Fm& y) const { return cmp(x, y) < 0; }
};
using FmSet = std::set<Fm, FmLess>;

// ---- traversal helpers ----

template <typename F>
void walk(const Fm& f, F&& visit) {
  visit(*f);
  if (f->a) walk(f->a, visit);
  if (f->b) walk(f->b, visit);
}

inline void free_vars_into(const Fm& f, std::set<std::string>& out) {
  walk(f, [&](const Formula& n) {
    if (n.tag == Tag::Var) out.insert(n.name);
  });
}

inline std::set<std::string> free_vars(const Fm& f) {
  std::set<std::string> out;
  free_vars_into(f, out);
  return out;
}

inline bool has_prop(const Fm& f, const std::string& p) {
  if (f->tag == Tag::Prop) return f->name == p;
  return (f->a && has_prop(f->a, p)) || (f->b && has_prop(f->b, p));
}

inline void prop_syms_into(const Fm& f, std::set<std::string>& out) {
  walk(f, [&](const Formula& n) {
    if (n.tag == Tag::Prop) out.insert(n.name);
  });
}

inline uint32_t size(const Fm& f) { return f->nsize; }
inline bool is_closed(const Fm& f) { return free_vars(f).empty(); }

// Does f mention the binder k levels outside it? k = 0 is the binder directly
// around f. For a forall body, uses_bound(body, 0) asks whether the quantifier
// is vacuous.
inline bool uses_bound(const Fm& f, int k) {
  if (f->dangling <= k) return false;
  switch (f->tag) {
    case Tag::Bound:
      return f->idx == k;
    case Tag::All:
      return uses_bound(f->a, k + 1);
    case Tag::Impl:
      return uses_bound(f->a, k) || uses_bound(f->b, k);
    case Tag::Prop:
    case Tag::Var:
      return false;
    default:
      return uses_bound(f->a, k);
  }
}

// ---- substitution (all capture-free thanks to nameless binders) ----

namespace detail {
// Replace what `hit` selects at the given binder depth; `repl` builds the
// replacement. Rebuilds only along changed spines.
template <typename Hit, typename Repl>
Fm rewrite(const Fm& f, int depth, Hit&& hit, Repl&& repl) {
  if (hit(*f, depth)) return repl(*f, depth);
  switch (f->tag) {
    case Tag::Impl: {
      Fm na = rewrite(f->a, depth, hit, repl);
      Fm nb = rewrite(f->b, depth, hit, repl);
      return (na == f->a && nb == f->b) ? f : imp(na, nb);
    }
    case Tag::All: {
      Fm na = rewrite(f->a, depth + 1, hit, repl);
      return na == f->a ? f : all(na);
    }
    case Tag::Box:
    case Tag::BBox:
    case Tag::Dia:
    case Tag::BDia: {
      Fm na = rewrite(f->a, depth, hit, repl);
      if (na == f->a) return f;
      return make(f->tag, "", 0, na, nullptr);
    }
    default:
      return f;
  }
}
}  // namespace detail

// A[c/X] for a free variable X. c is a standalone formula, so no shifting.
inline Fm subst_var(const Fm& f, const std::string& x, const Fm& c) {
  return detail::rewrite(
      f, 0, [&](const Formula& n, int) { return n.tag == Tag::Var && n.name == x; },
      [&](const Formula&, int) { return c; });
}

// Replace propositional symbol P by c (used when instantiating schematic lemmas).
inline Fm subst_prop(const Fm& f, const std::string& p, const Fm& c) {
  return detail::rewrite(
      f, 0, [&](const Formula& n, int) { return n.tag == Tag::Prop && n.name == p; },
      [&](const Formula&, int) { return c; });
}

// Shift dangling indices >= cutoff by delta (delta > 0 when wrapping f in new
// binders it should skip). Identity on standalone formulas.
inline Fm shift_above(const Fm& f, int cutoff, int delta) {
  if (f->dangling <= cutoff || delta == 0) return f;
  return detail::rewrite(
      f, cutoff, [&](const Formula& n, int d) { return n.tag == Tag::Bound && n.idx >= d; },
      [&](const Formula& n, int) { return bnd(n.idx + delta); });
}

// body is the subterm of a binder: plug c for its index-0 occurrences and
// close the gap left by the removed binder.
inline Fm instantiate(const Fm& body, const Fm& c) {
  if (body->dangling == 0) return body;
  return detail::rewrite(
      body, 0, [&](const Formula& n, int d) { return n.tag == Tag::Bound && n.idx >= d; },
      [&](const Formula& n, int d) -> Fm { return n.idx == d ? c : bnd(n.idx - 1); });
}

// Inverse direction: turn free occurrences of X (or of prop symbol P) into a
// fresh bound slot, for building forall X A from a named parse or a gen step.
inline Fm abstract_var(const Fm& f, const std::string& x) {
  return detail::rewrite(
      f, 0,
      [&](const Formula& n, int d) {
        return (n.tag == Tag::Var && n.name == x) || (n.tag == Tag::Bound && n.idx >= d);
      },
      [&](const Formula& n, int d) -> Fm { return n.tag == Tag::Var ? bnd(d) : bnd(n.idx + 1); });
}

inline Fm abstract_prop(const Fm& f, const std::string& p) {
  return detail::rewrite(
      f, 0,
      [&](const Formula& n, int d) {
        return (n.tag == Tag::Prop && n.name == p) || (n.tag == Tag::Bound && n.idx >= d);
      },
      [&](const Formula& n, int d) -> Fm { return n.tag == Tag::Prop ? bnd(d) : bnd(n.idx + 1); });
}

inline Fm forall_var(const std::string& x, const Fm& body_named) { return all(abstract_var(body_named, x)); }
inline Fm forall_prop(const std::string& p, const Fm& body) { return all(abstract_prop(body, p)); }

// ---- impredicative encodings ----
//
//   bot      = forall X X
//   A or B   = forall X ((A -> X) -> (B -> X) -> X)
//   A and B  = forall X ((A -> B -> X) -> X)
//   exists Y A = forall X (forall Y (A -> X) -> X)
//   dia A    = forall X (box (A -> bbox X) -> X)
//   bdia A   = forall X (bbox (A -> box X) -> X)
//   not A    = A -> bot,  top = bot -> bot,  A iff B = (A->B) and (B->A)
//
// Arguments may carry dangling indices (sugar elaborated under enclosing
// binders); the templates shift them past their own binder.

inline Fm f_bot() { return all(bnd(0)); }
inline Fm f_top() { return imp(f_bot(), f_bot()); }
inline Fm f_not(Fm a) { return imp(a, f_bot()); }
inline Fm f_or(Fm a, Fm b) {
  a = shift_above(a, 0, 1), b = shift_above(b, 0, 1);
  return all(imp(imp(a, bnd(0)), imp(imp(b, bnd(0)), bnd(0))));
}
inline Fm f_and(Fm a, Fm b) {
  a = shift_above(a, 0, 1), b = shift_above(b, 0, 1);
  return all(imp(imp(a, imp(b, bnd(0))), bnd(0)));
}
inline Fm f_iff(Fm a, Fm b) { return f_and(imp(a, b), imp(b, a)); }
inline Fm f_dia(Fm a) { return all(imp(box(imp(shift_above(a, 0, 1), bbox(bnd(0)))), bnd(0))); }
inline Fm f_bdia(Fm a) { return all(imp(bbox(imp(shift_above(a, 0, 1), box(bnd(0)))), bnd(0))); }
// exists over a body that already uses index 0 for the bound variable:
//   forall X (forall Y (A -> X) -> X)   A under two new binders, Y innermost
inline Fm exists_from_body(Fm body) {
  body = shift_above(body, 1, 1);               // skip the outer X binder
  Fm inner = all(imp(body, bnd(1)));            // forall Y (A -> X)
  return all(imp(inner, bnd(0)));
}
inline Fm f_exists(const std::string& x, Fm a) { return exists_from_body(abstract_var(a, x)); }

enum class Derived : uint8_t { Bot, Top, And, Or, Exists, Not, Iff, Dia, BDia };

// encode(Exists, ...) binds the distinguished variable "Y" in its argument;
// named callers wanting another variable should use f_exists directly.
inline Fm encode(Derived tag, const std::vector<Fm>& args) {
  auto need = [&](size_t n) {
    if (args.size() != n) throw std::invalid_argument("encode: arity mismatch");
  };
  switch (tag) {
    case Derived::Bot: need(0); return f_bot();
    case Derived::Top: need(0); return f_top();
    case Derived::And: need(2); return f_and(args[0], args[1]);
    case Derived::Or: need(2); return f_or(args[0], args[1]);
    case Derived::Exists: need(1); return f_exists("Y", args[0]);
    case Derived::Not: need(1); return f_not(args[0]);
    case Derived::Iff: need(2); return f_iff(args[0], args[1]);
    case Derived::Dia: need(1); return f_dia(args[0]);
    case Derived::BDia: need(1); return f_bdia(args[0]);
  }
  throw std::logic_error("encode: bad tag");
}

// Godel-Gentzen negative translation: double-negate atoms, commute with
// everything else. Only defined on the minimal grammar.
inline Fm negative_translate(const Fm& f) {
  switch (f->tag) {
    case Tag::Prop:
    case Tag::Var:
    case Tag::Bound:
      return f_not(f_not(f));
    case Tag::Impl:
      return imp(negative_translate(f->a), negative_translate(f->b));
    case Tag::Box:
      return box(negative_translate(f->a));
    case Tag::BBox:
      return bbox(negative_translate(f->a));
    case Tag::All:
      return all(negative_translate(f->a));
    default:
      throw std::invalid_argument("negative_translate: native diamond outside the minimal grammar");
  }
}

// Fresh-symbol supply: one per proof/search session, monotone. Callers feed
// every symbol of the input problem through avoid() up front so the generated
// names P<k> / w<k> cannot collide with user-chosen ones.
struct FreshSupply {
  long prop_ctr = 0;
  long world_ctr = 0;
  std::string fresh_prop() { return "P" + std::to_string(prop_ctr++); }
  std::string fresh_world() { return "w" + std::to_string(world_ctr++); }
  void avoid(const std::string& name) {
    if (name.size() < 2) return;
    char lead = name[0];
    if (lead != 'P' && lead != 'w') return;
    for (size_t i = 1; i < name.size(); i++)
      if (!std::isdigit((unsigned char)name[i])) return;
    long k = std::stol(name.substr(1)) + 1;
    if (lead == 'P') prop_ctr = std::max(prop_ctr, k);
    else world_ctr = std::max(world_ctr, k);
  }
  void avoid_all(const Fm& f) {
    walk(f, [&](const Formula& n) {
      if (n.tag == Tag::Prop) avoid(n.name);
    });
  }
};

}  // namespace tenselab
