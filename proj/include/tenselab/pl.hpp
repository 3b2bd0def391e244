// Propositional glue for derivations: a tiny typed lambda calculus over
// proof lines, compiled to K/S/mp chains via bracket abstraction.
//
// Terms: hyp(i) references the i-th enclosing lam (0 = innermost), thm(l)
// references an already proved line, app is modus ponens, lam discharges a
// hypothesis. Compilation eliminates lams innermost-first with the usual
// optimisations (I for the bound hypothesis, K for constant subterms, eta).
// Every application is type-checked against the formulas involved, so a
// mistyped derivation script fails fast with both sides printed.

#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "hilbert.hpp"

namespace tenselab::pl {

struct Term;
using Tm = std::shared_ptr<const Term>;

struct Term {
  enum Kind : uint8_t { Hyp, Thm, App, Lam } kind;
  int idx = -1;  // Hyp: de Bruijn level; Thm: proof line
  Tm f, x;       // App
  Fm ty;         // Lam: hypothesis type
  Tm body;       // Lam
};

inline Tm hyp(int i) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Hyp;
  t->idx = i;
  return t;
}

inline Tm thm(int line) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Thm;
  t->idx = line;
  return t;
}

inline Tm app(Tm f, Tm x) {
  auto t = std::make_shared<Term>();
  t->kind = Term::App;
  t->f = std::move(f);
  t->x = std::move(x);
  return t;
}

template <typename... Rest>
Tm app(Tm f, Tm x, Rest... rest) {
  return app(app(std::move(f), std::move(x)), std::move(rest)...);
}

inline Tm lam(Fm ty, Tm body) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Lam;
  t->ty = std::move(ty);
  t->body = std::move(body);
  return t;
}

inline Tm lam2(Fm t1, Fm t2, Tm body) { return lam(t1, lam(t2, std::move(body))); }
inline Tm lam3(Fm t1, Fm t2, Fm t3, Tm body) {
  return lam(t1, lam(t2, lam(t3, std::move(body))));
}

namespace detail {

// Lambda-free, type-annotated intermediate term.
struct NT;
using NTm = std::shared_ptr<const NT>;
struct NT {
  enum Kind : uint8_t { Hyp, Thm, App } kind;
  int idx = -1;
  NTm f, x;
  Fm ty;
};

inline NTm nt_hyp(int i, Fm ty) {
  auto t = std::make_shared<NT>();
  t->kind = NT::Hyp;
  t->idx = i;
  t->ty = std::move(ty);
  return t;
}

inline NTm nt_thm(int line, Fm ty) {
  auto t = std::make_shared<NT>();
  t->kind = NT::Thm;
  t->idx = line;
  t->ty = std::move(ty);
  return t;
}

inline NTm nt_app(NTm f, NTm x) {
  auto t = std::make_shared<NT>();
  t->kind = NT::App;
  t->ty = f->ty->b;
  t->f = std::move(f);
  t->x = std::move(x);
  return t;
}

inline bool uses_hyp0(const NTm& t) {
  if (t->kind == NT::Hyp) return t->idx == 0;
  if (t->kind == NT::App) return uses_hyp0(t->f) || uses_hyp0(t->x);
  return false;
}

inline NTm shift_down(const NTm& t) {
  if (t->kind == NT::Hyp) return nt_hyp(t->idx - 1, t->ty);
  if (t->kind == NT::App) return nt_app(shift_down(t->f), shift_down(t->x));
  return t;
}

class Compiler {
 public:
  explicit Compiler(ProofBuilder& pb) : pb_(pb) {}

  int run(const Tm& t) {
    std::vector<Fm> env;
    NTm n = elab(t, env);
    return emit(n);
  }

 private:
  NTm elab(const Tm& t, std::vector<Fm>& env) {
    switch (t->kind) {
      case Term::Hyp: {
        if (t->idx < 0 || t->idx >= (int)env.size())
          throw std::logic_error("pl: unbound hypothesis");
        return nt_hyp(t->idx, env[env.size() - 1 - t->idx]);
      }
      case Term::Thm:
        return nt_thm(t->idx, pb_.formula(t->idx));
      case Term::App: {
        NTm f = elab(t->f, env);
        NTm x = elab(t->x, env);
        if (f->ty->tag != Tag::Impl || !eq(f->ty->a, x->ty))
          throw std::logic_error("pl: ill-typed application of " + print(f->ty) +
                                 " to " + print(x->ty));
        return nt_app(f, x);
      }
      case Term::Lam: {
        env.push_back(t->ty);
        NTm b = elab(t->body, env);
        env.pop_back();
        return abstract(t->ty, b);
      }
    }
    throw std::logic_error("pl: bad term");
  }

  // Bracket abstraction over hypothesis 0; remaining hypotheses shift down.
  NTm abstract(const Fm& phi, const NTm& t) {
    if (t->kind == NT::Hyp && t->idx == 0)
      return nt_thm(pb_.thm_I(phi), imp(phi, phi));
    if (!uses_hyp0(t)) {
      int k = pb_.axiom(AxiomSchema::K, {t->ty, phi});
      return nt_app(nt_thm(k, pb_.formula(k)), shift_down(t));
    }
    // t is an App from here on
    if (t->x->kind == NT::Hyp && t->x->idx == 0 && !uses_hyp0(t->f))
      return shift_down(t->f);  // eta
    int s = pb_.axiom(AxiomSchema::S, {phi, t->x->ty, t->ty});
    return nt_app(nt_app(nt_thm(s, pb_.formula(s)), abstract(phi, t->f)),
                  abstract(phi, t->x));
  }

  int emit(const NTm& t) {
    if (t->kind == NT::Thm) return t->idx;
    if (t->kind == NT::App) return pb_.mp(emit(t->f), emit(t->x));
    throw std::logic_error("pl: open term survived compilation");
  }

  ProofBuilder& pb_;
};

}  // namespace detail

// Compile a closed term to proof lines; returns the concluding line.
inline int compile(ProofBuilder& pb, const Tm& t) {
  return detail::Compiler(pb).run(t);
}

}  // namespace tenselab::pl
