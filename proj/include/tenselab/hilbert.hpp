// Hilbert-style proofs for the three axiomatic systems.
//
// Axioms (A, B arbitrary; in the forall schemas A, B are binder bodies and C
// is the comprehension witness):
//
//   K     A -> B -> A
//   S     (A -> B -> C) -> (A -> B) -> A -> C
//   funAll   forall X (A -> B) -> forall X A -> forall X B
//   V        A -> forall X A            (X not free in A)
//   Compr    forall X A -> A[C/X]
//   funBox   box (A -> B) -> box A -> box B        (funBBox: black)
//   funDia   box (A -> B) -> dia A -> dia B        (funBDia: black)
//   T(bdia box)  bdia box A -> A       T(box bdia)  A -> box bdia A
//   T(dia bbox)  dia bbox A -> A       T(bbox dia)  A -> bbox dia A
//   DNE      not not A -> A            (Kt2 only)
//
// Rules: mp, gen (from A[P/X] infer forall X A, P not in the conclusion),
// necBox, necBBox.
//
// IKt2Dia admits native dia/bdia nodes; IKt2 and Kt2 are over the minimal
// grammar with diamonds macro-expanded, so the diamond schemas match the
// encoding templates there. Kt2 = IKt2 + DNE.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "formula.hpp"
#include "printer.hpp"

namespace tenselab {

enum class System : uint8_t { IKt2Dia, IKt2, Kt2 };

inline const char* system_name(System s) {
  switch (s) {
    case System::IKt2Dia: return "IKt2Dia";
    case System::IKt2: return "IKt2";
    case System::Kt2: return "Kt2";
  }
  return "?";
}

inline std::optional<System> system_from_name(const std::string& s) {
  if (s == "IKt2Dia") return System::IKt2Dia;
  if (s == "IKt2") return System::IKt2;
  if (s == "Kt2") return System::Kt2;
  return std::nullopt;
}

enum class AxiomSchema : uint8_t {
  K, S, FunAll, V, Compr, FunBox, FunDia, FunBBox, FunBDia,
  TenseBDiaBox, TenseBoxBDia, TenseDiaBBox, TenseBBoxDia, DNE,
};

inline const char* schema_name(AxiomSchema a) {
  switch (a) {
    case AxiomSchema::K: return "K";
    case AxiomSchema::S: return "S";
    case AxiomSchema::FunAll: return "FunAll";
    case AxiomSchema::V: return "V";
    case AxiomSchema::Compr: return "Compr";
    case AxiomSchema::FunBox: return "FunBox";
    case AxiomSchema::FunDia: return "FunDia";
    case AxiomSchema::FunBBox: return "FunBBox";
    case AxiomSchema::FunBDia: return "FunBDia";
    case AxiomSchema::TenseBDiaBox: return "TenseBDiaBox";
    case AxiomSchema::TenseBoxBDia: return "TenseBoxBDia";
    case AxiomSchema::TenseDiaBBox: return "TenseDiaBBox";
    case AxiomSchema::TenseBBoxDia: return "TenseBBoxDia";
    case AxiomSchema::DNE: return "DNE";
  }
  return "?";
}

inline std::optional<AxiomSchema> schema_from_name(const std::string& s) {
  static const std::map<std::string, AxiomSchema> m = {
      {"K", AxiomSchema::K}, {"S", AxiomSchema::S}, {"FunAll", AxiomSchema::FunAll},
      {"V", AxiomSchema::V}, {"Compr", AxiomSchema::Compr}, {"FunBox", AxiomSchema::FunBox},
      {"FunDia", AxiomSchema::FunDia}, {"FunBBox", AxiomSchema::FunBBox},
      {"FunBDia", AxiomSchema::FunBDia}, {"TenseBDiaBox", AxiomSchema::TenseBDiaBox},
      {"TenseBoxBDia", AxiomSchema::TenseBoxBDia}, {"TenseDiaBBox", AxiomSchema::TenseDiaBBox},
      {"TenseBBoxDia", AxiomSchema::TenseBBoxDia}, {"DNE", AxiomSchema::DNE}};
  auto it = m.find(s);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

// Arity of the binding list. Body-valued slots hold binder bodies (index 0 is
// the bound slot); the rest hold standalone formulas.
inline int schema_arity(AxiomSchema a) {
  switch (a) {
    case AxiomSchema::S: return 3;
    case AxiomSchema::K:
    case AxiomSchema::FunAll:
    case AxiomSchema::FunBox:
    case AxiomSchema::FunDia:
    case AxiomSchema::FunBBox:
    case AxiomSchema::FunBDia:
    case AxiomSchema::Compr: return 2;
    default: return 1;
  }
}

// Build the instance of a schema at the given bindings. `native` selects the
// primitive diamond connectives (IKt2Dia); otherwise the encodings are used.
inline Fm axiom_instance(AxiomSchema sch, const std::vector<Fm>& b, bool native) {
  if ((int)b.size() != schema_arity(sch)) throw std::invalid_argument("axiom_instance: arity");
  auto mdia = [&](const Fm& f) { return native ? dia(f) : f_dia(f); };
  auto mbdia = [&](const Fm& f) { return native ? bdia(f) : f_bdia(f); };
  switch (sch) {
    case AxiomSchema::K: return imp(b[0], imp(b[1], b[0]));
    case AxiomSchema::S:
      return imp(imp(b[0], imp(b[1], b[2])),
                 imp(imp(b[0], b[1]), imp(b[0], b[2])));
    case AxiomSchema::FunAll:  // b[0], b[1] bodies
      return imp(all(imp(b[0], b[1])), imp(all(b[0]), all(b[1])));
    case AxiomSchema::V:
      if (b[0]->dangling > 0) throw std::invalid_argument("V: binding must be standalone");
      return imp(b[0], all(shift_above(b[0], 0, 1)));
    case AxiomSchema::Compr:  // b[0] body, b[1] witness
      if (b[1]->dangling > 0) throw std::invalid_argument("Compr: witness must be standalone");
      return imp(all(b[0]), instantiate(b[0], b[1]));
    case AxiomSchema::FunBox: return imp(box(imp(b[0], b[1])), imp(box(b[0]), box(b[1])));
    case AxiomSchema::FunBBox: return imp(bbox(imp(b[0], b[1])), imp(bbox(b[0]), bbox(b[1])));
    case AxiomSchema::FunDia: return imp(box(imp(b[0], b[1])), imp(mdia(b[0]), mdia(b[1])));
    case AxiomSchema::FunBDia: return imp(bbox(imp(b[0], b[1])), imp(mbdia(b[0]), mbdia(b[1])));
    case AxiomSchema::TenseBDiaBox: return imp(mbdia(box(b[0])), b[0]);
    case AxiomSchema::TenseBoxBDia: return imp(b[0], box(mbdia(b[0])));
    case AxiomSchema::TenseDiaBBox: return imp(mdia(bbox(b[0])), b[0]);
    case AxiomSchema::TenseBBoxDia: return imp(b[0], bbox(mdia(b[0])));
    case AxiomSchema::DNE: return imp(f_not(f_not(b[0])), b[0]);
  }
  throw std::logic_error("axiom_instance: bad schema");
}

namespace detail {

// Anti-substitution: does rhs equal instantiate(body, c) for some standalone
// c? Occurrences of the bound slot must map to a consistent candidate; other
// indices shift down by one.
inline bool anti_subst(const Fm& body, const Fm& rhs, int d, Fm& c) {
  if (body->tag == Tag::Bound) {
    if (body->idx == d) {
      if (rhs->dangling > 0) return false;  // capture: witness must be standalone
      if (c && !eq(c, rhs)) return false;
      c = rhs;
      return true;
    }
    int want = body->idx > d ? body->idx - 1 : body->idx;
    return rhs->tag == Tag::Bound && rhs->idx == want;
  }
  if (body->tag != rhs->tag) return false;
  switch (body->tag) {
    case Tag::Prop:
    case Tag::Var:
      return body->name == rhs->name;
    case Tag::Impl:
      return anti_subst(body->a, rhs->a, d, c) && anti_subst(body->b, rhs->b, d, c);
    case Tag::All:
      return anti_subst(body->a, rhs->a, d + 1, c);
    default:
      return anti_subst(body->a, rhs->a, d, c);
  }
}

// Match f against a diamond shape: native node, or the encoding template.
inline bool match_dia_shape(const Fm& f, bool black, Fm& arg) {
  if (f->tag == (black ? Tag::BDia : Tag::Dia)) {
    arg = f->a;
    return true;
  }
  bool isd;
  Fm a;
  if (match_modal_sugar(f, isd, a) && isd == !black) {
    arg = a;
    return true;
  }
  return false;
}

}  // namespace detail

// Try to recognise f as an instance of the schema; on success returns the
// bindings (bodies for the forall schemas, witness last for Compr). Both the
// native and the encoded diamond shapes are accepted; admission per system is
// the checker's business.
inline std::optional<std::vector<Fm>> match_axiom(AxiomSchema sch, const Fm& f) {
  using detail::match_dia_shape;
  auto I = [](std::initializer_list<Fm> l) { return std::optional<std::vector<Fm>>(std::in_place, l); };
  switch (sch) {
    case AxiomSchema::K:
      if (f->tag == Tag::Impl && f->b->tag == Tag::Impl && eq(f->a, f->b->b))
        return I({f->a, f->b->a});
      return std::nullopt;
    case AxiomSchema::S: {
      if (f->tag != Tag::Impl) return std::nullopt;
      Fm l = f->a, r = f->b;
      if (l->tag != Tag::Impl || l->b->tag != Tag::Impl) return std::nullopt;
      Fm a = l->a, b = l->b->a, c = l->b->b;
      Fm want = imp(imp(a, b), imp(a, c));
      if (eq(r, want)) return I({a, b, c});
      return std::nullopt;
    }
    case AxiomSchema::FunAll: {
      if (f->tag != Tag::Impl || f->a->tag != Tag::All || f->a->a->tag != Tag::Impl)
        return std::nullopt;
      Fm a = f->a->a->a, b = f->a->a->b;
      if (eq(f->b, imp(all(a), all(b)))) return I({a, b});
      return std::nullopt;
    }
    case AxiomSchema::V: {
      if (f->tag != Tag::Impl || f->b->tag != Tag::All) return std::nullopt;
      if (eq(f->b->a, shift_above(f->a, 0, 1))) return I({f->a});
      return std::nullopt;
    }
    case AxiomSchema::Compr: {
      if (f->tag != Tag::Impl || f->a->tag != Tag::All) return std::nullopt;
      Fm c;
      if (!detail::anti_subst(f->a->a, f->b, 0, c)) return std::nullopt;
      if (!c) c = f_bot();  // vacuous binder: witness unconstrained
      return I({f->a->a, c});
    }
    case AxiomSchema::FunBox:
    case AxiomSchema::FunBBox: {
      Tag m = sch == AxiomSchema::FunBox ? Tag::Box : Tag::BBox;
      if (f->tag != Tag::Impl || f->a->tag != m || f->a->a->tag != Tag::Impl) return std::nullopt;
      Fm a = f->a->a->a, b = f->a->a->b;
      Fm want = imp(make(m, "", 0, a, nullptr), make(m, "", 0, b, nullptr));
      if (eq(f->b, want)) return I({a, b});
      return std::nullopt;
    }
    case AxiomSchema::FunDia:
    case AxiomSchema::FunBDia: {
      bool black = sch == AxiomSchema::FunBDia;
      Tag m = black ? Tag::BBox : Tag::Box;
      if (f->tag != Tag::Impl || f->a->tag != m || f->a->a->tag != Tag::Impl) return std::nullopt;
      Fm a = f->a->a->a, b = f->a->a->b;
      if (f->b->tag != Tag::Impl) return std::nullopt;
      Fm x, y;
      if (match_dia_shape(f->b->a, black, x) && match_dia_shape(f->b->b, black, y) &&
          eq(x, a) && eq(y, b))
        return I({a, b});
      return std::nullopt;
    }
    case AxiomSchema::TenseBDiaBox: {
      if (f->tag != Tag::Impl) return std::nullopt;
      Fm x;
      if (match_dia_shape(f->a, true, x) && x->tag == Tag::Box && eq(x->a, f->b))
        return I({f->b});
      return std::nullopt;
    }
    case AxiomSchema::TenseBoxBDia: {
      if (f->tag != Tag::Impl || f->b->tag != Tag::Box) return std::nullopt;
      Fm x;
      if (match_dia_shape(f->b->a, true, x) && eq(x, f->a)) return I({f->a});
      return std::nullopt;
    }
    case AxiomSchema::TenseDiaBBox: {
      if (f->tag != Tag::Impl) return std::nullopt;
      Fm x;
      if (match_dia_shape(f->a, false, x) && x->tag == Tag::BBox && eq(x->a, f->b))
        return I({f->b});
      return std::nullopt;
    }
    case AxiomSchema::TenseBBoxDia: {
      if (f->tag != Tag::Impl || f->b->tag != Tag::BBox) return std::nullopt;
      Fm x;
      if (match_dia_shape(f->b->a, false, x) && eq(x, f->a)) return I({f->a});
      return std::nullopt;
    }
    case AxiomSchema::DNE: {
      if (f->tag == Tag::Impl && eq(f->a, f_not(f_not(f->b)))) return I({f->b});
      return std::nullopt;
    }
  }
  return std::nullopt;
}

enum class StepKind : uint8_t { Axiom, MP, Gen, NecBox, NecBBox };

struct HilbertStep {
  StepKind kind;
  Fm formula;
  AxiomSchema schema = AxiomSchema::K;  // Axiom only
  std::vector<Fm> binds;                // Axiom: recorded bindings (may be empty in files)
  int i = -1, j = -1;                   // MP: i : A -> B, j : A; Gen/Nec: i premiss
  std::string gen_sym;                  // Gen eigen symbol
};

using HilbertProof = std::vector<HilbertStep>;

struct Verdict {
  bool ok = true;
  int line = -1;
  std::string reason;
  explicit operator bool() const { return ok; }
};

inline Verdict reject(int line, std::string why) { return {false, line, std::move(why)}; }

// Checks the whole proof under the given system. Axiom lines with recorded
// bindings are re-instantiated and compared; lines without bindings are
// re-matched. Gen enforces the eigenvariable discipline: the symbol is absent
// from the conclusion and from every earlier line not feeding the premiss.
inline Verdict check_proof(const HilbertProof& p, System sys) {
  for (size_t n = 0; n < p.size(); n++) {
    const HilbertStep& s = p[n];
    if (!s.formula) return reject((int)n, "missing formula");
    if (s.formula->dangling != 0) return reject((int)n, "dangling binder index");
    if (sys != System::IKt2Dia && s.formula->has_native)
      return reject((int)n, "native diamond outside IKt2Dia");
    switch (s.kind) {
      case StepKind::Axiom: {
        if (s.schema == AxiomSchema::DNE && sys != System::Kt2)
          return reject((int)n, "DNE admitted only in Kt2");
        if (!s.binds.empty()) {
          if ((int)s.binds.size() != schema_arity(s.schema))
            return reject((int)n, "binding arity mismatch");
          bool native = s.formula->has_native;
          Fm want;
          try {
            want = axiom_instance(s.schema, s.binds, native);
          } catch (const std::invalid_argument& e) {
            return reject((int)n, e.what());
          }
          if (!eq(want, s.formula))
            return reject((int)n, std::string("not the recorded instance of ") +
                                      schema_name(s.schema));
        } else if (!match_axiom(s.schema, s.formula)) {
          return reject((int)n, std::string("not an instance of ") + schema_name(s.schema));
        }
        break;
      }
      case StepKind::MP: {
        if (s.i < 0 || s.i >= (int)n || s.j < 0 || s.j >= (int)n)
          return reject((int)n, "mp: bad line reference");
        const Fm& fab = p[s.i].formula;
        if (fab->tag != Tag::Impl || !eq(fab->a, p[s.j].formula) || !eq(fab->b, s.formula))
          return reject((int)n, "mp: premisses do not compose");
        break;
      }
      case StepKind::Gen: {
        if (s.i < 0 || s.i >= (int)n) return reject((int)n, "gen: bad line reference");
        if (s.gen_sym.empty()) return reject((int)n, "gen: missing eigen symbol");
        if (s.formula->tag != Tag::All) return reject((int)n, "gen: conclusion not a forall");
        if (!eq(instantiate(s.formula->a, prop(s.gen_sym)), p[s.i].formula))
          return reject((int)n, "gen: premiss is not the instance at the eigen symbol");
        if (has_prop(s.formula, s.gen_sym))
          return reject((int)n, "gen: eigen symbol occurs in the conclusion");
        // hygiene: the symbol may appear only in lines feeding the premiss
        std::vector<char> reach(n, 0);
        std::vector<int> stack{s.i};
        reach[s.i] = 1;
        while (!stack.empty()) {
          int k = stack.back();
          stack.pop_back();
          for (int dep : {p[k].i, p[k].j})
            if (dep >= 0 && !reach[dep]) {
              reach[dep] = 1;
              stack.push_back(dep);
            }
        }
        for (size_t k = 0; k < n; k++)
          if (!reach[k] && has_prop(p[k].formula, s.gen_sym))
            return reject((int)n, "gen: eigen symbol occurs in an unrelated earlier line");
        break;
      }
      case StepKind::NecBox:
      case StepKind::NecBBox: {
        if (s.i < 0 || s.i >= (int)n) return reject((int)n, "nec: bad line reference");
        Tag m = s.kind == StepKind::NecBox ? Tag::Box : Tag::BBox;
        if (s.formula->tag != m || !eq(s.formula->a, p[s.i].formula))
          return reject((int)n, "nec: conclusion is not the boxed premiss");
        break;
      }
    }
  }
  return {};
}

// Incremental proof construction with line-level deduplication (the DAG
// sharing the file format exposes as line references). All helpers validate
// eagerly and throw logic_error on misuse: a throw here is a bug in the
// calling derivation, never user input.
class ProofBuilder {
 public:
  explicit ProofBuilder(System sys) : sys_(sys) {}

  System system() const { return sys_; }
  bool native() const { return sys_ == System::IKt2Dia; }
  const HilbertProof& lines() const { return lines_; }
  const Fm& formula(int l) const { return lines_.at(l).formula; }
  FreshSupply& supply() { return fresh_; }

  Fm mk_dia(const Fm& a) const { return native() ? dia(a) : f_dia(a); }
  Fm mk_bdia(const Fm& a) const { return native() ? bdia(a) : f_bdia(a); }

  int axiom(AxiomSchema sch, std::vector<Fm> binds) {
    Fm f = axiom_instance(sch, binds, native());
    HilbertStep s{StepKind::Axiom, f, sch, std::move(binds), -1, -1, {}};
    return add(std::move(s));
  }

  int mp(int iab, int ia) {
    const Fm& fab = formula(iab);
    if (fab->tag != Tag::Impl || !eq(fab->a, formula(ia)))
      throw std::logic_error("mp: " + print(fab) + "  vs  " + print(formula(ia)));
    HilbertStep s{StepKind::MP, fab->b, AxiomSchema::K, {}, iab, ia, {}};
    return add(std::move(s));
  }

  int gen(int prem, const std::string& p) {
    Fm f = all(abstract_prop(formula(prem), p));
    HilbertStep s{StepKind::Gen, f, AxiomSchema::K, {}, prem, -1, p};
    return add(std::move(s));
  }

  int nec_box(int prem) {
    HilbertStep s{StepKind::NecBox, box(formula(prem)), AxiomSchema::K, {}, prem, -1, {}};
    return add(std::move(s));
  }

  int nec_bbox(int prem) {
    HilbertStep s{StepKind::NecBBox, bbox(formula(prem)), AxiomSchema::K, {}, prem, -1, {}};
    return add(std::move(s));
  }

  // I = S K K, memoised per type.
  int thm_I(const Fm& a) {
    auto it = memo_.find(imp(a, a));
    if (dedup_ && it != memo_.end()) return it->second;
    int s = axiom(AxiomSchema::S, {a, imp(a, a), a});
    int k1 = axiom(AxiomSchema::K, {a, imp(a, a)});
    int k2 = axiom(AxiomSchema::K, {a, a});
    return mp(mp(s, k1), k2);
  }

  std::string fresh_prop() { return fresh_.fresh_prop(); }

  // Reusing an equal earlier line rewires dependencies, which is unsound to
  // do around the generalisation freshness scan: a proof assembled from
  // blocks that each keep their own lines inside their own cone must turn
  // this off, or a deduplicated line can end up outside the cone of the
  // step it was spliced for.
  void set_dedup(bool on) { dedup_ = on; }

 private:
  int add(HilbertStep s) {
    if (dedup_) {
      auto it = memo_.find(s.formula);
      if (it != memo_.end()) return it->second;
    }
    lines_.push_back(std::move(s));
    int n = (int)lines_.size() - 1;
    memo_.emplace(lines_.back().formula, n);
    return n;
  }

  System sys_;
  FreshSupply fresh_;
  HilbertProof lines_;
  bool dedup_ = true;
  std::map<Fm, int, FmLess> memo_;
};

}  // namespace tenselab
