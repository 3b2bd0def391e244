// Printing back to the ASCII grammar. Default output stays in the minimal
// grammar (plus native dia/bdia nodes, which have no other spelling); with
// sugar enabled the printer pattern-matches the encoding templates and emits
// bot/top/not/and/or/iff/exists/dia/bdia where an exact template occurs.
//
// Bound variables get names from the pool X, Y, Z, X1, Y1, Z1, ... skipping
// names free in the formula, so parse(print(f)) == f on the nose.

#pragma once

#include <string>
#include <vector>

#include "formula.hpp"

namespace tenselab {

// Recognised encoding template at the root of a formula, if any.
struct Sugar {
  enum Kind { None, Bot, Top, Not, And, Or, Iff, Exists } kind = None;
  Fm a, b;  // Not: a; Exists: a is a body using index 0
};

namespace detail {
inline bool is_b0(const Fm& f) { return f->tag == Tag::Bound && f->idx == 0; }
inline bool is_b1(const Fm& f) { return f->tag == Tag::Bound && f->idx == 1; }
// Remove the binder k levels out, which f must not reference.
inline Fm drop_binder(const Fm& f, int k) { return shift_above(f, k + 1, -1); }
}  // namespace detail

inline Sugar match_sugar(const Fm& f) {
  using detail::drop_binder;
  using detail::is_b0;
  using detail::is_b1;
  Sugar s;
  if (f->tag == Tag::Impl) {
    if (!eq(f->b, f_bot())) return s;
    if (eq(f->a, f_bot())) { s.kind = Sugar::Top; return s; }
    s.kind = Sugar::Not;
    s.a = f->a;
    return s;
  }
  if (f->tag != Tag::All) return s;
  Fm body = f->a;
  if (is_b0(body)) { s.kind = Sugar::Bot; return s; }
  if (body->tag != Tag::Impl) return s;
  if (is_b0(body->b)) {
    Fm lhs = body->a;
    // and / iff:  (A -> B -> 0) -> 0
    if (lhs->tag == Tag::Impl && lhs->b->tag == Tag::Impl && is_b0(lhs->b->b) &&
        !uses_bound(lhs->a, 0) && !uses_bound(lhs->b->a, 0)) {
      Fm a = drop_binder(lhs->a, 0), b = drop_binder(lhs->b->a, 0);
      if (a->tag == Tag::Impl && b->tag == Tag::Impl && eq(a->a, b->b) && eq(a->b, b->a)) {
        s.kind = Sugar::Iff;
        s.a = a->a;
        s.b = a->b;
      } else {
        s.kind = Sugar::And;
        s.a = a;
        s.b = b;
      }
      return s;
    }
    // exists:  forall Y (A -> 1) -> 0   with A not using the outer binder
    if (lhs->tag == Tag::All && lhs->a->tag == Tag::Impl && is_b1(lhs->a->b) &&
        !uses_bound(lhs->a->a, 1)) {
      s.kind = Sugar::Exists;
      s.a = drop_binder(lhs->a->a, 1);  // still a body in index 0
      return s;
    }
    return s;
  }
  // or:  (A -> 0) -> (B -> 0) -> 0
  Fm p1 = body->a, rest = body->b;
  if (rest->tag == Tag::Impl && is_b0(rest->b) && p1->tag == Tag::Impl && is_b0(p1->b) &&
      rest->a->tag == Tag::Impl && is_b0(rest->a->b) && !uses_bound(p1->a, 0) &&
      !uses_bound(rest->a->a, 0)) {
    s.kind = Sugar::Or;
    s.a = drop_binder(p1->a, 0);
    s.b = drop_binder(rest->a->a, 0);
  }
  return s;
}

// dia/bdia encodings are also All(... -> 0) with a single premiss; recognise
// them separately since their argument sits under a modality.
inline bool match_modal_sugar(const Fm& f, bool& is_dia, Fm& arg) {
  if (f->tag != Tag::All || f->a->tag != Tag::Impl || !detail::is_b0(f->a->b)) return false;
  Fm lhs = f->a->a;
  if (lhs->tag == Tag::Box && lhs->a->tag == Tag::Impl && lhs->a->b->tag == Tag::BBox &&
      detail::is_b0(lhs->a->b->a) && !uses_bound(lhs->a->a, 0)) {
    is_dia = true;
    arg = detail::drop_binder(lhs->a->a, 0);
    return true;
  }
  if (lhs->tag == Tag::BBox && lhs->a->tag == Tag::Impl && lhs->a->b->tag == Tag::Box &&
      detail::is_b0(lhs->a->b->a) && !uses_bound(lhs->a->a, 0)) {
    is_dia = false;
    arg = detail::drop_binder(lhs->a->a, 0);
    return true;
  }
  return false;
}

class Printer {
 public:
  explicit Printer(bool sugar = false) : sugar_(sugar) {}

  std::string operator()(const Fm& f) {
    taken_ = free_vars(f);
    env_.clear();
    out_.clear();
    print(f, 0, true);
    return out_;
  }

 private:
  // precedence: quant 0 < iff 1 < -> 2 < or 3 < and 4 < unary 5 < atom 6
  bool sugar_;
  std::set<std::string> taken_;
  std::vector<std::string> env_;
  std::string out_;

  std::string pick_name() {
    static const char* pool[] = {"X", "Y", "Z"};
    for (int round = 0;; round++) {
      for (const char* base : pool) {
        std::string nm = base + (round ? std::to_string(round) : std::string());
        if (taken_.count(nm)) continue;
        bool used = false;
        for (const auto& e : env_)
          if (e == nm) { used = true; break; }
        if (!used) return nm;
      }
    }
  }

  bool renders_as_quant(const Fm& f) {
    if (f->tag != Tag::All) return false;
    if (!sugar_) return true;
    bool isd;
    Fm arg;
    if (match_modal_sugar(f, isd, arg)) return false;
    Sugar s = match_sugar(f);
    return s.kind == Sugar::None || s.kind == Sugar::Exists;
  }

  // A bare quantifier extends maximally right, so it may only go without
  // parentheses when nothing follows it inside the current group (at_end) and
  // the position admits level 0. Right operands of binary connectives forward
  // their own at_end; left operands never qualify.
  void print_rhs(const Fm& f, int minlev, bool at_end) {
    print(f, renders_as_quant(f) ? 0 : minlev, at_end);
  }

  // Returns the at_end value for the children: parentheses reset it to true.
  bool parens(int lev, int minlev, auto&& body) {
    if (lev < minlev) {
      out_ += '(';
      body(true);
      out_ += ')';
      return true;
    }
    body(false);
    return false;
  }

  void print_quant(const char* kw, const Fm& body, int minlev, bool at_end) {
    bool wrap = minlev > 0 || !at_end;
    if (wrap) out_ += '(';
    std::string nm = pick_name();
    out_ += kw;
    out_ += ' ';
    out_ += nm;
    out_ += ' ';
    env_.push_back(nm);
    print(body, 0, true);  // body runs to the end of the group either way
    env_.pop_back();
    if (wrap) out_ += ')';
  }

  void print_unary(const char* kw, const Fm& a, int minlev, bool at_end) {
    parens(5, minlev, [&](bool reset) {
      out_ += kw;
      out_ += ' ';
      print(a, 5, reset || at_end);
    });
  }

  void print_bin(const Fm& a, const char* op, const Fm& b, int lev, int minlev, bool at_end) {
    parens(lev, minlev, [&](bool reset) {
      print(a, lev + 1, false);
      out_ += ' ';
      out_ += op;
      out_ += ' ';
      print_rhs(b, lev, reset || at_end);
    });
  }

  void print(const Fm& f, int minlev, bool at_end) {
    if (sugar_) {
      bool isd = false;
      Fm arg;
      if (match_modal_sugar(f, isd, arg)) {
        print_unary(isd ? "dia" : "bdia", arg, minlev, at_end);
        return;
      }
      Sugar s = match_sugar(f);
      switch (s.kind) {
        case Sugar::Bot: out_ += "bot"; return;
        case Sugar::Top: out_ += "top"; return;
        case Sugar::Not: print_unary("not", s.a, minlev, at_end); return;
        case Sugar::And: print_bin(s.a, "and", s.b, 4, minlev, at_end); return;
        case Sugar::Or: print_bin(s.a, "or", s.b, 3, minlev, at_end); return;
        case Sugar::Iff:
          // non-associative: both operands need at least implication level
          parens(1, minlev, [&](bool reset) {
            print(s.a, 2, false);
            out_ += " iff ";
            print_rhs(s.b, 2, reset || at_end);
          });
          return;
        case Sugar::Exists: print_quant("exists", s.a, minlev, at_end); return;
        case Sugar::None: break;
      }
    }
    switch (f->tag) {
      case Tag::Prop:
      case Tag::Var:
        out_ += f->name;
        return;
      case Tag::Bound:
        if (f->idx < (int)env_.size()) out_ += env_[env_.size() - 1 - f->idx];
        else out_ += "#" + std::to_string(f->idx - (int)env_.size());  // dangling: debug only
        return;
      case Tag::Impl:
        print_bin(f->a, "->", f->b, 2, minlev, at_end);
        return;
      case Tag::Box: print_unary("box", f->a, minlev, at_end); return;
      case Tag::BBox: print_unary("bbox", f->a, minlev, at_end); return;
      case Tag::Dia: print_unary("dia", f->a, minlev, at_end); return;
      case Tag::BDia: print_unary("bdia", f->a, minlev, at_end); return;
      case Tag::All: print_quant("forall", f->a, minlev, at_end); return;
    }
  }
};

inline std::string print(const Fm& f) { return Printer(false)(f); }
inline std::string print_sugar(const Fm& f) { return Printer(true)(f); }

}  // namespace tenselab
