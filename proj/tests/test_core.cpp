// Formula language: parsing, printing, substitution, encodings.

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "tenselab/formula.hpp"
#include "tenselab/parser.hpp"
#include "tenselab/printer.hpp"

using namespace tenselab;

namespace {

// Random formula in the minimal grammar. nbound = enclosing binder count.
Fm gen_raw(std::mt19937& rng, int depth, int nbound) {
  auto pick = [&](int n) { return (int)(rng() % (unsigned)n); };
  if (depth <= 0) {
    switch (pick(3)) {
      case 0: {
        const char* ps[] = {"P", "Q", "S"};
        return prop(ps[pick(3)]);
      }
      case 1: {
        const char* xs[] = {"X", "Y", "Z9"};
        return var(xs[pick(3)]);
      }
      default:
        return nbound ? bnd(pick(nbound)) : prop("P");
    }
  }
  switch (pick(5)) {
    case 0: return imp(gen_raw(rng, depth - 1, nbound), gen_raw(rng, depth - 1, nbound));
    case 1: return box(gen_raw(rng, depth - 1, nbound));
    case 2: return bbox(gen_raw(rng, depth - 1, nbound));
    case 3: return all(gen_raw(rng, depth - 1, nbound + 1));
    default: return gen_raw(rng, 0, nbound);
  }
}

// Random formula that also uses the encoding constructors, to exercise the
// sugar printer. Still a plain minimal-grammar tree underneath.
Fm gen_sugared(std::mt19937& rng, int depth, int nbound) {
  auto pick = [&](int n) { return (int)(rng() % (unsigned)n); };
  if (depth <= 0) return gen_raw(rng, 0, nbound);
  switch (pick(10)) {
    case 0: return imp(gen_sugared(rng, depth - 1, nbound), gen_sugared(rng, depth - 1, nbound));
    case 1: return box(gen_sugared(rng, depth - 1, nbound));
    case 2: return bbox(gen_sugared(rng, depth - 1, nbound));
    case 3: return all(gen_sugared(rng, depth - 1, nbound + 1));
    case 4: return f_and(gen_sugared(rng, depth - 1, nbound), gen_sugared(rng, depth - 1, nbound));
    case 5: return f_or(gen_sugared(rng, depth - 1, nbound), gen_sugared(rng, depth - 1, nbound));
    case 6: return f_not(gen_sugared(rng, depth - 1, nbound));
    case 7: return f_dia(gen_sugared(rng, depth - 1, nbound));
    case 8: return f_bdia(gen_sugared(rng, depth - 1, nbound));
    default: return exists_from_body(gen_sugared(rng, depth - 1, nbound + 1));
  }
}

}  // namespace

TEST_CASE("parse: spec examples") {
  CHECK(eq(parse("A -> B -> C"), imp(prop("A"), imp(prop("B"), prop("C")))));
  CHECK(eq(parse("forall X X"), all(bnd(0))));
  CHECK(eq(parse("dia P"),
           all(imp(box(imp(prop("P"), bbox(bnd(0)))), bnd(0)))));
}

TEST_CASE("parse: precedence and associativity") {
  CHECK(eq(parse("box P and Q"), f_and(box(prop("P")), prop("Q"))));
  CHECK(eq(parse("P and Q or S"), f_or(f_and(prop("P"), prop("Q")), prop("S"))));
  CHECK(eq(parse("P -> Q or S"), imp(prop("P"), f_or(prop("Q"), prop("S")))));
  CHECK(eq(parse("not P -> Q"), imp(f_not(prop("P")), prop("Q"))));
  CHECK(eq(parse("forall X X -> P"), all(imp(bnd(0), prop("P")))));
  CHECK(eq(parse("P -> forall X X"), imp(prop("P"), f_bot())));
  CHECK(eq(parse("P and forall X X"), f_and(prop("P"), f_bot())));
  CHECK(eq(parse("box box P"), box(box(prop("P")))));
  CHECK(eq(parse("box (forall X X)"), box(f_bot())));
  CHECK(eq(parse("P iff Q"), f_iff(prop("P"), prop("Q"))));
  CHECK(eq(parse("P -> Q iff Q -> P"), f_iff(imp(prop("P"), prop("Q")), imp(prop("Q"), prop("P")))));
  CHECK(eq(parse("forall X . X"), all(bnd(0))));
}

TEST_CASE("parse: sugar elimination") {
  CHECK(eq(parse("bot"), all(bnd(0))));
  CHECK(eq(parse("top"), imp(f_bot(), f_bot())));
  CHECK(eq(parse("not P"), imp(prop("P"), f_bot())));
  CHECK(eq(parse("P and Q"), f_and(prop("P"), prop("Q"))));
  CHECK(eq(parse("P or Q"), f_or(prop("P"), prop("Q"))));
  CHECK(eq(parse("exists Y (P -> Y)"), f_exists("Y", imp(prop("P"), var("Y")))));
  CHECK(eq(parse("bdia P"), all(imp(bbox(imp(prop("P"), box(bnd(0)))), bnd(0)))));
  // sugar under a binder: argument indices must skip the encoding's binder
  Fm f = parse("forall X (P or X)");
  REQUIRE(f->tag == Tag::All);
  Sugar s = match_sugar(f->a);
  REQUIRE(s.kind == Sugar::Or);
  CHECK(eq(s.a, prop("P")));
  CHECK(eq(s.b, bnd(0)));
  CHECK(eq(parse("forall X (P and X)"),
           all(all(imp(imp(prop("P"), imp(bnd(1), bnd(0))), bnd(0))))));
}

TEST_CASE("parse: native mode") {
  CHECK(eq(parse_native("dia P"), dia(prop("P"))));
  CHECK(eq(parse_native("bdia P"), bdia(prop("P"))));
  CHECK(parse_native("dia P")->has_native);
  CHECK(!parse("dia P")->has_native);
  // other sugar still expands in native mode
  CHECK(eq(parse_native("P and Q"), f_and(prop("P"), prop("Q"))));
}

TEST_CASE("parse: errors") {
  CHECK_THROWS_AS(parse("forall P P"), ParseError);
  CHECK_THROWS_AS(parse("P ->"), ParseError);
  CHECK_THROWS_AS(parse("(P"), ParseError);
  CHECK_THROWS_AS(parse("P Q"), ParseError);
  CHECK_THROWS_AS(parse("?"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  try {
    parse("P -> ? Q");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.pos == 5);
  }
}

TEST_CASE("print: spec examples") {
  CHECK(print(all(bnd(0))) == "forall X X");
  CHECK(print(imp(prop("A"), imp(prop("B"), prop("C")))) == "A -> B -> C");
  CHECK(print(imp(imp(prop("A"), prop("B")), prop("C"))) == "(A -> B) -> C");
  CHECK(print(box(all(bnd(0)))) == "box (forall X X)");
}

TEST_CASE("print: binder naming avoids free variables") {
  // forall Y (X -> Y) with Y substituted for X: the binder must be renamed
  Fm f = subst_var(parse("forall Y (X -> Y)"), "X", var("Y"));
  CHECK(print(f) == "forall X Y -> X");  // maximal-right scope needs no parens
  CHECK(eq(parse(print(f)), f));
}

TEST_CASE("print: sugar") {
  CHECK(print_sugar(f_bot()) == "bot");
  CHECK(print_sugar(f_top()) == "top");
  CHECK(print_sugar(parse("P and Q or S")) == "P and Q or S");
  CHECK(print_sugar(parse("not P -> Q")) == "not P -> Q");
  CHECK(print_sugar(parse("dia P")) == "dia P");
  CHECK(print_sugar(parse("bdia (P and Q)")) == "bdia (P and Q)");
  CHECK(print_sugar(parse("exists Y (P -> Y)")) == "exists X P -> X");
  CHECK(print_sugar(parse("P iff Q")) == "P iff Q");
  CHECK(print_sugar(parse("forall X (P or X)")) == "forall X P or X");
  // a bare quantifier is only legal in tail position
  CHECK(print_sugar(parse("(P and forall X box X) or Q")) == "P and (forall X box X) or Q");
  CHECK(print_sugar(parse("P and forall X box X")) == "P and forall X box X");
  // raw printer leaves encodings alone
  CHECK(print(f_bot()) == "forall X X");
}

TEST_CASE("free_vars: spec examples") {
  CHECK(free_vars(prop("P")).empty());
  CHECK(free_vars(parse("forall X (X -> Y)")) == std::set<std::string>{"Y"});
  CHECK(free_vars(imp(var("X"), var("X"))) == std::set<std::string>{"X"});
  CHECK(is_closed(parse("forall X X")));
  CHECK(!is_closed(var("X")));
}

TEST_CASE("substitute: spec examples") {
  CHECK(eq(subst_var(var("X"), "X", f_bot()), f_bot()));
  CHECK(eq(subst_var(parse("forall X X"), "Y", prop("P")), parse("forall X X")));
  // capture case: substitute(forall Y (X -> Y), X, Y) = forall Y' (Y -> Y')
  Fm got = subst_var(parse("forall Y (X -> Y)"), "X", var("Y"));
  CHECK(eq(got, all(imp(var("Y"), bnd(0)))));
}

TEST_CASE("encode: spec examples") {
  CHECK(eq(encode(Derived::Bot, {}), parse("forall X X")));
  CHECK(size(encode(Derived::Bot, {})) == 2);
  Fm A = prop("A"), B = prop("B");
  CHECK(eq(encode(Derived::Dia, {A}), parse("forall X (box (A -> bbox X) -> X)")));
  CHECK(eq(encode(Derived::Or, {A, B}), parse("forall X ((A -> X) -> (B -> X) -> X)")));
  CHECK(eq(encode(Derived::And, {A, B}), parse("forall X ((A -> B -> X) -> X)")));
  CHECK(eq(encode(Derived::Exists, {imp(prop("P"), var("Y"))}),
           parse("forall X ((forall Y ((P -> Y) -> X)) -> X)")));
  CHECK(eq(encode(Derived::Not, {A}), imp(A, encode(Derived::Bot, {}))));
  CHECK(eq(encode(Derived::Top, {}), imp(f_bot(), f_bot())));
  CHECK(eq(encode(Derived::BDia, {A}), parse("bdia A")));
  CHECK(eq(encode(Derived::Iff, {A, B}), f_and(imp(A, B), imp(B, A))));
  CHECK_THROWS_AS(encode(Derived::And, {A}), std::invalid_argument);
  CHECK_THROWS_AS(encode(Derived::Bot, {A}), std::invalid_argument);
}

TEST_CASE("size: spec examples") {
  CHECK(size(prop("P")) == 1);
  CHECK(size(imp(prop("P"), prop("Q"))) == 3);
}

TEST_CASE("negative translation basics") {
  Fm P = prop("P");
  CHECK(eq(negative_translate(P), f_not(f_not(P))));
  CHECK(eq(negative_translate(imp(P, prop("Q"))),
           imp(f_not(f_not(P)), f_not(f_not(prop("Q"))))));
  CHECK(eq(negative_translate(box(P)), box(f_not(f_not(P)))));
  CHECK(eq(negative_translate(parse("forall X X")), all(f_not(f_not(bnd(0))))));
  CHECK_THROWS_AS(negative_translate(dia(P)), std::invalid_argument);
  CHECK_NOTHROW(negative_translate(parse("dia P")));  // encoding is minimal grammar
}

TEST_CASE("fresh supply") {
  FreshSupply fs;
  CHECK(fs.fresh_prop() == "P0");
  CHECK(fs.fresh_prop() == "P1");
  CHECK(fs.fresh_world() == "w0");
  fs.avoid("P7");
  CHECK(fs.fresh_prop() == "P8");
  fs.avoid("Q13");  // not a generated shape, ignored
  fs.avoid("w2");
  CHECK(fs.fresh_world() == "w3");
  FreshSupply fs2;
  fs2.avoid_all(parse("P3 -> box P10"));
  CHECK(fs2.fresh_prop() == "P11");
}

TEST_CASE("uses_bound") {
  CHECK(uses_bound(parse("forall X X")->a, 0));
  CHECK(!uses_bound(parse("forall X P")->a, 0));
  CHECK(uses_bound(parse("forall X forall Y X")->a, 0));
  CHECK(!uses_bound(parse("forall X forall Y Y")->a, 0));
}

TEST_CASE("property: round-trip, substitution laws") {
  std::mt19937 rng(0xC0FFEE);
  for (int i = 0; i < 400; i++) {
    Fm f = i % 2 ? gen_raw(rng, 2 + (int)(rng() % 4u), 0) : gen_sugared(rng, 2 + (int)(rng() % 3u), 0);
    REQUIRE(f->dangling == 0);

    // round-trip, raw and sugared
    CHECK(eq(parse(print(f)), f));
    CHECK(eq(parse(print_sugar(f)), f));

    // identity substitution
    CHECK(eq(subst_var(f, "X", var("X")), f));

    // substitution / free-variable law
    Fm c = gen_raw(rng, 2, 0);
    auto fvf = free_vars(f), fvc = free_vars(c);
    Fm g = subst_var(f, "X", c);
    auto fvg = free_vars(g);
    std::set<std::string> expect;
    for (const auto& v : fvf)
      if (v != "X") expect.insert(v);
    if (fvf.count("X")) {
      expect.insert(fvc.begin(), fvc.end());
      CHECK(fvg == expect);
    } else {
      CHECK(fvg == fvf);
    }

    // abstraction inverts instantiation
    CHECK(eq(instantiate(abstract_var(f, "X"), var("X")), f));
    CHECK(eq(instantiate(abstract_prop(f, "P"), prop("P")), f));

    // standalone formulas are shift-invariant
    CHECK(shift_above(f, 0, 3) == f);

    // comparison is a strict weak order compatible with eq
    CHECK(cmp(f, f) == 0);
    CHECK(cmp(f, c) == -cmp(c, f));
    CHECK((cmp(f, c) == 0) == eq(f, c));
  }
}

TEST_CASE("property: instantiate agrees with named substitution") {
  std::mt19937 rng(0xBADA55);
  for (int i = 0; i < 200; i++) {
    Fm body = gen_raw(rng, 3, 1);  // may use index 0
    Fm c = gen_raw(rng, 2, 0);
    // forall-intro then C-style instantiation equals direct plugging
    Fm viaAll = instantiate(all(body)->a, c);
    CHECK(eq(viaAll, instantiate(body, c)));
    // naming the hole and substituting the name is the same thing
    Fm named = instantiate(body, var("Zfresh"));
    CHECK(eq(subst_var(named, "Zfresh", c), instantiate(body, c)));
  }
}
