// Labelled sequents: text form, the graph predicates, the three calculi and
// their checker, proof files, and the structural proof transformations.

#include <catch2/catch_amalgamated.hpp>
#include <fstream>
#include <random>
#include <sstream>

#include "tenselab/lpf.hpp"
#include "tenselab/ltransforms.hpp"

using namespace tenselab;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LpfFile fixture(const std::string& name) {
  return read_lpf(slurp(std::string(TL_SOURCE_DIR) + "/fixtures/labelled/" + name + ".lpf"));
}

const char* kFixtures[] = {"dia-chain",    "box-quantifier-swap", "stable-box-bot",
                           "classical-mirror-pair", "or-distribution", "multi-weaken"};

std::vector<std::string> worlds_of(const LSeq& s) {
  std::set<std::string> ws;
  for (const auto& [a, b] : s.rel) {
    ws.insert(a);
    ws.insert(b);
  }
  for (const auto& lf : s.lhs) ws.insert(lf.w);
  for (const auto& lf : s.rhs) ws.insert(lf.w);
  return {ws.begin(), ws.end()};
}

bool connected_over_labels(const LSeq& s) {
  auto ws = worlds_of(s);
  for (size_t i = 1; i < ws.size(); ++i)
    if (!connected(s.rel, ws[0], ws[i])) return false;
  return true;
}

bool same_proof(const LabelledProof& a, const LabelledProof& b) {
  if (a.size() != b.size()) return false;
  for (size_t k = 0; k < a.size(); ++k) {
    if (a[k].rule != b[k].rule || a[k].i != b[k].i || a[k].j != b[k].j) return false;
    if (!(a[k].seq == b[k].seq) || a[k].eigen != b[k].eigen) return false;
    if ((bool)a[k].witness != (bool)b[k].witness) return false;
    if (a[k].witness && !eq(a[k].witness, b[k].witness)) return false;
  }
  return true;
}

// spanning tree with random edge orientations, plus sometimes a chord;
// stays connected, at most 6 atoms
RelCtx random_connected_rel(std::mt19937& rng, std::vector<std::string>& support) {
  int k = 1 + (int)(rng() % 6u);
  support.clear();
  for (int i = 0; i < k; ++i) support.push_back("w" + std::to_string(i));
  RelCtx rel;
  for (int i = 1; i < k; ++i) {
    int par = (int)(rng() % (unsigned)i);
    if (rng() & 1u) rel.insert({support[par], support[i]});
    else rel.insert({support[i], support[par]});
  }
  if (k > 2 && (rng() & 1u)) {
    int a = (int)(rng() % (unsigned)k), b = (int)(rng() % (unsigned)k);
    if (a != b) rel.insert({support[a], support[b]});
  }
  return rel;
}

}  // namespace

TEST_CASE("labelled sequent text round-trips") {
  SECTION("canonical form is sorted and re-parses") {
    LSeq s = parse_lseq("vRw, uRv | w:B, v:A => u:C");
    CHECK(print_lseq(s) == "uRv, vRw | v:A, w:B => u:C");
    CHECK(parse_lseq(print_lseq(s)) == s);
  }
  SECTION("dots stand for empty sections") {
    LSeq s = parse_lseq(". | . => v:P -> Q");
    CHECK(s.rel.empty());
    CHECK(s.lhs.empty());
    REQUIRE(s.rhs.size() == 1);
    CHECK(eq(s.rhs.begin()->f, parse("P -> Q")));
    CHECK(print_lseq(s) == ". | . => v:P -> Q");
    CHECK(parse_lseq("|=>").rhs.empty());
  }
  SECTION("cedents are sets") {
    LSeq s = parse_lseq(". | v:A, v:A, v:A => v:A");
    CHECK(s.lhs.size() == 1);
  }
  SECTION("sugar printing stays faithful") {
    LSeq s = parse_lseq("vRw | v:not A, w:bot => v:dia (A or B)");
    CHECK(print_lseq(s, true) == "vRw | v:not A, w:bot => v:dia (A or B)");
    CHECK(parse_lseq(print_lseq(s, true)) == s);
  }
  SECTION("malformed text is refused") {
    CHECK_THROWS_AS(parse_lseq("v:A => v:A"), ParseError);         // no rel section
    CHECK_THROWS_AS(parse_lseq(". | v:A, v:A"), ParseError);       // no arrow
    CHECK_THROWS_AS(parse_lseq("vw | v:A => v:A"), ParseError);    // bad atom
    CHECK_THROWS_AS(parse_lseq(". | A => v:A"), ParseError);       // missing label
    CHECK_THROWS_AS(parse_lseq(". | V:A => V:A"), ParseError);     // bad world symbol
    CHECK_THROWS_AS(parse_lseq(". | v:A -> => v:A"), ParseError);  // bad formula
  }
}

TEST_CASE("world graph predicates") {
  RelCtx vw{{"v", "w"}};
  SECTION("connected is undirected and reflexive") {
    CHECK(connected({}, "v", "v"));
    CHECK(connected({{"v", "u"}}, "u", "v"));
    CHECK_FALSE(connected({{"a", "b"}}, "v", "w"));
    CHECK(connected({{"v", "w"}, {"u", "w"}}, "v", "u"));
  }
  SECTION("polytree wants a tree skeleton covering the labels") {
    CHECK(is_polytree(vw, {vw, {{"v", parse("A")}}, {{"w", parse("B")}}}));
    CHECK(is_polytree({{"v", "w"}, {"v", "u"}}, {{{"v", "w"}, {"v", "u"}}, {}, {}}));
    // converse pair is an undirected cycle
    CHECK_FALSE(is_polytree({{"v", "w"}, {"w", "v"}}, {{{"v", "w"}, {"w", "v"}}, {}, {}}));
    RelCtx tri{{"v", "w"}, {"w", "u"}, {"u", "v"}};
    CHECK_FALSE(is_polytree(tri, {tri, {}, {}}));
    // two components, with and without labels pointing at them
    RelCtx two{{"v", "w"}, {"s", "t"}};
    CHECK_FALSE(is_polytree(two, {two, {}, {}}));
    CHECK_FALSE(is_polytree(vw, {vw, {{"u", parse("A")}}, {}}));
  }
  SECTION("label-only sequents") {
    CHECK(is_polytree({}, {{}, {{"v", parse("A")}}, {{"v", parse("B")}}}));
    CHECK_FALSE(is_polytree({}, {{}, {{"v", parse("A")}}, {{"w", parse("B")}}}));
  }
}

TEST_CASE("checker accepts and rejects single rule instances") {
  LabelledProof id1{{parse_lseq("uRv | v:A => v:A"), LRule::Id, -1, -1, {}, ""}};
  SECTION("id holds in every calculus, side formulas break it") {
    for (CalcTag tag : {CalcTag::LKt2, CalcTag::LIKt2, CalcTag::MLIKt2})
      CHECK(check_labelled_proof(id1, {tag, false}).ok);
    LabelledProof bad = id1;
    bad[0].seq.lhs.insert({"u", parse("B")});
    LVerdict v = check_labelled_proof(bad, {CalcTag::LKt2, false});
    CHECK_FALSE(v.ok);
    CHECK(v.node == 0);
    CHECK_THAT(v.reason, ContainsSubstring("id must conclude"));
  }
  SECTION("weakening adds one formula to one side") {
    LabelledProof p = id1;
    p.push_back({parse_lseq("uRv | v:A, u:B => v:A"), LRule::WL, 0, -1, {}, ""});
    CHECK(check_labelled_proof(p, {CalcTag::LIKt2, false}).ok);
    p.back().seq.lhs.insert({"u", parse("C")});
    LVerdict v = check_labelled_proof(p, {CalcTag::LIKt2, false});
    CHECK_FALSE(v.ok);
    CHECK_THAT(v.reason, ContainsSubstring("more than one formula"));
    p.back().seq = parse_lseq("uRv | u:B => v:A");  // dropped the premiss lhs
    CHECK_THAT(check_labelled_proof(p, {CalcTag::LIKt2, false}).reason,
               ContainsSubstring("not contained in the conclusion"));
  }
  SECTION("negneg sits behind the extended flag") {
    LabelledProof p{{parse_lseq(". | v:not not A => v:not not A"), LRule::Id, -1, -1, {}, ""},
                    {parse_lseq(". | v:not not A => v:A"), LRule::NegNeg, 0, -1, {}, ""}};
    CHECK(check_labelled_proof(p, {CalcTag::LIKt2, false}, true).ok);
    LVerdict v = check_labelled_proof(p, {CalcTag::LIKt2, false});
    CHECK_FALSE(v.ok);
    CHECK(v.node == 1);
    CHECK_THAT(v.reason, ContainsSubstring("extended checker"));
    p[1].seq.rhs = {{"v", parse("B")}};
    CHECK_THAT(check_labelled_proof(p, {CalcTag::LIKt2, false}, true).reason,
               ContainsSubstring("double negation"));
  }
  SECTION("premiss indices must point backwards") {
    LabelledProof p = id1;
    p.push_back({parse_lseq("uRv | v:A, u:B => v:A"), LRule::WL, 1, -1, {}, ""});
    CHECK_THAT(check_labelled_proof(p, {CalcTag::LKt2, false}).reason,
               ContainsSubstring("premiss index"));
  }
}

TEST_CASE("fixture proofs check in their declared calculi") {
  for (const char* name : kFixtures) {
    INFO(name);
    LpfFile f = fixture(name);
    LVerdict v = check_labelled_proof(f.proof, f.calc, f.extended);
    INFO("node " << v.node << ": " << v.reason);
    CHECK(v.ok);

    // written form reloads to the same proof
    LpfFile back = read_lpf(write_lpf(f.proof, f.calc, f.extended));
    CHECK(back.calc.tag == f.calc.tag);
    CHECK(back.calc.cut_allowed == f.calc.cut_allowed);
    CHECK(back.extended == f.extended);
    CHECK(same_proof(back.proof, f.proof));

    for (const LNode& nd : f.proof) {
      // conclusions are connected here, so every line stays connected,
      // and in fact every line is a polytree
      CHECK(connected_over_labels(nd.seq));
      CHECK(is_polytree(nd.seq.rel, nd.seq));
      // sugar printing is an involution on the whole corpus
      CHECK(parse_lseq(print_lseq(nd.seq, true)) == nd.seq);
    }
  }
}

TEST_CASE("calculus restrictions separate the fixtures") {
  SECTION("single-succedent proofs pass everywhere") {
    for (const char* name : {"dia-chain", "box-quantifier-swap", "stable-box-bot"}) {
      LpfFile f = fixture(name);
      for (CalcTag tag : {CalcTag::LKt2, CalcTag::LIKt2, CalcTag::MLIKt2})
        CHECK(check_labelled_proof(f.proof, {tag, false}).ok);
    }
  }
  SECTION("classical succedents fail the intuitionistic restriction") {
    LpfFile f = fixture("or-distribution");
    LVerdict v = check_labelled_proof(f.proof, {CalcTag::LIKt2, false});
    CHECK_FALSE(v.ok);
    CHECK_THAT(v.reason, ContainsSubstring("single formula"));
    // and the multi-succedent restriction still bites: an implr premiss
    // carries two formulas on the right
    v = check_labelled_proof(f.proof, {CalcTag::MLIKt2, false});
    CHECK_FALSE(v.ok);
    CHECK_THAT(v.reason, ContainsSubstring("single-succedent premiss"));
    CHECK_FALSE(check_labelled_proof(fixture("classical-mirror-pair").proof,
                                     {CalcTag::LIKt2, false})
                    .ok);
  }
  SECTION("multi-succedent weakening passes MLIKt2 only") {
    LpfFile f = fixture("multi-weaken");
    CHECK(check_labelled_proof(f.proof, {CalcTag::MLIKt2, false}).ok);
    CHECK(check_labelled_proof(f.proof, {CalcTag::LKt2, false}).ok);
    CHECK_FALSE(check_labelled_proof(f.proof, {CalcTag::LIKt2, false}).ok);
  }
  SECTION("no accepted MLIKt2 line has an empty succedent") {
    for (const char* name : kFixtures) {
      LpfFile f = fixture(name);
      if (!check_labelled_proof(f.proof, {CalcTag::MLIKt2, false}).ok) continue;
      for (const LNode& nd : f.proof) CHECK_FALSE(nd.seq.rhs.empty());
    }
  }
  SECTION("cut needs its flag") {
    LabelledProof p{{parse_lseq(". | v:P => v:P"), LRule::Id, -1, -1, {}, ""},
                    {parse_lseq(". | v:P => v:P, v:Q"), LRule::WR, 0, -1, {}, ""},
                    {parse_lseq(". | v:P, v:Q => v:P"), LRule::WL, 0, -1, {}, ""},
                    {parse_lseq(". | v:P => v:P"), LRule::Cut, 1, 2, {}, ""}};
    CHECK(check_labelled_proof(p, {CalcTag::LKt2, true}).ok);
    LVerdict v = check_labelled_proof(p, {CalcTag::LKt2, false});
    CHECK_FALSE(v.ok);
    CHECK(v.node == 3);
    CHECK_THAT(v.reason, ContainsSubstring("cut is not allowed"));
  }
}

TEST_CASE("proof files reject malformed input") {
  auto bad = [](const std::string& text, const char* what) {
    CHECK_THROWS_WITH(read_lpf(text), ContainsSubstring(what));
  };
  bad("0 | id | . | v:A => v:A", "expected 'calculus <name>'");
  bad("calculus LJ", "unknown calculus");
  bad("calculus LKt2 classical", "unknown calculus flag");
  bad("calculus LKt2\nzero | id | . | v:A => v:A", "bad node index");
  bad("calculus LKt2\n1 | id | . | v:A => v:A", "count up from 0");
  bad("calculus LKt2\n0 | par | . | v:A => v:A", "unknown rule 'par'");
  bad("calculus LKt2\n0 | id 3 | . | v:A => v:A", "takes 0 argument(s)");
  bad("calculus LKt2\n0 | id | . | v:A => v:A\n1 | wl 1 | . | v:A, v:B => v:A", "earlier node");
  bad("calculus LKt2\n0 | id | . | v:A => v:A\n1 | foralll 0 | . | v:bot => v:A", "needs 'with");
  bad("calculus LKt2\n0 | id | . | v:A => v:A\n1 | foralll 0 with ( | . | v:bot => v:A",
      "bad witness");
  bad("calculus LKt2\n0 | id with Q | . | v:A => v:A", "only meaningful for foralll");
  bad("calculus LKt2\n0 | id | . | v:A => v:A\n1 | forallr 0 w | . | . => v:forall X X",
      "proposition symbol");
  bad("calculus LKt2\n0 | id | . | v:A => v:A\n1 | boxr 0 W | . | . => v:box A",
      "bad world symbol");
  bad("calculus LKt2\n0 | id . v:A => v:A", "expected '<index> | <rule> | <sequent>'");
  bad("calculus LKt2\n0 | id | . | v:A -> => v:A", "bad sequent");
  bad("# nothing here", "missing calculus header");
  bad("calculus LKt2\n# no nodes", "no proof nodes");
  // failures name the offending line
  CHECK_THROWS_WITH(read_lpf("calculus LKt2\n\n# note\nnonsense"),
                    ContainsSubstring("line 4"));
}

TEST_CASE("bottom derivation walks any connected context") {
  SECTION("zero-length path is foralll over id") {
    LabelledProof p = bottom_derivation({}, {}, "v", "v", parse("A"));
    REQUIRE(p.size() == 2);
    CHECK(p[0].rule == LRule::Id);
    CHECK(p[1].rule == LRule::ForallL);
    CHECK(eq(p[1].witness, parse("A")));
    CHECK(check_labelled_proof(p, {CalcTag::LIKt2, false}).ok);
    CHECK(p.back().seq == parse_lseq(". | v:bot => v:A"));
  }
  SECTION("forward edges specialise falsum to box bot") {
    RelCtx vw{{"v", "w"}};
    LabelledProof p = bottom_derivation(vw, {}, "v", "w", parse("A"));
    REQUIRE(p.size() == 4);
    CHECK(p[2].rule == LRule::BoxL);
    CHECK(eq(p[3].witness, parse("box bot")));
    CHECK(check_labelled_proof(p, {CalcTag::LIKt2, false}).ok);
    CHECK(p.back().seq == parse_lseq("vRw | v:bot => w:A"));
  }
  SECTION("backward edges use the black modality") {
    RelCtx wv{{"w", "v"}};
    LabelledProof p = bottom_derivation(wv, {}, "v", "w", parse("A"));
    REQUIRE(p.size() == 4);
    CHECK(p[2].rule == LRule::BBoxL);
    CHECK(eq(p[3].witness, parse("bbox bot")));
    CHECK(check_labelled_proof(p, {CalcTag::LIKt2, false}).ok);
    CHECK(p.back().seq == parse_lseq("wRv | v:bot => w:A"));
  }
  SECTION("context formulas ride along") {
    RelCtx rel{{"v", "w"}, {"u", "w"}};
    Cedent ctx{{"v", parse("C")}, {"w", parse("bot")}};
    LabelledProof p = bottom_derivation(rel, ctx, "v", "u", parse("box A"));
    CHECK(check_labelled_proof(p, {CalcTag::LIKt2, false}).ok);
    CHECK(p.back().seq == parse_lseq("vRw, uRw | v:C, w:bot, v:bot => u:box A"));
  }
  SECTION("disconnected worlds are refused") {
    CHECK_THROWS_AS(bottom_derivation({{"a", "b"}}, {}, "a", "c", parse("A")),
                    std::invalid_argument);
    CHECK_THROWS_AS(bottom_derivation({}, {}, "v", "w", parse("A")), std::invalid_argument);
  }
  SECTION("random connected instances all check out") {
    std::mt19937 rng(20260819);
    const Fm pool[] = {parse("A"), parse("box P"), parse("P -> Q or S"),
                       parse("forall X (X -> S)"), parse("dia A"), parse("not bbox B")};
    for (int round = 0; round < 25; ++round) {
      std::vector<std::string> support;
      RelCtx rel = random_connected_rel(rng, support);
      Cedent ctx;
      for (int c = (int)(rng() % 3u); c > 0; --c)
        ctx.insert({support[rng() % support.size()], pool[rng() % 6u]});
      std::string v = support[rng() % support.size()];
      std::string w = support[rng() % support.size()];
      Fm a = pool[rng() % 6u];
      LabelledProof p = bottom_derivation(rel, ctx, v, w, a);
      LVerdict ver = check_labelled_proof(p, {CalcTag::LIKt2, false});
      INFO("round " << round << " node " << ver.node << ": " << ver.reason);
      CHECK(ver.ok);
      LSeq want{rel, ctx, {{w, a}}};
      want.lhs.insert({v, f_bot()});
      CHECK(p.back().seq == want);
    }
  }
}

TEST_CASE("multi to single keeps a formula of the succedent") {
  SECTION("weakened-in junk gets dropped") {
    LpfFile f = fixture("multi-weaken");
    SingleSuccedent out = multi_to_single(f.proof);
    CHECK(f.proof.back().seq.rhs.count(out.chosen) == 1);
    CHECK(check_labelled_proof(out.proof, {CalcTag::LIKt2, false}).ok);
    CHECK(out.proof.back().seq ==
          LSeq{f.proof.back().seq.rel, f.proof.back().seq.lhs, {out.chosen}});
  }
  SECTION("a proof ending in a right rule keeps its conclusion") {
    LpfFile f = fixture("dia-chain");
    SingleSuccedent out = multi_to_single(f.proof);
    CHECK(out.proof.back().seq == f.proof.back().seq);
    CHECK(eq(out.chosen.f, parse("(dia A -> box B) -> box (A -> B)")));
  }
  SECTION("impll where the left branch already proves a kept formula") {
    LabelledProof p{
        {parse_lseq(". | v:S => v:S"), LRule::Id, -1, -1, {}, ""},
        {parse_lseq(". | . => v:S -> S"), LRule::ImplR, 0, -1, {}, ""},
        {parse_lseq(". | . => v:S -> S, v:P"), LRule::WR, 1, -1, {}, ""},
        {parse_lseq(". | v:P => v:S -> S, v:P"), LRule::WL, 2, -1, {}, ""},
        {parse_lseq(". | v:Q => v:Q"), LRule::Id, -1, -1, {}, ""},
        {parse_lseq(". | v:P, v:Q => v:Q"), LRule::WL, 4, -1, {}, ""},
        {parse_lseq(". | v:P, v:Q => v:Q, v:S -> S"), LRule::WR, 5, -1, {}, ""},
        {parse_lseq(". | v:P -> Q, v:P => v:Q, v:S -> S"), LRule::ImplL, 3, 6, {}, ""}};
    REQUIRE(check_labelled_proof(p, {CalcTag::MLIKt2, false}).ok);
    SingleSuccedent out = multi_to_single(p);
    CHECK(eq(out.chosen.f, parse("S -> S")));
    CHECK(check_labelled_proof(out.proof, {CalcTag::LIKt2, false}).ok);
    CHECK(out.proof.back().seq == parse_lseq(". | v:P -> Q, v:P => v:S -> S"));
  }
  SECTION("impll where the auxiliary formula is the one kept") {
    LabelledProof p{{parse_lseq(". | v:P => v:P"), LRule::Id, -1, -1, {}, ""},
                    {parse_lseq(". | v:Q => v:Q"), LRule::Id, -1, -1, {}, ""},
                    {parse_lseq(". | v:P, v:Q => v:Q"), LRule::WL, 1, -1, {}, ""},
                    {parse_lseq(". | v:P -> Q, v:P => v:Q"), LRule::ImplL, 0, 2, {}, ""}};
    REQUIRE(check_labelled_proof(p, {CalcTag::MLIKt2, false}).ok);
    SingleSuccedent out = multi_to_single(p);
    CHECK(eq(out.chosen.f, parse("Q")));
    CHECK(check_labelled_proof(out.proof, {CalcTag::LIKt2, false}).ok);
    CHECK(out.proof.back().seq == p.back().seq);
  }
  SECTION("output never manufactures a cut") {
    for (const char* name : {"dia-chain", "box-quantifier-swap", "multi-weaken"}) {
      SingleSuccedent out = multi_to_single(fixture(name).proof);
      for (const LNode& nd : out.proof) CHECK(nd.rule != LRule::Cut);
      for (const LNode& nd : out.proof) CHECK_FALSE(nd.seq.rhs.empty());
    }
  }
  SECTION("properly classical input is refused") {
    CHECK_THROWS_WITH(multi_to_single(fixture("or-distribution").proof),
                      ContainsSubstring("input rejected at node"));
  }
}

TEST_CASE("classical proofs become intuitionistic refutations") {
  Calculus ext_nocut{CalcTag::LIKt2, false};
  SECTION("the id case is impll over id and the falsum walk") {
    LabelledProof p{{parse_lseq("vRw | v:A => v:A"), LRule::Id, -1, -1, {}, ""}};
    LabelledProof out = classical_to_negneg(p, "w");
    REQUIRE(out.size() == 6);
    CHECK(out[0].rule == LRule::Id);
    CHECK(out.back().rule == LRule::ImplL);
    CHECK(check_labelled_proof(out, ext_nocut, true).ok);
    CHECK(out.back().seq == parse_lseq("vRw | v:A, v:not A => w:bot"));
  }
  SECTION("a boxr ending leaves the lemma's block at the root") {
    LabelledProof p{{parse_lseq("vRw | w:A => w:A"), LRule::Id, -1, -1, {}, ""},
                    {parse_lseq("vRw | v:box A => w:A"), LRule::BoxL, 0, -1, {}, ""},
                    {parse_lseq(". | v:box A => v:box A"), LRule::BoxR, 1, -1, {}, "w"}};
    REQUIRE(check_labelled_proof(p, {CalcTag::LKt2, false}).ok);
    LabelledProof out = classical_to_negneg(p, "v");
    CHECK(check_labelled_proof(out, ext_nocut, true).ok);
    CHECK(out.back().seq == parse_lseq(". | v:box A, v:not box A => v:bot"));
    CHECK(out.back().rule == LRule::ImplL);
    bool has_negneg = false, has_boxr = false;
    for (const LNode& nd : out) {
      has_negneg |= nd.rule == LRule::NegNeg;
      has_boxr |= nd.rule == LRule::BoxR;
    }
    CHECK(has_negneg);
    CHECK(has_boxr);
  }
  SECTION("the one-sided mirror half goes through") {
    LpfFile f = fixture("classical-mirror-pair");
    LabelledProof half(f.proof.begin(), f.proof.begin() + 5);
    REQUIRE(check_labelled_proof(half, {CalcTag::LKt2, false}).ok);
    REQUIRE(half.back().seq == parse_lseq(". | v:box bbox A => v:A, v:box bot"));
    LabelledProof out = classical_to_negneg(half, "v");
    CHECK(check_labelled_proof(out, ext_nocut, true).ok);
    CHECK(out.back().seq ==
          parse_lseq(". | v:box bbox A, v:not A, v:not box bot => v:bot"));
  }
  SECTION("whole classical fixtures convert and recheck") {
    for (const char* name : {"classical-mirror-pair", "or-distribution"}) {
      LpfFile f = fixture(name);
      LabelledProof out = classical_to_negneg(f.proof, "v");
      LVerdict ver = check_labelled_proof(out, ext_nocut, true);
      INFO(name << " node " << ver.node << ": " << ver.reason);
      CHECK(ver.ok);
      const LSeq& c = f.proof.back().seq;
      LSeq want{c.rel, c.lhs, {{"v", f_bot()}}};
      for (const auto& lf : c.rhs) want.lhs.insert({lf.w, f_not(lf.f)});
      CHECK(out.back().seq == want);
    }
  }
  SECTION("cut survives exactly when the input used one") {
    LabelledProof p{{parse_lseq(". | v:P => v:P"), LRule::Id, -1, -1, {}, ""},
                    {parse_lseq(". | v:P => v:P, v:Q"), LRule::WR, 0, -1, {}, ""},
                    {parse_lseq(". | v:P, v:Q => v:P"), LRule::WL, 0, -1, {}, ""},
                    {parse_lseq(". | v:P => v:P"), LRule::Cut, 1, 2, {}, ""}};
    REQUIRE(check_labelled_proof(p, {CalcTag::LKt2, true}).ok);
    LabelledProof out = classical_to_negneg(p, "v");
    bool has_cut = false;
    for (const LNode& nd : out) has_cut |= nd.rule == LRule::Cut;
    CHECK(has_cut);
    CHECK(check_labelled_proof(out, {CalcTag::LIKt2, true}, true).ok);
    CHECK_FALSE(check_labelled_proof(out, ext_nocut, true).ok);
    CHECK(out.back().seq == parse_lseq(". | v:P, v:not P => v:bot"));
  }
  SECTION("bad inputs are refused up front") {
    LabelledProof nn{{parse_lseq(". | v:not not A => v:not not A"), LRule::Id, -1, -1, {}, ""},
                     {parse_lseq(". | v:not not A => v:A"), LRule::NegNeg, 0, -1, {}, ""}};
    CHECK_THROWS_AS(classical_to_negneg(nn, "v"), std::invalid_argument);
    LabelledProof p{{parse_lseq(". | v:A => v:A"), LRule::Id, -1, -1, {}, ""}};
    CHECK_THROWS_WITH(classical_to_negneg(p, "u"), ContainsSubstring("does not occur"));
    // a valid proof whose conclusion mentions an unreachable world: the
    // falsum walk cannot cross to it
    p.push_back({parse_lseq(". | u:B, v:A => v:A"), LRule::WL, 0, -1, {}, ""});
    CHECK_THROWS_AS(classical_to_negneg(p, "u"), std::invalid_argument);
  }
}
