// Read and write labelled proofs as plain text, one node per line:
//
//   calculus LIKt2 cut negneg
//   # optional commentary
//   0 | id | . | v:A => v:A
//   1 | boxr 0 w | . | . => v:box A
//
// The first two '|' separate index and rule from the sequent; the sequent
// keeps its own '|' between relational context and cedents. Flags after
// the calculus name: `cut` permits cut nodes, `negneg` switches the
// checker to extended mode.

#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

#include "labelled.hpp"

namespace tenselab {

struct LpfFile {
  Calculus calc;
  bool extended = false;
  LabelledProof proof;
};

namespace lpf_detail {

[[noreturn]] inline void fail(int lineno, const std::string& msg) {
  throw std::runtime_error("labelled proof file line " + std::to_string(lineno) + ": " + msg);
}

inline std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace lpf_detail

inline std::string write_lpf(const LabelledProof& p, Calculus calc, bool extended = false) {
  std::string out = "calculus ";
  out += calc_name(calc.tag);
  if (calc.cut_allowed) out += " cut";
  if (extended) out += " negneg";
  out += "\n";
  for (size_t n = 0; n < p.size(); ++n) {
    const LNode& nd = p[n];
    out += std::to_string(n);
    out += " | ";
    out += lrule_name(nd.rule);
    int arity = lrule_arity(nd.rule);
    if (arity >= 1) out += " " + std::to_string(nd.i);
    if (arity == 2) out += " " + std::to_string(nd.j);
    if (nd.rule == LRule::ForallL) out += " with " + print_sugar(nd.witness);
    if (nd.rule == LRule::ForallR || nd.rule == LRule::BoxR || nd.rule == LRule::BBoxR)
      out += " " + nd.eigen;
    out += " | ";
    out += print_lseq(nd.seq, true);
    out += "\n";
  }
  return out;
}

inline LpfFile read_lpf(const std::string& text) {
  using lpf_detail::fail;
  using lpf_detail::words;
  LpfFile out;
  out.calc.cut_allowed = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_calc = false;
  int next = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = lseq_detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!have_calc) {
      auto ws = words(t);
      if (ws.size() < 2 || ws[0] != "calculus") fail(lineno, "expected 'calculus <name>' first");
      if (ws[1] == "LKt2") out.calc.tag = CalcTag::LKt2;
      else if (ws[1] == "LIKt2") out.calc.tag = CalcTag::LIKt2;
      else if (ws[1] == "MLIKt2") out.calc.tag = CalcTag::MLIKt2;
      else fail(lineno, "unknown calculus '" + ws[1] + "'");
      for (size_t k = 2; k < ws.size(); ++k) {
        if (ws[k] == "cut") out.calc.cut_allowed = true;
        else if (ws[k] == "negneg") out.extended = true;
        else fail(lineno, "unknown calculus flag '" + ws[k] + "'");
      }
      have_calc = true;
      continue;
    }
    size_t b1 = t.find('|');
    size_t b2 = b1 == std::string::npos ? b1 : t.find('|', b1 + 1);
    if (b2 == std::string::npos) fail(lineno, "expected '<index> | <rule> | <sequent>'");
    std::string idxpart = lseq_detail::trim(t.substr(0, b1));
    std::string rulepart = lseq_detail::trim(t.substr(b1 + 1, b2 - b1 - 1));
    std::string seqpart = t.substr(b2 + 1);
    int idx;
    try {
      idx = std::stoi(idxpart);
    } catch (const std::exception&) {
      fail(lineno, "bad node index '" + idxpart + "'");
    }
    if (idx != next) fail(lineno, "node indices must count up from 0 without gaps");
    ++next;

    LNode nd;
    // `foralll N with <formula>` carries the witness as the line tail
    std::string witness_text;
    size_t wpos = rulepart.find(" with ");
    if (wpos != std::string::npos) {
      witness_text = rulepart.substr(wpos + 6);
      rulepart = lseq_detail::trim(rulepart.substr(0, wpos));
    }
    auto ws = words(rulepart);
    if (ws.empty()) fail(lineno, "missing rule name");
    bool known = false;
    for (LRule r : {LRule::Id, LRule::Cut, LRule::WL, LRule::WR, LRule::CL, LRule::CR,
                    LRule::ImplL, LRule::ImplR, LRule::ForallL, LRule::ForallR, LRule::BoxL,
                    LRule::BoxR, LRule::BBoxL, LRule::BBoxR, LRule::NegNeg}) {
      if (ws[0] == lrule_name(r)) {
        nd.rule = r;
        known = true;
        break;
      }
    }
    if (!known) fail(lineno, "unknown rule '" + ws[0] + "'");
    int arity = lrule_arity(nd.rule);
    size_t want = 1 + arity;
    if (nd.rule == LRule::ForallR || nd.rule == LRule::BoxR || nd.rule == LRule::BBoxR) ++want;
    if (ws.size() != want) fail(lineno, std::string("rule '") + ws[0] + "' takes " + std::to_string(want - 1) + " argument(s)");
    try {
      if (arity >= 1) nd.i = std::stoi(ws[1]);
      if (arity == 2) nd.j = std::stoi(ws[2]);
    } catch (const std::exception&) {
      fail(lineno, "bad premiss index");
    }
    if ((arity >= 1 && (nd.i < 0 || nd.i >= idx)) || (arity == 2 && (nd.j < 0 || nd.j >= idx)))
      fail(lineno, "premiss index must point at an earlier node");
    if (nd.rule == LRule::ForallL) {
      if (witness_text.empty()) fail(lineno, "foralll needs 'with <formula>'");
      try {
        nd.witness = parse(witness_text);
      } catch (const ParseError& e) {
        fail(lineno, std::string("bad witness: ") + e.what());
      }
    } else if (wpos != std::string::npos) {
      fail(lineno, "'with' is only meaningful for foralll");
    }
    if (nd.rule == LRule::ForallR) {
      nd.eigen = ws.back();
      if (nd.eigen.empty() || !isupper((unsigned char)nd.eigen[0]))
        fail(lineno, "forallr eigenvariable must be a proposition symbol");
    }
    if (nd.rule == LRule::BoxR || nd.rule == LRule::BBoxR) {
      nd.eigen = ws.back();
      if (!lseq_detail::world_ok(nd.eigen)) fail(lineno, "bad world symbol '" + ws.back() + "'");
    }
    try {
      nd.seq = parse_lseq(seqpart);
    } catch (const ParseError& e) {
      fail(lineno, std::string("bad sequent: ") + e.what());
    }
    out.proof.push_back(std::move(nd));
  }
  if (!have_calc) throw std::runtime_error("labelled proof file: missing calculus header");
  if (out.proof.empty()) throw std::runtime_error("labelled proof file: no proof nodes");
  return out;
}

}  // namespace tenselab
