// Labelled sequents: relational context plus labelled cedents, with the
// text syntax `vRw, wRu | v:A, w:B => u:C`. Cedents are kept as sorted
// sets; the structural rules still check as idempotent bookkeeping.

#pragma once

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "formula.hpp"
#include "parser.hpp"
#include "printer.hpp"

namespace tenselab {

struct LFm {
  std::string w;
  Fm f;
  friend bool operator<(const LFm& a, const LFm& b) {
    if (a.w != b.w) return a.w < b.w;
    return cmp(a.f, b.f) < 0;
  }
  friend bool operator==(const LFm& a, const LFm& b) { return a.w == b.w && eq(a.f, b.f); }
};

using RelAtom = std::pair<std::string, std::string>;
using RelCtx = std::set<RelAtom>;
using Cedent = std::set<LFm>;

struct LSeq {
  RelCtx rel;
  Cedent lhs, rhs;
  friend bool operator==(const LSeq& a, const LSeq& b) {
    return a.rel == b.rel && a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

// Undirected reachability; reflexive through the empty path.
inline bool connected(const RelCtx& rel, const std::string& v, const std::string& w) {
  if (v == w) return true;
  std::set<std::string> seen{v};
  std::vector<std::string> todo{v};
  while (!todo.empty()) {
    std::string cur = todo.back();
    todo.pop_back();
    for (const auto& [a, b] : rel) {
      std::string next;
      if (a == cur) next = b;
      else if (b == cur) next = a;
      else continue;
      if (next == w) return true;
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return false;
}

// The relational context forms a polytree (undirected skeleton is a tree,
// counting parallel and converse atoms as distinct edges) and every cedent
// label sits in its single component. With an empty context this degrades
// to all labels coinciding.
inline bool is_polytree(const RelCtx& rel, const LSeq& seq) {
  std::map<std::string, std::string> parent;
  auto find = [&](std::string x) {
    while (true) {
      auto it = parent.find(x);
      if (it == parent.end() || it->second == x) return x;
      x = it->second;
    }
  };
  std::set<std::string> support;
  for (const auto& [a, b] : rel) {
    support.insert(a);
    support.insert(b);
    std::string ra = find(a), rb = find(b);
    if (ra == rb) return false;  // cycle, including a converse duplicate
    parent[ra] = rb;
  }
  // connectivity of the support
  if (!support.empty()) {
    std::string root = find(*support.begin());
    for (const auto& s : support)
      if (find(s) != root) return false;
  }
  std::set<std::string> labels;
  for (const auto& lf : seq.lhs) labels.insert(lf.w);
  for (const auto& lf : seq.rhs) labels.insert(lf.w);
  if (support.empty()) return labels.size() <= 1;
  for (const auto& l : labels)
    if (!support.count(l)) return false;
  return true;
}

inline bool world_in_seq(const LSeq& s, const std::string& w) {
  for (const auto& [a, b] : s.rel)
    if (a == w || b == w) return true;
  for (const auto& lf : s.lhs)
    if (lf.w == w) return true;
  for (const auto& lf : s.rhs)
    if (lf.w == w) return true;
  return false;
}

inline bool prop_in_seq(const LSeq& s, const std::string& p) {
  for (const auto& lf : s.lhs)
    if (has_prop(lf.f, p)) return true;
  for (const auto& lf : s.rhs)
    if (has_prop(lf.f, p)) return true;
  return false;
}

namespace lseq_detail {

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t nxt = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, nxt - pos)));
    if (nxt == std::string::npos) return out;
    pos = nxt + 1;
  }
}

inline bool world_ok(const std::string& w) {
  if (w.empty() || !islower((unsigned char)w[0])) return false;
  for (char c : w)
    if (!islower((unsigned char)c) && !isdigit((unsigned char)c)) return false;
  return true;
}

}  // namespace lseq_detail

// `vRw, wRu | v:A, w:B => u:C`; empty sections written as `.`.
inline LSeq parse_lseq(const std::string& text, bool native = false) {
  using lseq_detail::split;
  using lseq_detail::trim;
  using lseq_detail::world_ok;
  LSeq out;
  size_t bar = text.find('|');
  if (bar == std::string::npos) throw ParseError("sequent: missing '|'", 0);
  size_t arr = text.find("=>", bar);
  if (arr == std::string::npos) throw ParseError("sequent: missing '=>'", bar);
  std::string relpart = trim(text.substr(0, bar));
  std::string lhspart = trim(text.substr(bar + 1, arr - bar - 1));
  std::string rhspart = trim(text.substr(arr + 2));
  if (relpart != "." && !relpart.empty()) {
    for (const std::string& atom : split(relpart, ',')) {
      size_t r = atom.find('R');
      if (r == std::string::npos) throw ParseError("sequent: bad relational atom '" + atom + "'", 0);
      std::string a = atom.substr(0, r), b = atom.substr(r + 1);
      if (!world_ok(a) || !world_ok(b))
        throw ParseError("sequent: bad relational atom '" + atom + "'", 0);
      out.rel.insert({a, b});
    }
  }
  auto read_cedent = [&](const std::string& part, Cedent& into) {
    if (part == "." || part.empty()) return;
    for (const std::string& item : split(part, ',')) {
      size_t c = item.find(':');
      if (c == std::string::npos) throw ParseError("sequent: labelled formula needs ':' in '" + item + "'", 0);
      std::string w = trim(item.substr(0, c));
      if (!world_ok(w)) throw ParseError("sequent: bad world symbol '" + w + "'", 0);
      Fm f = native ? parse_native(item.substr(c + 1)) : parse(item.substr(c + 1));
      into.insert({w, f});
    }
  };
  read_cedent(lhspart, out.lhs);
  read_cedent(rhspart, out.rhs);
  return out;
}

inline std::string print_lseq(const LSeq& s, bool sugar = false) {
  std::string out;
  if (s.rel.empty()) {
    out += ".";
  } else {
    bool first = true;
    for (const auto& [a, b] : s.rel) {
      if (!first) out += ", ";
      out += a + "R" + b;
      first = false;
    }
  }
  out += " | ";
  auto emit = [&](const Cedent& c) {
    if (c.empty()) {
      out += ".";
      return;
    }
    bool first = true;
    for (const auto& lf : c) {
      if (!first) out += ", ";
      out += lf.w + ":" + (sugar ? print_sugar(lf.f) : print(lf.f));
      first = false;
    }
  };
  emit(s.lhs);
  out += " => ";
  emit(s.rhs);
  return out;
}

}  // namespace tenselab
