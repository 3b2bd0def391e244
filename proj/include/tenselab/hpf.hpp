// Hilbert proof files. Line-oriented text, one record per proof line:
//
//   # optional comments
//   system IKt2
//   0 | P -> Q -> P       | axiom K with A := P; B := Q
//   1 | box (P -> Q -> P) | necbox 0
//
// Justifications: axiom <Schema> [with A := f; B := g; ...], mp <i> <j>,
// gen <i> <P>, necbox <i>, necbbox <i>. Axiom bindings are optional on
// load (they are reinferred), but always written. Binder-valued slots
// (the schema positions that range over a formula with a hole) are
// serialised as their forall-closures and unwrapped on load.

#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "hilbert.hpp"
#include "parser.hpp"
#include "printer.hpp"

namespace tenselab {

struct HpfFile {
  System system = System::IKt2;
  HilbertProof proof;
};

namespace hpf_detail {

inline bool slot_is_body(AxiomSchema s, int slot) {
  if (s == AxiomSchema::FunAll) return true;
  return s == AxiomSchema::Compr && slot == 0;
}

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] inline void fail(int lineno, const std::string& msg) {
  throw std::runtime_error("proof file line " + std::to_string(lineno) + ": " + msg);
}

}  // namespace hpf_detail

inline std::string write_hpf(const HilbertProof& p, System sys) {
  std::ostringstream out;
  out << "system " << system_name(sys) << "\n";
  for (size_t i = 0; i < p.size(); i++) {
    const HilbertStep& st = p[i];
    out << i << " | " << print(st.formula) << " | ";
    switch (st.kind) {
      case StepKind::Axiom: {
        out << "axiom " << schema_name(st.schema);
        for (size_t k = 0; k < st.binds.size(); k++) {
          out << (k == 0 ? " with " : "; ") << (char)('A' + k) << " := ";
          Fm b = st.binds[k];
          if (hpf_detail::slot_is_body(st.schema, (int)k)) b = all(b);
          out << print(b);
        }
        break;
      }
      case StepKind::MP:
        out << "mp " << st.i << " " << st.j;
        break;
      case StepKind::Gen:
        out << "gen " << st.i << " " << st.gen_sym;
        break;
      case StepKind::NecBox:
        out << "necbox " << st.i;
        break;
      case StepKind::NecBBox:
        out << "necbbox " << st.i;
        break;
    }
    out << "\n";
  }
  return out.str();
}

inline HpfFile read_hpf(const std::string& text) {
  using hpf_detail::fail;
  using hpf_detail::trim;
  HpfFile file;
  bool have_system = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto parse_fm = [&](const std::string& s) {
    try {
      return file.system == System::IKt2Dia ? parse_native(s) : parse(s);
    } catch (const ParseError& ex) {
      fail(lineno, std::string("bad formula '") + s + "': " + ex.what());
    }
  };
  while (std::getline(in, raw)) {
    lineno++;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (!have_system) {
      if (line.rfind("system ", 0) != 0) fail(lineno, "expected 'system <name>' header");
      std::string name = trim(line.substr(7));
      auto sys = system_from_name(name);
      if (!sys) fail(lineno, "unknown system '" + name + "'");
      file.system = *sys;
      have_system = true;
      continue;
    }
    size_t p1 = line.find('|');
    size_t p2 = p1 == std::string::npos ? p1 : line.find('|', p1 + 1);
    if (p2 == std::string::npos) fail(lineno, "expected '<index> | <formula> | <justification>'");
    int idx;
    try {
      idx = std::stoi(trim(line.substr(0, p1)));
    } catch (...) {
      fail(lineno, "bad line index");
    }
    if (idx != (int)file.proof.size())
      fail(lineno, "expected index " + std::to_string(file.proof.size()) + ", found " +
                       std::to_string(idx));
    HilbertStep st;
    st.formula = parse_fm(trim(line.substr(p1 + 1, p2 - p1 - 1)));
    std::string just = trim(line.substr(p2 + 1));
    std::istringstream js(just);
    std::string word;
    js >> word;
    auto read_index = [&](int bound) {
      int i = -1;
      if (!(js >> i) || i < 0 || i >= bound) fail(lineno, "bad premiss index in '" + just + "'");
      return i;
    };
    if (word == "axiom") {
      st.kind = StepKind::Axiom;
      std::string sn;
      js >> sn;
      auto sch = schema_from_name(sn);
      if (!sch) fail(lineno, "unknown axiom schema '" + sn + "'");
      st.schema = *sch;
      std::string rest;
      std::getline(js, rest);
      rest = trim(rest);
      if (!rest.empty()) {
        if (rest.rfind("with ", 0) != 0) fail(lineno, "expected 'with' before bindings");
        rest = rest.substr(5);
        std::istringstream parts(rest);
        std::string piece;
        int slot = 0;
        while (std::getline(parts, piece, ';')) {
          piece = trim(piece);
          size_t asg = piece.find(":=");
          if (asg == std::string::npos || trim(piece.substr(0, asg)) != std::string(1, (char)('A' + slot)))
            fail(lineno, "expected binding '" + std::string(1, (char)('A' + slot)) + " := ...'");
          Fm b = parse_fm(trim(piece.substr(asg + 2)));
          if (hpf_detail::slot_is_body(st.schema, slot)) {
            if (b->tag != Tag::All)
              fail(lineno, "binder-valued slot must be written as a forall-closure");
            b = b->a;
          }
          st.binds.push_back(b);
          slot++;
        }
        if (slot != schema_arity(st.schema))
          fail(lineno, "schema " + sn + " takes " + std::to_string(schema_arity(st.schema)) +
                           " bindings, found " + std::to_string(slot));
      }
    } else if (word == "mp") {
      st.kind = StepKind::MP;
      st.i = read_index((int)file.proof.size());
      st.j = read_index((int)file.proof.size());
    } else if (word == "gen") {
      st.kind = StepKind::Gen;
      st.i = read_index((int)file.proof.size());
      if (!(js >> st.gen_sym) || st.gen_sym.empty() || !isupper((unsigned char)st.gen_sym[0]))
        fail(lineno, "gen needs a propositional eigen symbol");
    } else if (word == "necbox") {
      st.kind = StepKind::NecBox;
      st.i = read_index((int)file.proof.size());
    } else if (word == "necbbox") {
      st.kind = StepKind::NecBBox;
      st.i = read_index((int)file.proof.size());
    } else {
      fail(lineno, "unknown justification '" + word + "'");
    }
    file.proof.push_back(std::move(st));
  }
  if (!have_system) throw std::runtime_error("proof file: missing 'system' header");
  if (file.proof.empty()) throw std::runtime_error("proof file: no proof lines");
  return file;
}

}  // namespace tenselab
