// Copyright 2026 The QDC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "qdc/circuit.hpp"

namespace qdc {

/// Parse failure with a 1-based line number.
struct ParseError : std::runtime_error {
  size_t line;
  ParseError(size_t line_no, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

inline std::string format_angle(double a) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", a);
  return buf;
}

inline uint32_t parse_index(const std::string& tok, size_t line, const char* what) {
  uint32_t v{};
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, std::string("bad ") + what + " '" + tok + "'");
  return v;
}

inline double parse_angle(const std::string& tok, size_t line) {
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad angle '" + tok + "'");
  }
}

}  // namespace detail

/// Line-based text format.
///
///   qubits N
///   cbits M
///   h q | s q | sdg q | x q | y q | z q | p THETA q | rx THETA q | rz THETA q
///   cx a b | cz a b | swap a b
///   paulirot SIGNED_PAULI THETA q0 q1 ...
///   measure q c [x]
///   reset q
///   cpauli X|Z EXPR q
///   csignrot rx|rz THETA EXPR q
///   barrier q0 q1 ...
///   post EXPR SIGNED_PAULI        (full-width Pauli; trailing frame)
///
/// EXPR is cK^cJ^...^1? or 0; '#' starts a comment; angles are radians.
inline Circuit parse_circuit(const std::string& text) {
  Circuit c;
  bool have_qubits = false, have_cbits = false;
  std::istringstream stream(text);
  std::string line;
  size_t line_no = 0;
  std::vector<uint8_t> written;

  auto need = [&](const std::vector<std::string>& t, size_t n, const char* mnemonic) {
    if (t.size() != n)
      throw ParseError(line_no, std::string("'") + mnemonic + "' expects " +
                                    std::to_string(n - 1) + " arguments");
  };
  auto qubit = [&](const std::string& tok) {
    uint32_t q = detail::parse_index(tok, line_no, "qubit");
    if (q >= c.n_qubits) throw ParseError(line_no, "qubit index out of range");
    return q;
  };
  auto cbit = [&](const std::string& tok) {
    uint32_t b = detail::parse_index(tok, line_no, "cbit");
    if (b >= c.n_cbits) throw ParseError(line_no, "cbit index out of range");
    return b;
  };
  auto parse_expr = [&](const std::string& tok) {
    ParityExpr e;
    try {
      e = ParityExpr::parse(tok);
    } catch (const std::exception& ex) {
      throw ParseError(line_no, ex.what());
    }
    for (uint32_t b : e.bits()) {
      if (b >= c.n_cbits) throw ParseError(line_no, "cbit index out of range");
      if (!written[b]) throw ParseError(line_no, "cbit c" + std::to_string(b) +
                                                     " used before measurement");
    }
    return e;
  };
  auto parse_pauli = [&](const std::string& tok) {
    try {
      PauliString p = PauliString::parse(tok);
      if (!p.is_hermitian()) throw ParseError(line_no, "imaginary Pauli sign not allowed here");
      return p;
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad Pauli '" + tok + "'");
    }
  };

  while (std::getline(stream, line)) {
    ++line_no;
    auto t = detail::tokenize(line);
    if (t.empty()) continue;
    const std::string& op = t[0];

    if (op == "qubits") {
      need(t, 2, "qubits");
      c.n_qubits = detail::parse_index(t[1], line_no, "count");
      have_qubits = true;
      continue;
    }
    if (op == "cbits") {
      need(t, 2, "cbits");
      c.n_cbits = detail::parse_index(t[1], line_no, "count");
      written.assign(c.n_cbits, 0);
      have_cbits = true;
      continue;
    }
    if (!have_qubits || !have_cbits)
      throw ParseError(line_no, "missing 'qubits'/'cbits' header");

    if (op == "h" || op == "s" || op == "sdg" || op == "x" || op == "y" || op == "z") {
      need(t, 2, op.c_str());
      OpKind k = op == "h"   ? OpKind::H
                 : op == "s" ? OpKind::S
                 : op == "sdg" ? OpKind::Sdg
                 : op == "x" ? OpKind::X
                 : op == "y" ? OpKind::Y
                             : OpKind::Z;
      c.add(Instruction::gate1(k, qubit(t[1])));
    } else if (op == "p" || op == "rx" || op == "rz") {
      need(t, 3, op.c_str());
      double theta = detail::parse_angle(t[1], line_no);
      uint32_t q = qubit(t[2]);
      c.add(op == "p" ? Instruction::phase(theta, q)
                      : (op == "rx" ? Instruction::rx(theta, q) : Instruction::rz(theta, q)));
    } else if (op == "cx" || op == "cz" || op == "swap") {
      need(t, 3, op.c_str());
      uint32_t a = qubit(t[1]), b = qubit(t[2]);
      if (a == b) throw ParseError(line_no, "identical qubits");
      c.add(op == "cx" ? Instruction::cx(a, b)
                       : (op == "cz" ? Instruction::cz(a, b) : Instruction::swap(a, b)));
    } else if (op == "paulirot") {
      if (t.size() < 4) throw ParseError(line_no, "'paulirot' expects PAULI THETA qubits...");
      PauliString p = parse_pauli(t[1]);
      double theta = detail::parse_angle(t[2], line_no);
      std::vector<uint32_t> qs;
      for (size_t i = 3; i < t.size(); ++i) qs.push_back(qubit(t[i]));
      if (qs.size() != p.num_qubits())
        throw ParseError(line_no, "paulirot operand count mismatch");
      for (size_t i = 0; i < qs.size(); ++i)
        for (size_t j = i + 1; j < qs.size(); ++j)
          if (qs[i] == qs[j]) throw ParseError(line_no, "identical qubits");
      c.add(Instruction::pauli_rot(PauliRotation(p, theta), qs));
    } else if (op == "measure") {
      if (t.size() != 3 && t.size() != 4)
        throw ParseError(line_no, "'measure' expects q c [x]");
      uint32_t q = qubit(t[1]);
      uint32_t b = cbit(t[2]);
      MeasBasis basis = MeasBasis::Z;
      if (t.size() == 4) {
        if (t[3] != "x") throw ParseError(line_no, "bad measurement basis '" + t[3] + "'");
        basis = MeasBasis::X;
      }
      written[b] = 1;
      c.add(Instruction::measure(q, b, basis));
    } else if (op == "reset") {
      need(t, 2, "reset");
      c.add(Instruction::reset(qubit(t[1])));
    } else if (op == "cpauli") {
      need(t, 4, "cpauli");
      if (t[1] != "X" && t[1] != "Z") throw ParseError(line_no, "cpauli axis must be X or Z");
      ParityExpr e = parse_expr(t[2]);
      c.add(Instruction::cond_pauli(t[1][0], e, qubit(t[3])));
    } else if (op == "csignrot") {
      need(t, 5, "csignrot");
      if (t[1] != "rx" && t[1] != "rz")
        throw ParseError(line_no, "csignrot axis must be rx or rz");
      double theta = detail::parse_angle(t[2], line_no);
      ParityExpr e = parse_expr(t[3]);
      c.add(Instruction::cond_sign_rot(t[1][1], theta, e, qubit(t[4])));
    } else if (op == "barrier") {
      std::vector<uint32_t> qs;
      for (size_t i = 1; i < t.size(); ++i) qs.push_back(qubit(t[i]));
      c.add(Instruction::barrier(qs));
    } else if (op == "post") {
      need(t, 3, "post");
      ParityExpr e = parse_expr(t[1]);
      PauliString p = parse_pauli(t[2]);
      if (p.num_qubits() != c.n_qubits)
        throw ParseError(line_no, "post Pauli width mismatch");
      c.postprocessing.add(e, p);
    } else {
      throw ParseError(line_no, "unknown instruction '" + op + "'");
    }
  }
  if (!have_qubits || !have_cbits) throw ParseError(line_no, "missing header");
  return c;
}

/// Canonical form: one instruction per line, lowercase mnemonics, symmetric
/// gate operands ascending, angles with %.17g.
inline std::string serialize_circuit(const Circuit& c) {
  std::string out = "qubits " + std::to_string(c.n_qubits) + "\n";
  out += "cbits " + std::to_string(c.n_cbits) + "\n";
  for (const Instruction& in : c.instructions) {
    switch (in.op) {
      case OpKind::H: out += "h " + std::to_string(in.qubits[0]); break;
      case OpKind::S: out += "s " + std::to_string(in.qubits[0]); break;
      case OpKind::Sdg: out += "sdg " + std::to_string(in.qubits[0]); break;
      case OpKind::X: out += "x " + std::to_string(in.qubits[0]); break;
      case OpKind::Y: out += "y " + std::to_string(in.qubits[0]); break;
      case OpKind::Z: out += "z " + std::to_string(in.qubits[0]); break;
      case OpKind::Phase:
        out += "p " + detail::format_angle(in.angle) + " " + std::to_string(in.qubits[0]);
        break;
      case OpKind::Rx:
        out += "rx " + detail::format_angle(in.angle) + " " + std::to_string(in.qubits[0]);
        break;
      case OpKind::Rz:
        out += "rz " + detail::format_angle(in.angle) + " " + std::to_string(in.qubits[0]);
        break;
      case OpKind::CX:
        out += "cx " + std::to_string(in.qubits[0]) + " " + std::to_string(in.qubits[1]);
        break;
      case OpKind::CZ: {
        uint32_t a = std::min(in.qubits[0], in.qubits[1]);
        uint32_t b = std::max(in.qubits[0], in.qubits[1]);
        out += "cz " + std::to_string(a) + " " + std::to_string(b);
        break;
      }
      case OpKind::Swap: {
        uint32_t a = std::min(in.qubits[0], in.qubits[1]);
        uint32_t b = std::max(in.qubits[0], in.qubits[1]);
        out += "swap " + std::to_string(a) + " " + std::to_string(b);
        break;
      }
      case OpKind::PauliRot: {
        // Canonical form drops identity letters from the support list.
        std::vector<uint32_t> qs;
        std::string letters;
        for (size_t i = 0; i < in.qubits.size(); ++i) {
          char l = in.pauli.letter(static_cast<uint32_t>(i));
          if (l == 'I') continue;
          letters += l;
          qs.push_back(in.qubits[i]);
        }
        if (letters.empty() && !in.qubits.empty()) {
          // Identity rotation: keep one explicit I operand so the line stays
          // parseable.
          letters = "I";
          qs.push_back(in.qubits[0]);
        }
        std::string sign = in.pauli.phase_exp() == 2 ? "-" : "+";
        out += "paulirot " + sign + letters + " " + detail::format_angle(in.angle);
        for (uint32_t q : qs) out += " " + std::to_string(q);
        break;
      }
      case OpKind::Measure:
        out += "measure " + std::to_string(in.qubits[0]) + " " + std::to_string(in.cbit);
        if (in.basis == MeasBasis::X) out += " x";
        break;
      case OpKind::Reset: out += "reset " + std::to_string(in.qubits[0]); break;
      case OpKind::CondPauli:
        out += std::string("cpauli ") + in.pauli_kind + " " + in.expr.str() + " " +
               std::to_string(in.qubits[0]);
        break;
      case OpKind::CondSignRot:
        out += std::string("csignrot r") + in.rot_axis + " " + detail::format_angle(in.angle) +
               " " + in.expr.str() + " " + std::to_string(in.qubits[0]);
        break;
      case OpKind::Barrier:
        out += "barrier";
        for (uint32_t q : in.qubits) out += " " + std::to_string(q);
        break;
    }
    out += "\n";
  }
  for (const auto& [expr, pauli] : c.postprocessing.terms)
    out += "post " + expr.str() + " " + pauli.str() + "\n";
  return out;
}

}  // namespace qdc
