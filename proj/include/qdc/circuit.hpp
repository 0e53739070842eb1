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

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdc/parity.hpp"
#include "qdc/pauli.hpp"
#include "qdc/tableau.hpp"

namespace qdc {

enum class OpKind : uint8_t {
  H, S, Sdg, X, Y, Z,
  Phase,        // p THETA q  (diag(1, e^{i theta}))
  Rx, Rz,       // rx/rz THETA q
  CX, CZ, Swap,
  PauliRot,     // paulirot SIGNED_PAULI THETA q0 q1 ...
  Measure,      // measure q c [x]
  Reset,        // reset q
  CondPauli,    // cpauli X|Z EXPR q
  CondSignRot,  // csignrot rx|rz THETA EXPR q
  Barrier,      // barrier q0 q1 ...
};

enum class MeasBasis : uint8_t { Z, X };

struct Instruction {
  OpKind op;
  std::vector<uint32_t> qubits;
  double angle = 0.0;
  uint32_t cbit = 0;
  MeasBasis basis = MeasBasis::Z;
  ParityExpr expr;           // CondPauli condition / CondSignRot sign
  PauliString pauli;         // PauliRot: Pauli over `qubits` (sign via phase_exp)
  char pauli_kind = 'Z';     // CondPauli axis
  char rot_axis = 'z';       // CondSignRot axis

  static Instruction gate1(OpKind k, uint32_t q) { return {k, {q}}; }
  static Instruction h(uint32_t q) { return gate1(OpKind::H, q); }
  static Instruction s(uint32_t q) { return gate1(OpKind::S, q); }
  static Instruction sdg(uint32_t q) { return gate1(OpKind::Sdg, q); }
  static Instruction x(uint32_t q) { return gate1(OpKind::X, q); }
  static Instruction y(uint32_t q) { return gate1(OpKind::Y, q); }
  static Instruction z(uint32_t q) { return gate1(OpKind::Z, q); }
  static Instruction phase(double theta, uint32_t q) {
    Instruction i = gate1(OpKind::Phase, q);
    i.angle = theta;
    return i;
  }
  static Instruction rx(double theta, uint32_t q) {
    Instruction i = gate1(OpKind::Rx, q);
    i.angle = theta;
    return i;
  }
  static Instruction rz(double theta, uint32_t q) {
    Instruction i = gate1(OpKind::Rz, q);
    i.angle = theta;
    return i;
  }
  static Instruction cx(uint32_t c, uint32_t t) { return {OpKind::CX, {c, t}}; }
  static Instruction cz(uint32_t a, uint32_t b) { return {OpKind::CZ, {a, b}}; }
  static Instruction swap(uint32_t a, uint32_t b) { return {OpKind::Swap, {a, b}}; }
  static Instruction pauli_rot(PauliRotation r, std::vector<uint32_t> support) {
    Instruction i{OpKind::PauliRot, std::move(support)};
    i.pauli = r.pauli;
    i.angle = r.angle;
    return i;
  }
  static Instruction measure(uint32_t q, uint32_t c, MeasBasis b = MeasBasis::Z) {
    Instruction i = gate1(OpKind::Measure, q);
    i.cbit = c;
    i.basis = b;
    return i;
  }
  static Instruction reset(uint32_t q) { return gate1(OpKind::Reset, q); }
  static Instruction cond_pauli(char pauli, ParityExpr e, uint32_t q) {
    Instruction i = gate1(OpKind::CondPauli, q);
    i.pauli_kind = pauli;
    i.expr = std::move(e);
    return i;
  }
  static Instruction cond_sign_rot(char axis, double theta, ParityExpr e, uint32_t q) {
    Instruction i = gate1(OpKind::CondSignRot, q);
    i.rot_axis = axis;
    i.angle = theta;
    i.expr = std::move(e);
    return i;
  }
  static Instruction barrier(std::vector<uint32_t> qubits) {
    return {OpKind::Barrier, std::move(qubits)};
  }

  bool is_gate2q() const {
    return op == OpKind::CX || op == OpKind::CZ || op == OpKind::Swap;
  }
  bool is_static_gate() const {
    switch (op) {
      case OpKind::Measure:
      case OpKind::Reset:
      case OpKind::CondPauli:
      case OpKind::CondSignRot:
      case OpKind::Barrier:
        return false;
      default:
        return true;
    }
  }
};

struct Metrics {
  uint32_t depth = 0;
  uint32_t cx_count = 0;
  uint32_t qubit_count = 0;
  uint32_t measure_count = 0;
};

/// Gate list over qubits and classical bits, plus a post-processing Pauli
/// frame holding corrections deferred past the end of the circuit.
struct Circuit {
  uint32_t n_qubits = 0;
  uint32_t n_cbits = 0;
  std::vector<Instruction> instructions;
  PauliFrame postprocessing;
  std::string name;
  std::vector<std::string> provenance;

  Circuit() = default;
  Circuit(uint32_t nq, uint32_t nc) : n_qubits(nq), n_cbits(nc) {}

  void add(Instruction i) { instructions.push_back(std::move(i)); }

  /// Throws on out-of-range indices, repeated 2q operands, or a classical bit
  /// read before any measurement writes it.
  void validate() const {
    std::vector<uint8_t> written(n_cbits, 0);
    for (size_t idx = 0; idx < instructions.size(); ++idx) {
      const Instruction& in = instructions[idx];
      for (uint32_t q : in.qubits)
        if (q >= n_qubits)
          throw std::invalid_argument("instruction " + std::to_string(idx) +
                                      ": qubit index out of range");
      if (in.is_gate2q() && in.qubits[0] == in.qubits[1])
        throw std::invalid_argument("instruction " + std::to_string(idx) +
                                    ": identical qubits");
      if (in.op == OpKind::Measure) {
        if (in.cbit >= n_cbits)
          throw std::invalid_argument("instruction " + std::to_string(idx) +
                                      ": cbit index out of range");
        written[in.cbit] = 1;
      }
      if (in.op == OpKind::CondPauli || in.op == OpKind::CondSignRot) {
        for (uint32_t b : in.expr.bits())
          if (b >= n_cbits || !written[b])
            throw std::invalid_argument("instruction " + std::to_string(idx) +
                                        ": cbit used before measurement");
      }
      if (in.op == OpKind::PauliRot && in.pauli.num_qubits() != in.qubits.size())
        throw std::invalid_argument("instruction " + std::to_string(idx) +
                                    ": paulirot operand count mismatch");
    }
    for (const auto& [expr, pauli] : postprocessing.terms) {
      if (pauli.num_qubits() != n_qubits)
        throw std::invalid_argument("postprocessing Pauli width mismatch");
      for (uint32_t b : expr.bits())
        if (b >= n_cbits || !written[b])
          throw std::invalid_argument("postprocessing uses unwritten cbit");
    }
  }

  /// ASAP layer count. Every non-barrier instruction occupies one layer on
  /// its qubits; classical fan-out is free (feed-forward latency 0); barriers
  /// force a layer boundary across their qubit set.
  uint32_t depth() const {
    std::vector<uint32_t> clock(n_qubits, 0);
    uint32_t total = 0;
    for (const Instruction& in : instructions) {
      if (in.op == OpKind::Barrier) {
        uint32_t m = 0;
        const auto& qs = in.qubits;
        if (qs.empty()) {
          for (uint32_t q = 0; q < n_qubits; ++q) m = std::max(m, clock[q]);
          for (uint32_t q = 0; q < n_qubits; ++q) clock[q] = m;
        } else {
          for (uint32_t q : qs) m = std::max(m, clock[q]);
          for (uint32_t q : qs) clock[q] = m;
        }
        continue;
      }
      uint32_t layer = 0;
      for (uint32_t q : in.qubits) layer = std::max(layer, clock[q]);
      ++layer;
      for (uint32_t q : in.qubits) clock[q] = layer;
      total = std::max(total, layer);
    }
    return total;
  }

  /// CX-equivalent two-qubit gate count: CX and CZ count 1, SWAP counts 3.
  uint32_t cx_count() const {
    uint32_t c = 0;
    for (const Instruction& in : instructions) {
      if (in.op == OpKind::CX || in.op == OpKind::CZ) ++c;
      if (in.op == OpKind::Swap) c += 3;
    }
    return c;
  }

  uint32_t measure_count() const {
    uint32_t c = 0;
    for (const Instruction& in : instructions)
      if (in.op == OpKind::Measure) ++c;
    return c;
  }

  Metrics metrics() const { return {depth(), cx_count(), n_qubits, measure_count()}; }

  /// Qubits touched by at least one instruction.
  std::vector<uint32_t> touched_qubits() const {
    std::vector<uint8_t> seen(n_qubits, 0);
    for (const Instruction& in : instructions)
      if (in.op != OpKind::Barrier)
        for (uint32_t q : in.qubits) seen[q] = 1;
    std::vector<uint32_t> out;
    for (uint32_t q = 0; q < n_qubits; ++q)
      if (seen[q]) out.push_back(q);
    return out;
  }

  Circuit& append(const Circuit& other) {
    if (other.n_qubits > n_qubits || other.n_cbits > n_cbits)
      throw std::invalid_argument("appended circuit does not fit");
    for (const auto& in : other.instructions) instructions.push_back(in);
    return *this;
  }
};

struct LayoutViolation {
  size_t instruction_index;
  uint32_t qubit_a;
  uint32_t qubit_b;
};

/// Placement of logical qubits on a rows x cols grid.
struct GridLayout {
  uint32_t rows = 0;
  uint32_t cols = 0;
  // placement[q] = (row, col); all qubits of a checked circuit must be placed.
  std::vector<std::pair<uint32_t, uint32_t>> placement;

  GridLayout() = default;
  GridLayout(uint32_t r, uint32_t c) : rows(r), cols(c) {}

  static GridLayout line(uint32_t n) {
    GridLayout g(n, 1);
    for (uint32_t q = 0; q < n; ++q) g.placement.emplace_back(q, 0);
    return g;
  }

  /// Column-major layout: qubit q at (q % rows, q / rows).
  static GridLayout column_major(uint32_t rows, uint32_t cols, uint32_t n) {
    GridLayout g(rows, cols);
    for (uint32_t q = 0; q < n; ++q) g.placement.emplace_back(q % rows, q / rows);
    return g;
  }

  /// Row-major layout: qubit q at (q / cols, q % cols).
  static GridLayout row_major(uint32_t rows, uint32_t cols, uint32_t n) {
    GridLayout g(rows, cols);
    for (uint32_t q = 0; q < n; ++q) g.placement.emplace_back(q / cols, q % cols);
    return g;
  }

  bool adjacent(uint32_t qa, uint32_t qb) const {
    auto [ra, ca] = placement[qa];
    auto [rb, cb] = placement[qb];
    uint32_t dist = static_cast<uint32_t>(std::abs(int64_t(ra) - int64_t(rb)) +
                                          std::abs(int64_t(ca) - int64_t(cb)));
    return dist == 1;
  }
};

/// Empty iff every two-qubit instruction joins Manhattan-distance-1 qubits.
inline std::vector<LayoutViolation> check_layout(const Circuit& c, const GridLayout& g) {
  for (uint32_t q = 0; q < c.n_qubits; ++q)
    if (q >= g.placement.size()) throw std::invalid_argument("unplaced qubit");
  std::vector<LayoutViolation> violations;
  for (size_t i = 0; i < c.instructions.size(); ++i) {
    const Instruction& in = c.instructions[i];
    if (!in.is_gate2q()) continue;
    if (!g.adjacent(in.qubits[0], in.qubits[1]))
      violations.push_back({i, in.qubits[0], in.qubits[1]});
  }
  return violations;
}

}  // namespace qdc
