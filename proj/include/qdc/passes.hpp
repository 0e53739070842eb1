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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qdc/circuit.hpp"
#include "qdc/pauli.hpp"
#include "qdc/tableau.hpp"

namespace qdc {

/// A maximal run of Clifford gates between non-Clifford phasors.
struct CliffordSection {
  std::vector<CliffordGate> gates;
  CliffordTableau tableau;
};

/// Alternating decomposition C_1, P_1, C_2, P_2, ..., C_{m+1}: replaying
/// sections[0], phasors[0], sections[1], ... reproduces the source circuit's
/// unitary up to global phase. sections.size() == phasors.size() + 1; empty
/// Clifford sections are explicit identity tableaux.
struct SectionedCircuit {
  uint32_t n_qubits = 0;
  std::vector<CliffordSection> sections;
  std::vector<PauliRotation> phasors;  // full-width Paulis, non-Clifford angles
};

/// All Cliffords pushed to the end: unitary(tail_clifford) * P'_m ... P'_1
/// equals the source unitary up to global phase (phasors listed in time
/// order, phasors[0] applied first).
struct PushedCircuit {
  uint32_t n_qubits = 0;
  std::vector<PauliRotation> phasors;
  CliffordTableau tail_clifford;
};

namespace detail {

/// Gates for rz(k*pi/2) up to global phase: S^k.
inline void append_rz_quarter_turns(std::vector<CliffordGate>& gates, int k, uint32_t q) {
  switch (((k % 4) + 4) % 4) {
    case 0: break;
    case 1: gates.push_back(CliffordGate::s(q)); break;
    case 2: gates.push_back(CliffordGate::z(q)); break;
    case 3: gates.push_back(CliffordGate::sdg(q)); break;
  }
}

inline int quarter_turns(double angle) {
  return static_cast<int>(std::llround(angle / (std::numbers::pi / 2.0))) % 4;
}

/// Basis-change gates V with V P V^dagger = Z for a single-qubit letter.
/// Emitted in circuit order.
inline void append_basis_rotation(std::vector<CliffordGate>& gates, char letter, uint32_t q) {
  switch (letter) {
    case 'Z': break;
    case 'X': gates.push_back(CliffordGate::h(q)); break;
    case 'Y':
      gates.push_back(CliffordGate::sdg(q));
      gates.push_back(CliffordGate::h(q));
      break;
    default: throw std::invalid_argument("identity letter has no basis rotation");
  }
}

inline void append_basis_rotation_inverse(std::vector<CliffordGate>& gates, char letter,
                                          uint32_t q) {
  switch (letter) {
    case 'Z': break;
    case 'X': gates.push_back(CliffordGate::h(q)); break;
    case 'Y':
      gates.push_back(CliffordGate::h(q));
      gates.push_back(CliffordGate::s(q));
      break;
    default: throw std::invalid_argument("identity letter has no basis rotation");
  }
}

/// Clifford gate realization of exp(-i (k*pi/2)/2 * P) up to global phase:
/// basis-rotate the support to Z, CX-ladder onto the last support qubit,
/// apply S^(+/-k), mirror.
inline void append_clifford_pauli_rotation(std::vector<CliffordGate>& gates,
                                           const PauliString& full, double angle) {
  auto support = full.support();
  int k = quarter_turns(angle);
  if (full.phase_exp() == 2) k = -k;  // sign folded into the angle
  if (support.empty() || k % 4 == 0) return;  // global phase only
  for (uint32_t q : support) append_basis_rotation(gates, full.letter(q), q);
  for (size_t i = 0; i + 1 < support.size(); ++i)
    gates.push_back(CliffordGate::cx(support[i], support[i + 1]));
  append_rz_quarter_turns(gates, k, support.back());
  for (size_t i = support.size() - 1; i-- > 0;)
    gates.push_back(CliffordGate::cx(support[i], support[i + 1]));
  for (uint32_t q : support) append_basis_rotation_inverse(gates, full.letter(q), q);
}

}  // namespace detail

/// Splits a static circuit into Clifford sections and non-Clifford phasors.
/// Rotations with angle on the k*pi/2 grid are absorbed into Clifford
/// sections; Clifford gates co-scheduled with a phasor in the same ASAP
/// moment join the following section.
inline SectionedCircuit compile_sections(const Circuit& c, double tol = kAngleTol) {
  struct Item {
    uint32_t moment;
    bool clifford;
    size_t index;
  };
  std::vector<Item> items;
  std::vector<uint32_t> clock(c.n_qubits, 0);

  auto classify = [&](const Instruction& in) -> bool {
    switch (in.op) {
      case OpKind::H:
      case OpKind::S:
      case OpKind::Sdg:
      case OpKind::X:
      case OpKind::Y:
      case OpKind::Z:
      case OpKind::CX:
      case OpKind::CZ:
      case OpKind::Swap:
        return true;
      case OpKind::Phase:
      case OpKind::Rx:
      case OpKind::Rz:
      case OpKind::PauliRot:
        return is_clifford_angle(normalize_angle(in.angle), tol);
      default:
        throw std::invalid_argument("compile_sections: unsupported dynamic instruction");
    }
  };

  for (size_t i = 0; i < c.instructions.size(); ++i) {
    const Instruction& in = c.instructions[i];
    uint32_t layer = 0;
    for (uint32_t q : in.qubits) layer = std::max(layer, clock[q]);
    ++layer;
    for (uint32_t q : in.qubits) clock[q] = layer;
    items.push_back({layer, classify(in), i});
  }
  // Within a moment, phasors come first ("part of the Clifford section after
  // the Pauli-phasors in the same moment"); source order breaks ties.
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.moment != b.moment) return a.moment < b.moment;
    if (a.clifford != b.clifford) return !a.clifford;
    return a.index < b.index;
  });

  SectionedCircuit out;
  out.n_qubits = c.n_qubits;
  std::vector<CliffordGate> current;

  auto full_width_rotation = [&](const Instruction& in) -> PauliRotation {
    switch (in.op) {
      case OpKind::Rz:
        return {PauliString::single(c.n_qubits, in.qubits[0], 'Z'), normalize_angle(in.angle)};
      case OpKind::Rx:
        return {PauliString::single(c.n_qubits, in.qubits[0], 'X'), normalize_angle(in.angle)};
      case OpKind::Phase:
        // diag(1, e^{i t}) = e^{i t/2} Rz(t); global phase dropped.
        return {PauliString::single(c.n_qubits, in.qubits[0], 'Z'), normalize_angle(in.angle)};
      case OpKind::PauliRot: {
        PauliRotation r = PauliRotation(in.pauli, in.angle).normalized();
        return {r.pauli.embedded(c.n_qubits, in.qubits), normalize_angle(r.angle)};
      }
      default:
        throw std::logic_error("not a rotation");
    }
  };

  auto lower_clifford = [&](const Instruction& in) {
    switch (in.op) {
      case OpKind::H: current.push_back(CliffordGate::h(in.qubits[0])); break;
      case OpKind::S: current.push_back(CliffordGate::s(in.qubits[0])); break;
      case OpKind::Sdg: current.push_back(CliffordGate::sdg(in.qubits[0])); break;
      case OpKind::X: current.push_back(CliffordGate::x(in.qubits[0])); break;
      case OpKind::Y: current.push_back(CliffordGate::y(in.qubits[0])); break;
      case OpKind::Z: current.push_back(CliffordGate::z(in.qubits[0])); break;
      case OpKind::CX: current.push_back(CliffordGate::cx(in.qubits[0], in.qubits[1])); break;
      case OpKind::CZ: current.push_back(CliffordGate::cz(in.qubits[0], in.qubits[1])); break;
      case OpKind::Swap: current.push_back(CliffordGate::swap(in.qubits[0], in.qubits[1])); break;
      case OpKind::Rz:
        detail::append_rz_quarter_turns(current,
                                        detail::quarter_turns(normalize_angle(in.angle)),
                                        in.qubits[0]);
        break;
      case OpKind::Phase:
        detail::append_rz_quarter_turns(current,
                                        detail::quarter_turns(normalize_angle(in.angle)),
                                        in.qubits[0]);
        break;
      case OpKind::Rx: {
        int k = detail::quarter_turns(normalize_angle(in.angle));
        if (k % 4 != 0) {
          current.push_back(CliffordGate::h(in.qubits[0]));
          detail::append_rz_quarter_turns(current, k, in.qubits[0]);
          current.push_back(CliffordGate::h(in.qubits[0]));
        }
        break;
      }
      case OpKind::PauliRot: {
        PauliString full = in.pauli.embedded(c.n_qubits, in.qubits);
        detail::append_clifford_pauli_rotation(current, full, normalize_angle(in.angle));
        break;
      }
      default:
        throw std::logic_error("not a Clifford instruction");
    }
  };

  for (const Item& item : items) {
    const Instruction& in = c.instructions[item.index];
    if (item.clifford) {
      lower_clifford(in);
    } else {
      out.sections.push_back(
          {current, CliffordTableau::from_gates(current, c.n_qubits)});
      current.clear();
      out.phasors.push_back(full_width_rotation(in));
    }
  }
  out.sections.push_back({current, CliffordTableau::from_gates(current, c.n_qubits)});
  return out;
}

/// Treats an existing phasor sequence as its own sectioned form: Clifford
/// rotations become Clifford sections, the rest become phasors. Equivalent to
/// compile_sections on the expanded circuit.
inline SectionedCircuit skip_compile_for_phasor_input(const std::vector<PauliRotation>& phasors,
                                                      uint32_t n_qubits,
                                                      double tol = kAngleTol) {
  SectionedCircuit out;
  out.n_qubits = n_qubits;
  std::vector<CliffordGate> current;
  for (const PauliRotation& r : phasors) {
    if (r.pauli.num_qubits() != n_qubits)
      throw std::invalid_argument("phasor width mismatch");
    double angle = normalize_angle(r.normalized().angle);
    if (is_clifford_angle(angle, tol)) {
      PauliRotation nr = r.normalized();
      detail::append_clifford_pauli_rotation(current, nr.pauli, normalize_angle(nr.angle));
    } else {
      out.sections.push_back({current, CliffordTableau::from_gates(current, n_qubits)});
      current.clear();
      PauliRotation nr = r.normalized();
      nr.angle = normalize_angle(nr.angle);
      out.phasors.push_back(nr);
    }
  }
  out.sections.push_back({current, CliffordTableau::from_gates(current, n_qubits)});
  return out;
}

/// Pushes every Clifford section past its subsequent phasors:
/// P'_j = D_j^dagger P_j D_j with D_j = C_j ... C_1, and the tail Clifford is
/// the composition of all sections.
inline PushedCircuit push_cliffords(const SectionedCircuit& s) {
  PushedCircuit out;
  out.n_qubits = s.n_qubits;
  CliffordTableau cumulative = CliffordTableau::identity(s.n_qubits);
  for (size_t j = 0; j < s.phasors.size(); ++j) {
    cumulative = s.sections[j].tableau.compose(cumulative);
    out.phasors.push_back(cumulative.inverse().conjugate_rotation(s.phasors[j]));
  }
  cumulative = s.sections.back().tableau.compose(cumulative);
  out.tail_clifford = cumulative;
  return out;
}

/// Replays a sectioned circuit as a flat instruction list (for verification).
inline Circuit replay_sections(const SectionedCircuit& s) {
  Circuit c(s.n_qubits, 0);
  auto add_gates = [&](const std::vector<CliffordGate>& gates) {
    for (const CliffordGate& g : gates) {
      using K = CliffordGateKind;
      switch (g.kind) {
        case K::H: c.add(Instruction::h(g.q0)); break;
        case K::S: c.add(Instruction::s(g.q0)); break;
        case K::Sdg: c.add(Instruction::sdg(g.q0)); break;
        case K::X: c.add(Instruction::x(g.q0)); break;
        case K::Y: c.add(Instruction::y(g.q0)); break;
        case K::Z: c.add(Instruction::z(g.q0)); break;
        case K::CX: c.add(Instruction::cx(g.q0, g.q1)); break;
        case K::CZ: c.add(Instruction::cz(g.q0, g.q1)); break;
        case K::Swap: c.add(Instruction::swap(g.q0, g.q1)); break;
      }
    }
  };
  for (size_t j = 0; j < s.phasors.size(); ++j) {
    add_gates(s.sections[j].gates);
    std::vector<uint32_t> all(s.n_qubits);
    for (uint32_t q = 0; q < s.n_qubits; ++q) all[q] = q;
    c.add(Instruction::pauli_rot(s.phasors[j], all));
  }
  add_gates(s.sections.back().gates);
  return c;
}

}  // namespace qdc
