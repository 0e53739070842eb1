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

#include <catch2/catch_amalgamated.hpp>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "qdc/passes.hpp"
#include "qdc/sim.hpp"

using namespace qdc;
constexpr double pi = std::numbers::pi;

namespace {

/// Circuit realization of a PushedCircuit for verification: phasors in time
/// order, then the original sections' gates (whose product is the tail).
Circuit replay_pushed(const PushedCircuit& p, const SectionedCircuit& s) {
  Circuit c(p.n_qubits, 0);
  std::vector<uint32_t> all(p.n_qubits);
  for (uint32_t q = 0; q < p.n_qubits; ++q) all[q] = q;
  for (const auto& r : p.phasors) c.add(Instruction::pauli_rot(r, all));
  for (const auto& sec : s.sections)
    for (const auto& g : sec.gates) {
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
  return c;
}

double unitary_gap(const Circuit& a, const Circuit& b) {
  auto ua = sim::unitary_of(a);
  auto ub = sim::unitary_of(b);
  return sim::unitary_distance(ua, ub);
}

Circuit random_static_circuit(std::mt19937_64& rng, uint32_t n, uint32_t len,
                              int clifford_pct) {
  Circuit c(n, 0);
  auto q = [&] { return static_cast<uint32_t>(rng() % n); };
  for (uint32_t i = 0; i < len; ++i) {
    bool clifford = static_cast<int>(rng() % 100) < clifford_pct;
    switch (rng() % 5) {
      case 0: c.add(Instruction::h(q())); break;
      case 1: {
        if (n < 2) { c.add(Instruction::s(q())); break; }
        uint32_t a = q(), b = q();
        if (a == b) b = (b + 1) % n;
        c.add(rng() & 1 ? Instruction::cx(a, b) : Instruction::cz(a, b));
        break;
      }
      case 2: {
        double theta = clifford ? (rng() % 4) * pi / 2 : 0.1 + (rng() % 900) / 1000.0;
        c.add(Instruction::rz(theta, q()));
        break;
      }
      case 3: {
        double theta = clifford ? (rng() % 4) * pi / 2 : 0.1 + (rng() % 900) / 1000.0;
        c.add(Instruction::rx(theta, q()));
        break;
      }
      default: {
        uint32_t w = 1 + rng() % n;
        std::vector<uint32_t> qs;
        for (uint32_t k = 0; k < n && qs.size() < w; ++k) qs.push_back(k);
        PauliString p(static_cast<uint32_t>(qs.size()));
        const char letters[3] = {'X', 'Y', 'Z'};
        for (uint32_t k = 0; k < qs.size(); ++k) p.set_letter(k, letters[rng() % 3]);
        double theta = clifford ? (rng() % 4) * pi / 2 : 0.1 + (rng() % 900) / 1000.0;
        c.add(Instruction::pauli_rot(PauliRotation(p, theta), qs));
        break;
      }
    }
  }
  return c;
}

}  // namespace

TEST_CASE("compile_sections on the named examples") {
  {
    Circuit c(1, 0);
    c.add(Instruction::rz(pi / 2, 0));
    auto s = compile_sections(c);
    CHECK(s.phasors.empty());
    REQUIRE(s.sections.size() == 1);
    CHECK(s.sections[0].gates.size() == 1);  // S
  }
  {
    Circuit c(1, 0);
    c.add(Instruction::rz(0.3, 0));
    auto s = compile_sections(c);
    REQUIRE(s.phasors.size() == 1);
    REQUIRE(s.sections.size() == 2);
    CHECK(s.sections[0].gates.empty());
    CHECK(s.sections[1].gates.empty());  // trailing empty section
    CHECK(s.phasors[0].pauli == PauliString::parse("Z"));
  }
  {
    Circuit c(2, 0);
    c.add(Instruction::h(0));
    c.add(Instruction::rz(0.3, 0));
    c.add(Instruction::cx(0, 1));
    auto s = compile_sections(c);
    REQUIRE(s.phasors.size() == 1);
    REQUIRE(s.sections.size() == 2);
    REQUIRE(s.sections[0].gates.size() == 1);
    CHECK(s.sections[0].gates[0].kind == CliffordGateKind::H);
    REQUIRE(s.sections[1].gates.size() == 1);
    CHECK(s.sections[1].gates[0].kind == CliffordGateKind::CX);
  }
}

TEST_CASE("Cliffords sharing a moment with a phasor move to the next section") {
  Circuit c(2, 0);
  c.add(Instruction::rz(0.3, 0));
  c.add(Instruction::h(1));  // same ASAP moment as the phasor
  auto s = compile_sections(c);
  REQUIRE(s.phasors.size() == 1);
  CHECK(s.sections[0].gates.empty());
  REQUIRE(s.sections[1].gates.size() == 1);
  CHECK(s.sections[1].gates[0].kind == CliffordGateKind::H);
}

TEST_CASE("compile_sections rejects dynamic instructions") {
  Circuit c(1, 1);
  c.add(Instruction::measure(0, 0));
  CHECK_THROWS_AS(compile_sections(c), std::invalid_argument);
}

TEST_CASE("sectioning preserves the unitary") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    uint32_t n = 1 + rng() % 4;
    Circuit c = random_static_circuit(rng, n, 1 + rng() % 15, 50);
    auto s = compile_sections(c);
    CHECK(unitary_gap(replay_sections(s), c) < 1e-9);
  }
}

TEST_CASE("push on the named examples") {
  {
    Circuit c(1, 0);
    c.add(Instruction::h(0));
    c.add(Instruction::rz(0.4, 0));
    auto pushed = push_cliffords(compile_sections(c));
    REQUIRE(pushed.phasors.size() == 1);
    CHECK(pushed.phasors[0].pauli == PauliString::parse("X"));
    CHECK(pushed.phasors[0].angle == Catch::Approx(0.4));
    CHECK(pushed.tail_clifford ==
          CliffordTableau::from_gates({CliffordGate::h(0)}, 1));
  }
  {
    // No Clifford gates: phasors unchanged, identity tail.
    Circuit c(2, 0);
    c.add(Instruction::rz(0.4, 0));
    c.add(Instruction::rx(1.2, 1));
    auto s = compile_sections(c);
    auto pushed = push_cliffords(s);
    REQUIRE(pushed.phasors.size() == 2);
    CHECK(pushed.tail_clifford == CliffordTableau::identity(2));
    CHECK(pushed.phasors[0].pauli == s.phasors[0].pauli);
    CHECK(pushed.phasors[1].pauli == s.phasors[1].pauli);
  }
}

TEST_CASE("push matches the simulator on a random 3-qubit instance") {
  std::mt19937_64 rng(43);
  Circuit c = random_static_circuit(rng, 3, 12, 40);
  auto s = compile_sections(c);
  auto pushed = push_cliffords(s);
  CHECK(unitary_gap(replay_pushed(pushed, s), c) < 1e-9);
}

TEST_CASE("push correctness over random circuits at mixed Clifford levels") {
  std::mt19937_64 rng(47);
  for (int pct : {25, 50, 75}) {
    for (int trial = 0; trial < 12; ++trial) {
      uint32_t n = 1 + rng() % 4;
      Circuit c = random_static_circuit(rng, n, 5 + rng() % 21, pct);
      auto s = compile_sections(c);
      auto pushed = push_cliffords(s);
      CHECK(unitary_gap(replay_pushed(pushed, s), c) < 1e-9);
      // Pushing never creates or destroys non-Cliffords.
      CHECK(pushed.phasors.size() == s.phasors.size());
      for (const auto& r : pushed.phasors) {
        CHECK_FALSE(is_clifford(r));
        CHECK(r.pauli.weight() <= n);
      }
    }
  }
}

TEST_CASE("skip_compile on phasor inputs") {
  {
    // Z^{1/2}: alpha = 1/2 -> angle pi/2, Clifford only.
    std::vector<PauliRotation> in = {{PauliString::parse("Z"), pi / 2}};
    auto s = skip_compile_for_phasor_input(in, 1);
    CHECK(s.phasors.empty());
    CHECK(s.sections.size() == 1);
  }
  {
    // XX^{0.37}: non-Clifford.
    std::vector<PauliRotation> in = {{PauliString::parse("XX"), 0.37 * pi}};
    auto s = skip_compile_for_phasor_input(in, 2);
    CHECK(s.phasors.size() == 1);
  }
  {
    // Mixed list: section count equals non-Clifford count + 1.
    std::mt19937_64 rng(53);
    std::vector<PauliRotation> in;
    uint32_t n = 3;
    uint32_t non_clifford = 0;
    for (int i = 0; i < 10; ++i) {
      PauliString p = oracle::random_pauli(rng, n, false);
      double theta;
      if (i % 2 == 0) {
        theta = (rng() % 4) * pi / 2;
      } else {
        theta = 0.1 + (rng() % 900) / 1000.0;
        ++non_clifford;
      }
      in.emplace_back(p, theta);
    }
    auto s = skip_compile_for_phasor_input(in, n);
    CHECK(s.phasors.size() == non_clifford);
    CHECK(s.sections.size() == non_clifford + 1);

    // Same result as compiling the expanded circuit.
    Circuit c(n, 0);
    std::vector<uint32_t> all = {0, 1, 2};
    for (const auto& r : in) c.add(Instruction::pauli_rot(r, all));
    CHECK(unitary_gap(replay_sections(s), c) < 1e-9);
  }
}
