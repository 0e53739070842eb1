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
#include "qdc/tableau.hpp"

using qdc::CliffordGate;
using qdc::CliffordTableau;
using qdc::PauliRotation;
using qdc::PauliString;

namespace {

CliffordTableau tableau_of(std::vector<CliffordGate> gates, uint32_t n) {
  return CliffordTableau::from_gates(gates, n);
}

}  // namespace

TEST_CASE("named conjugation examples") {
  CliffordTableau h = tableau_of({CliffordGate::h(0)}, 1);
  CHECK(h.conjugate(PauliString::parse("Z")) == PauliString::parse("X"));

  CliffordTableau s = tableau_of({CliffordGate::s(0)}, 1);
  CHECK(s.conjugate(PauliString::parse("X")) == PauliString::parse("Y"));

  CliffordTableau cx = tableau_of({CliffordGate::cx(0, 1)}, 2);
  CHECK(cx.conjugate(PauliString::parse("XI")) == PauliString::parse("XX"));
}

TEST_CASE("tableau_from_gates examples") {
  CHECK(tableau_of({}, 2) == CliffordTableau::identity(2));
  CHECK(tableau_of({CliffordGate::h(0), CliffordGate::h(0)}, 1) == CliffordTableau::identity(1));
  CliffordTableau t = tableau_of({CliffordGate::h(0), CliffordGate::cx(0, 1)}, 2);
  CHECK(t.conjugate(PauliString::parse("ZI")) == PauliString::parse("XX"));
}

TEST_CASE("conjugate_rotation examples") {
  CliffordTableau h = tableau_of({CliffordGate::h(0)}, 1);
  PauliRotation rz(PauliString::parse("Z"), 0.3);
  PauliRotation rx = h.conjugate_rotation(rz);
  CHECK(rx.pauli == PauliString::parse("X"));
  CHECK(rx.angle == Catch::Approx(0.3));

  CliffordTableau x = tableau_of({CliffordGate::x(0)}, 1);
  PauliRotation flipped = x.conjugate_rotation(rz);
  CHECK(flipped.pauli == PauliString::parse("Z"));
  CHECK(flipped.angle == Catch::Approx(-0.3));

  CliffordTableau id = CliffordTableau::identity(1);
  PauliRotation same = id.conjugate_rotation(rz);
  CHECK(same.pauli == rz.pauli);
  CHECK(same.angle == rz.angle);
}

TEST_CASE("conjugation matches the dense oracle, including phase") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 60; ++trial) {
    uint32_t n = 1 + rng() % 5;
    auto gates = oracle::random_clifford_gates(rng, n, 1 + rng() % 20);
    CliffordTableau t = tableau_of(gates, n);
    REQUIRE(t.is_valid());

    oracle::Mat c = oracle::clifford_circuit_matrix(gates, n);
    for (int k = 0; k < 4; ++k) {
      PauliString p = oracle::random_pauli(rng, n);
      PauliString img = t.conjugate(p);
      CHECK(img.is_hermitian());
      oracle::Mat expect =
          oracle::matmul(c, oracle::matmul(oracle::pauli_matrix(p), oracle::dagger(c)));
      CHECK(oracle::max_abs_diff(expect, oracle::pauli_matrix(img)) < 1e-9);
    }
  }
}

TEST_CASE("compose is conjugation composition") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    uint32_t n = 1 + rng() % 4;
    CliffordTableau t1 = tableau_of(oracle::random_clifford_gates(rng, n, 10), n);
    CliffordTableau t2 = tableau_of(oracle::random_clifford_gates(rng, n, 10), n);
    PauliString p = oracle::random_pauli(rng, n);
    CHECK(t1.compose(t2).conjugate(p) == t1.conjugate(t2.conjugate(p)));
  }
}

TEST_CASE("inverse composes to identity") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    uint32_t n = 1 + rng() % 5;
    CliffordTableau t = tableau_of(oracle::random_clifford_gates(rng, n, 15), n);
    CHECK(t.compose(t.inverse()) == CliffordTableau::identity(n));
    CHECK(t.inverse().compose(t) == CliffordTableau::identity(n));
  }
}

TEST_CASE("gate list order matches matrix order") {
  // First gate applied first: [H(0), S(0)] is the unitary S*H.
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    uint32_t n = 1 + rng() % 3;
    auto g1 = oracle::random_clifford_gates(rng, n, 6);
    auto g2 = oracle::random_clifford_gates(rng, n, 6);
    auto both = g1;
    both.insert(both.end(), g2.begin(), g2.end());
    CliffordTableau t = tableau_of(both, n);
    CliffordTableau composed = tableau_of(g2, n).compose(tableau_of(g1, n));
    CHECK(t == composed);
  }
}
