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
#include <string>
#include <utility>
#include <vector>

#include "qdc/pauli.hpp"
#include "qdc/tableau.hpp"

namespace qdc {

/// XOR of a set of classical bits plus an optional constant-1 term.
/// Text form: "c3^c7^1", "c0", "1", or "0" for the empty expression.
class ParityExpr {
 public:
  ParityExpr() = default;
  explicit ParityExpr(bool constant) : constant_(constant) {}

  static ParityExpr bit(uint32_t cbit) {
    ParityExpr e;
    e.bits_.push_back(cbit);
    return e;
  }
  static ParityExpr zero() { return ParityExpr(); }
  static ParityExpr one() { return ParityExpr(true); }

  const std::vector<uint32_t>& bits() const { return bits_; }
  bool constant() const { return constant_; }

  bool is_zero() const { return bits_.empty() && !constant_; }
  bool is_one() const { return bits_.empty() && constant_; }

  ParityExpr operator^(const ParityExpr& other) const {
    ParityExpr r;
    r.constant_ = constant_ != other.constant_;
    // Symmetric difference of two sorted bit lists.
    std::set_symmetric_difference(bits_.begin(), bits_.end(), other.bits_.begin(),
                                  other.bits_.end(), std::back_inserter(r.bits_));
    return r;
  }
  ParityExpr& operator^=(const ParityExpr& other) {
    *this = *this ^ other;
    return *this;
  }

  bool operator==(const ParityExpr& other) const {
    return constant_ == other.constant_ && bits_ == other.bits_;
  }
  bool operator!=(const ParityExpr& other) const { return !(*this == other); }

  /// Evaluates against a classical-bit assignment.
  bool eval(const std::vector<uint8_t>& cbits) const {
    bool v = constant_;
    for (uint32_t b : bits_) v ^= (b < cbits.size() && cbits[b]);
    return v;
  }

  std::string str() const {
    if (bits_.empty()) return constant_ ? "1" : "0";
    std::string s;
    for (size_t i = 0; i < bits_.size(); ++i) {
      if (i) s += '^';
      s += 'c' + std::to_string(bits_[i]);
    }
    if (constant_) s += "^1";
    return s;
  }

  static ParityExpr parse(const std::string& text) {
    ParityExpr e;
    size_t pos = 0;
    if (text == "0") return e;
    while (pos < text.size()) {
      size_t next = text.find('^', pos);
      std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
      if (tok == "1") {
        e.constant_ = !e.constant_;
      } else if (tok.size() >= 2 && tok[0] == 'c') {
        e ^= ParityExpr::bit(static_cast<uint32_t>(std::stoul(tok.substr(1))));
      } else {
        throw std::invalid_argument("bad parity term '" + tok + "'");
      }
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return e;
  }

 private:
  std::vector<uint32_t> bits_;  // sorted, unique
  bool constant_ = false;
};

/// Measurement-conditioned Pauli corrections deferred to a later circuit
/// position or to classical post-processing. Applying the frame for a fixed
/// classical assignment means applying the selected Paulis in list order
/// (first term first).
struct PauliFrame {
  std::vector<std::pair<ParityExpr, PauliString>> terms;
  // Count of -1 signs discarded while normalizing (branch global phases;
  // measurement statistics unaffected).
  uint32_t discarded_signs = 0;

  bool empty() const { return terms.empty(); }

  void add(ParityExpr expr, PauliString pauli) {
    if (expr.is_zero() || pauli.is_identity()) return;
    terms.emplace_back(std::move(expr), std::move(pauli));
  }

  /// Merges terms with identical Pauli letters by XORing their expressions,
  /// drops vanished terms, and normalizes -1 signs away (counted).
  void normalize() {
    std::vector<std::pair<ParityExpr, PauliString>> out;
    for (auto& [expr, pauli] : terms) {
      if (pauli.phase_exp() == 2) {
        pauli.set_phase_exp(0);
        ++discarded_signs;
      }
      if (expr.is_zero() || pauli.is_identity()) continue;
      bool merged = false;
      for (auto& [oexpr, opauli] : out) {
        if (opauli.same_letters(pauli)) {
          oexpr ^= expr;
          merged = true;
          break;
        }
      }
      if (!merged) out.emplace_back(std::move(expr), std::move(pauli));
    }
    std::erase_if(out, [](const auto& t) { return t.first.is_zero(); });
    terms = std::move(out);
  }

  /// Product of the selected Paulis for a classical assignment, in order.
  PauliString realize(const std::vector<uint8_t>& cbits, uint32_t n) const {
    PauliString p = PauliString::identity(n);
    for (const auto& [expr, pauli] : terms)
      if (expr.eval(cbits)) p = pauli * p;  // earlier terms applied first
    return p;
  }
};

/// Conjugates every frame term through a Clifford tableau. Any -1 signs are
/// normalized away and counted on the returned frame.
inline PauliFrame frame_conjugate(const PauliFrame& frame, const CliffordTableau& t) {
  PauliFrame out;
  out.discarded_signs = frame.discarded_signs;
  for (const auto& [expr, pauli] : frame.terms) {
    if (pauli.num_qubits() != t.num_qubits())
      throw std::invalid_argument("frame/tableau length mismatch");
    out.add(expr, t.conjugate(pauli));
  }
  out.normalize();
  return out;
}

}  // namespace qdc
