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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdc/pauli.hpp"

namespace qdc {

/// Clifford gates understood by the tableau layer.
enum class CliffordGateKind : uint8_t { H, S, Sdg, X, Y, Z, CX, CZ, Swap };

struct CliffordGate {
  CliffordGateKind kind;
  uint32_t q0 = 0;
  uint32_t q1 = 0;  // second operand for CX/CZ/Swap

  static CliffordGate h(uint32_t q) { return {CliffordGateKind::H, q, 0}; }
  static CliffordGate s(uint32_t q) { return {CliffordGateKind::S, q, 0}; }
  static CliffordGate sdg(uint32_t q) { return {CliffordGateKind::Sdg, q, 0}; }
  static CliffordGate x(uint32_t q) { return {CliffordGateKind::X, q, 0}; }
  static CliffordGate y(uint32_t q) { return {CliffordGateKind::Y, q, 0}; }
  static CliffordGate z(uint32_t q) { return {CliffordGateKind::Z, q, 0}; }
  static CliffordGate cx(uint32_t c, uint32_t t) { return {CliffordGateKind::CX, c, t}; }
  static CliffordGate cz(uint32_t a, uint32_t b) { return {CliffordGateKind::CZ, a, b}; }
  static CliffordGate swap(uint32_t a, uint32_t b) { return {CliffordGateKind::Swap, a, b}; }
};

/// In-place conjugation p -> g p g^dagger for a single Clifford gate.
inline void conjugate_by_gate(PauliString& p, const CliffordGate& g) {
  auto add2_if = [&p](bool cond) {
    if (cond) p.set_phase_exp(static_cast<uint8_t>(p.phase_exp() + 2));
  };
  switch (g.kind) {
    case CliffordGateKind::H: {
      bool x = p.x_bit(g.q0), z = p.z_bit(g.q0);
      add2_if(x && z);
      p.set_x_bit(g.q0, z);
      p.set_z_bit(g.q0, x);
      break;
    }
    case CliffordGateKind::S: {
      bool x = p.x_bit(g.q0), z = p.z_bit(g.q0);
      add2_if(x && z);
      p.set_z_bit(g.q0, z ^ x);
      break;
    }
    case CliffordGateKind::Sdg: {
      bool x = p.x_bit(g.q0), z = p.z_bit(g.q0);
      add2_if(x && !z);
      p.set_z_bit(g.q0, z ^ x);
      break;
    }
    case CliffordGateKind::X:
      add2_if(p.z_bit(g.q0));
      break;
    case CliffordGateKind::Y:
      add2_if(p.x_bit(g.q0) != p.z_bit(g.q0));
      break;
    case CliffordGateKind::Z:
      add2_if(p.x_bit(g.q0));
      break;
    case CliffordGateKind::CX: {
      bool xc = p.x_bit(g.q0), zc = p.z_bit(g.q0);
      bool xt = p.x_bit(g.q1), zt = p.z_bit(g.q1);
      add2_if(xc && zt && (xt == zc));
      p.set_x_bit(g.q1, xt ^ xc);
      p.set_z_bit(g.q0, zc ^ zt);
      break;
    }
    case CliffordGateKind::CZ: {
      bool xa = p.x_bit(g.q0), za = p.z_bit(g.q0);
      bool xb = p.x_bit(g.q1), zb = p.z_bit(g.q1);
      add2_if(xa && xb && (za != zb));
      p.set_z_bit(g.q0, za ^ xb);
      p.set_z_bit(g.q1, zb ^ xa);
      break;
    }
    case CliffordGateKind::Swap: {
      bool xa = p.x_bit(g.q0), za = p.z_bit(g.q0);
      bool xb = p.x_bit(g.q1), zb = p.z_bit(g.q1);
      p.set_x_bit(g.q0, xb);
      p.set_z_bit(g.q0, zb);
      p.set_x_bit(g.q1, xa);
      p.set_z_bit(g.q1, za);
      break;
    }
  }
}

/// Symplectic representation of a Clifford unitary: the images of the
/// generators X_0..X_{n-1}, Z_0..Z_{n-1} under conjugation U g U^dagger.
class CliffordTableau {
 public:
  CliffordTableau() = default;

  explicit CliffordTableau(uint32_t n) : n_(n) {
    rows_.reserve(2 * static_cast<size_t>(n));
    for (uint32_t q = 0; q < n; ++q) rows_.push_back(PauliString::single(n, q, 'X'));
    for (uint32_t q = 0; q < n; ++q) rows_.push_back(PauliString::single(n, q, 'Z'));
  }

  static CliffordTableau identity(uint32_t n) { return CliffordTableau(n); }

  uint32_t num_qubits() const { return n_; }

  const PauliString& x_image(uint32_t q) const { return rows_[q]; }
  const PauliString& z_image(uint32_t q) const { return rows_[n_ + q]; }
  PauliString& x_image(uint32_t q) { return rows_[q]; }
  PauliString& z_image(uint32_t q) { return rows_[n_ + q]; }

  /// Left-multiplies this tableau by a single gate: U <- g * U.
  void prepend_gate(const CliffordGate& g) {
    for (auto& row : rows_) conjugate_by_gate(row, g);
  }

  /// Tableau of the ordered gate list (first element applied first).
  static CliffordTableau from_gates(const std::vector<CliffordGate>& gates, uint32_t n) {
    CliffordTableau t(n);
    for (const auto& g : gates) t.prepend_gate(g);
    return t;
  }

  /// Returns U p U^dagger.
  PauliString conjugate(const PauliString& p) const {
    if (p.num_qubits() != n_) throw std::invalid_argument("tableau/Pauli length mismatch");
    PauliString acc = PauliString::identity(n_);
    acc.set_phase_exp(p.xz_phase_exp());
    for (uint32_t q = 0; q < n_; ++q) {
      if (p.x_bit(q)) acc *= rows_[q];
      if (p.z_bit(q)) acc *= rows_[n_ + q];
    }
    return acc;
  }

  /// Conjugates a rotation, folding any -1 sign into the angle.
  PauliRotation conjugate_rotation(const PauliRotation& r) const {
    PauliRotation out;
    out.pauli = conjugate(r.pauli);
    out.angle = r.angle;
    return out.normalized();
  }

  /// Tableau of the product U_this * U_other (other applied first).
  CliffordTableau compose(const CliffordTableau& other) const {
    if (n_ != other.n_) throw std::invalid_argument("tableau size mismatch");
    CliffordTableau r(n_);
    for (size_t i = 0; i < rows_.size(); ++i) r.rows_[i] = conjugate(other.rows_[i]);
    return r;
  }

  /// Tableau of U^dagger.
  CliffordTableau inverse() const {
    // Invert the 2n x 2n bit matrix over GF(2), then fix row signs so that
    // conjugating each tentative row through this tableau lands exactly on
    // the corresponding generator.
    uint32_t m = 2 * n_;
    std::vector<std::vector<uint8_t>> a(m, std::vector<uint8_t>(2 * m, 0));
    for (uint32_t col = 0; col < m; ++col) {
      // Column col holds the bit image of generator col.
      const PauliString& img = rows_[col];
      for (uint32_t q = 0; q < n_; ++q) {
        a[q][col] = img.x_bit(q);
        a[n_ + q][col] = img.z_bit(q);
      }
    }
    for (uint32_t i = 0; i < m; ++i) a[i][m + i] = 1;
    // Gauss-Jordan.
    uint32_t row = 0;
    for (uint32_t col = 0; col < m && row < m; ++col) {
      uint32_t piv = row;
      while (piv < m && !a[piv][col]) ++piv;
      if (piv == m) continue;
      std::swap(a[piv], a[row]);
      for (uint32_t r2 = 0; r2 < m; ++r2) {
        if (r2 != row && a[r2][col])
          for (uint32_t c2 = col; c2 < 2 * m; ++c2) a[r2][c2] ^= a[row][c2];
      }
      ++row;
    }
    if (row != m) throw std::logic_error("tableau not invertible (corrupt tableau)");

    CliffordTableau inv(n_);
    for (uint32_t g = 0; g < m; ++g) {
      PauliString tentative(n_);
      for (uint32_t q = 0; q < n_; ++q) {
        tentative.set_x_bit(q, a[q][m + g]);
        tentative.set_z_bit(q, a[n_ + q][m + g]);
      }
      PauliString check = conjugate(tentative);
      if (check.phase_exp() == 2) tentative.set_phase_exp(2);
      inv.rows_[g] = tentative;
    }
    return inv;
  }

  bool operator==(const CliffordTableau& other) const {
    return n_ == other.n_ && rows_ == other.rows_;
  }
  bool operator!=(const CliffordTableau& other) const { return !(*this == other); }

  /// Checks the symplectic condition on the stored images.
  bool is_valid() const {
    for (uint32_t i = 0; i < n_; ++i) {
      if (!x_image(i).is_hermitian() || !z_image(i).is_hermitian()) return false;
      if (x_image(i).commutes(z_image(i))) return false;
      for (uint32_t j = i + 1; j < n_; ++j) {
        if (!x_image(i).commutes(x_image(j))) return false;
        if (!z_image(i).commutes(z_image(j))) return false;
        if (!x_image(i).commutes(z_image(j))) return false;
        if (!z_image(i).commutes(x_image(j))) return false;
      }
    }
    return true;
  }

 private:
  uint32_t n_ = 0;
  std::vector<PauliString> rows_;  // X_0..X_{n-1}, Z_0..Z_{n-1} images
};

}  // namespace qdc
