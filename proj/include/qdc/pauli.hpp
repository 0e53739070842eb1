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

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdc {

/// Angle tolerance used to classify rotations as Clifford (theta on the
/// k*pi/2 grid). Well above double-precision accumulation error and well
/// below pi/2.
inline constexpr double kAngleTol = 1e-9;

/// An n-qubit Pauli operator stored as X/Z bit rows plus a power of i.
///
/// The operator value is i^phase_exp * (sigma_0 x sigma_1 x ... x sigma_{n-1})
/// where sigma_j is I, X, Y or Z according to (x_bit, z_bit):
/// (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y. Qubit 0 is the leftmost letter in the
/// text form. Hermitian iff phase_exp is 0 or 2.
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(uint32_t n_qubits)
      : n_(n_qubits), x_(words(n_qubits), 0), z_(words(n_qubits), 0) {}

  static PauliString identity(uint32_t n) { return PauliString(n); }

  /// Single non-identity letter at `qubit` ('X', 'Y' or 'Z').
  static PauliString single(uint32_t n, uint32_t qubit, char letter) {
    PauliString p(n);
    p.set_letter(qubit, letter);
    return p;
  }

  uint32_t num_qubits() const { return n_; }
  uint8_t phase_exp() const { return phase_; }
  void set_phase_exp(uint8_t e) { phase_ = e & 3u; }

  bool x_bit(uint32_t q) const { return (x_[q >> 6] >> (q & 63)) & 1u; }
  bool z_bit(uint32_t q) const { return (z_[q >> 6] >> (q & 63)) & 1u; }

  void set_x_bit(uint32_t q, bool v) { set_bit(x_, q, v); }
  void set_z_bit(uint32_t q, bool v) { set_bit(z_, q, v); }

  /// Letter at qubit q as one of 'I','X','Y','Z' (sign excluded).
  char letter(uint32_t q) const {
    bool x = x_bit(q), z = z_bit(q);
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
  }

  void set_letter(uint32_t q, char letter) {
    switch (letter) {
      case 'I': set_x_bit(q, false); set_z_bit(q, false); break;
      case 'X': set_x_bit(q, true); set_z_bit(q, false); break;
      case 'Y': set_x_bit(q, true); set_z_bit(q, true); break;
      case 'Z': set_x_bit(q, false); set_z_bit(q, true); break;
      default: throw std::invalid_argument("bad Pauli letter");
    }
  }

  /// Number of qubits acted on non-trivially.
  uint32_t weight() const {
    uint32_t w = 0;
    for (size_t i = 0; i < x_.size(); ++i)
      w += static_cast<uint32_t>(std::popcount(x_[i] | z_[i]));
    return w;
  }

  uint32_t y_count() const {
    uint32_t w = 0;
    for (size_t i = 0; i < x_.size(); ++i)
      w += static_cast<uint32_t>(std::popcount(x_[i] & z_[i]));
    return w;
  }

  bool is_identity() const {
    for (size_t i = 0; i < x_.size(); ++i)
      if (x_[i] | z_[i]) return false;
    return true;
  }

  bool is_hermitian() const { return phase_ == 0 || phase_ == 2; }

  /// Phase exponent of the operator written in X^x Z^z form, i.e. the k of
  /// i^k * prod_j X_j^{x_j} Z_j^{z_j}. Differs from phase_exp by one i per Y.
  uint8_t xz_phase_exp() const {
    return static_cast<uint8_t>((phase_ + y_count()) & 3u);
  }

  bool commutes(const PauliString& other) const {
    check_same_n(other);
    uint64_t acc = 0;
    for (size_t i = 0; i < x_.size(); ++i)
      acc ^= (x_[i] & other.z_[i]) ^ (z_[i] & other.x_[i]);
    return std::popcount(acc) % 2 == 0;
  }

  /// Matrix product this * other, phase included.
  PauliString operator*(const PauliString& other) const {
    check_same_n(other);
    PauliString r(n_);
    uint32_t phase = phase_ + other.phase_;
    for (uint32_t q = 0; q < n_; ++q) {
      int a = (x_bit(q) ? 1 : 0) | (z_bit(q) ? 2 : 0);
      int b = (other.x_bit(q) ? 1 : 0) | (other.z_bit(q) ? 2 : 0);
      phase += kMulPhase[a][b];
    }
    for (size_t i = 0; i < x_.size(); ++i) {
      r.x_[i] = x_[i] ^ other.x_[i];
      r.z_[i] = z_[i] ^ other.z_[i];
    }
    r.phase_ = static_cast<uint8_t>(phase & 3u);
    return r;
  }

  PauliString& operator*=(const PauliString& other) {
    *this = *this * other;
    return *this;
  }

  bool operator==(const PauliString& other) const {
    return n_ == other.n_ && phase_ == other.phase_ && x_ == other.x_ &&
           z_ == other.z_;
  }
  bool operator!=(const PauliString& other) const { return !(*this == other); }

  /// Equal ignoring the phase exponent.
  bool same_letters(const PauliString& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }

  /// Text form: optional sign prefix ("+", "-", "+i", "-i") followed by n
  /// letters from {I,X,Y,Z}. Round-trips exactly.
  std::string str() const {
    static const char* kSign[4] = {"+", "+i", "-", "-i"};
    std::string s = kSign[phase_];
    for (uint32_t q = 0; q < n_; ++q) s += letter(q);
    return s;
  }

  static PauliString parse(const std::string& text) {
    size_t pos = 0;
    uint8_t phase = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      bool neg = text[pos] == '-';
      ++pos;
      bool imag = pos < text.size() && text[pos] == 'i';
      if (imag) ++pos;
      phase = static_cast<uint8_t>((neg ? 2 : 0) + (imag ? 1 : 0));
    }
    PauliString p(static_cast<uint32_t>(text.size() - pos));
    p.phase_ = phase;
    for (uint32_t q = 0; pos < text.size(); ++pos, ++q) p.set_letter(q, text[pos]);
    return p;
  }

  /// Restriction to the given qubits, in order. Phase carried over.
  PauliString restricted(const std::vector<uint32_t>& qubits) const {
    PauliString p(static_cast<uint32_t>(qubits.size()));
    p.phase_ = phase_;
    for (uint32_t i = 0; i < qubits.size(); ++i) p.set_letter(i, letter(qubits[i]));
    return p;
  }

  /// Embedding into a wider register, placing letter i on qubits[i].
  PauliString embedded(uint32_t n, const std::vector<uint32_t>& qubits) const {
    PauliString p(n);
    p.phase_ = phase_;
    for (uint32_t i = 0; i < qubits.size(); ++i) p.set_letter(qubits[i], letter(i));
    return p;
  }

  std::vector<uint32_t> support() const {
    std::vector<uint32_t> s;
    for (uint32_t q = 0; q < n_; ++q)
      if (x_bit(q) || z_bit(q)) s.push_back(q);
    return s;
  }

 private:
  static size_t words(uint32_t n) { return (static_cast<size_t>(n) + 63) / 64; }

  static void set_bit(std::vector<uint64_t>& v, uint32_t q, bool b) {
    uint64_t mask = uint64_t{1} << (q & 63);
    if (b)
      v[q >> 6] |= mask;
    else
      v[q >> 6] &= ~mask;
  }

  void check_same_n(const PauliString& other) const {
    if (n_ != other.n_) throw std::invalid_argument("Pauli length mismatch");
  }

  // Phase exponent of sigma_a * sigma_b, indexed by (x | z<<1):
  // 0=I, 1=X, 2=Z, 3=Y. E.g. X*Z = -iY -> 3, Z*X = iY -> 1.
  static constexpr uint8_t kMulPhase[4][4] = {
      {0, 0, 0, 0},
      {0, 0, 3, 1},
      {0, 1, 0, 3},
      {0, 3, 1, 0},
  };

  uint32_t n_ = 0;
  std::vector<uint64_t> x_, z_;
  uint8_t phase_ = 0;
};

/// A Pauli-phasor: exp(-i * angle/2 * pauli). The Pauli's phase exponent must
/// be 0 or 2 (a sign, so the exponent argument stays Hermitian).
struct PauliRotation {
  PauliString pauli;
  double angle = 0.0;

  PauliRotation() = default;
  PauliRotation(PauliString p, double theta) : pauli(std::move(p)), angle(theta) {
    if (!pauli.is_hermitian())
      throw std::invalid_argument("rotation Pauli must be Hermitian");
  }

  /// Folds a -1 sign on the Pauli into the angle, leaving phase_exp == 0.
  PauliRotation normalized() const {
    PauliRotation r = *this;
    if (r.pauli.phase_exp() == 2) {
      r.pauli.set_phase_exp(0);
      r.angle = -r.angle;
    }
    return r;
  }
};

/// Distance of `angle` from the nearest multiple of pi/2.
inline double clifford_angle_residue(double angle) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  double r = std::remainder(angle, half_pi);
  return std::abs(r);
}

inline bool is_clifford_angle(double angle, double tol = kAngleTol) {
  return clifford_angle_residue(angle) <= tol;
}

inline bool is_clifford(const PauliRotation& r, double tol = kAngleTol) {
  return is_clifford_angle(r.angle, tol);
}

/// Angle normalized into [0, 2*pi).
inline double normalize_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, two_pi);
  if (a < 0) a += two_pi;
  if (a >= two_pi) a -= two_pi;
  return a;
}

}  // namespace qdc
