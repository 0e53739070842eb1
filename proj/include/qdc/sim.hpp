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

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "qdc/circuit.hpp"

namespace qdc {

using cplx = std::complex<double>;
using StateVec = std::vector<cplx>;

/// Exact dense statevector simulation with measurement-branch enumeration.
/// Qubit q indexes bit q of the basis-state label (qubit 0 = least
/// significant bit).
namespace sim {

inline constexpr uint32_t kDefaultMaxQubits = 14;
inline constexpr double kBranchPruneProb = 1e-14;
inline constexpr double kDefaultTol = 1e-9;

inline StateVec zero_state(uint32_t n) {
  StateVec v(size_t{1} << n, cplx{0, 0});
  v[0] = 1.0;
  return v;
}

inline void apply_1q(StateVec& v, uint32_t q, const cplx m[2][2]) {
  size_t stride = size_t{1} << q;
  for (size_t base = 0; base < v.size(); base += 2 * stride)
    for (size_t i = base; i < base + stride; ++i) {
      cplx a = v[i], b = v[i + stride];
      v[i] = m[0][0] * a + m[0][1] * b;
      v[i + stride] = m[1][0] * a + m[1][1] * b;
    }
}

inline void apply_cx(StateVec& v, uint32_t c, uint32_t t) {
  size_t cm = size_t{1} << c, tm = size_t{1} << t;
  for (size_t i = 0; i < v.size(); ++i)
    if ((i & cm) && !(i & tm)) std::swap(v[i], v[i | tm]);
}

inline void apply_cz(StateVec& v, uint32_t a, uint32_t b) {
  size_t am = size_t{1} << a, bm = size_t{1} << b;
  for (size_t i = 0; i < v.size(); ++i)
    if ((i & am) && (i & bm)) v[i] = -v[i];
}

inline void apply_swap(StateVec& v, uint32_t a, uint32_t b) {
  size_t am = size_t{1} << a, bm = size_t{1} << b;
  for (size_t i = 0; i < v.size(); ++i) {
    bool ba = i & am, bb = i & bm;
    if (ba && !bb) std::swap(v[i], v[(i ^ am) | bm]);
  }
}

inline void apply_pauli(StateVec& v, const PauliString& p) {
  // i^phase * prod_j sigma_j applied basis-state-wise: X part permutes,
  // Z part contributes (-1)^(z&i), each Y contributes an extra phase.
  uint32_t n = p.num_qubits();
  size_t xmask = 0, zmask = 0;
  for (uint32_t q = 0; q < n; ++q) {
    if (p.x_bit(q)) xmask |= size_t{1} << q;
    if (p.z_bit(q)) zmask |= size_t{1} << q;
  }
  static const cplx kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  // sigma_j acting on |b_j>: X^x Z^z with an i per Y; on basis state |i>,
  // X^x Z^z|i> = (-1)^{popcount(z & i)} |i ^ x>.
  uint32_t global = p.xz_phase_exp();
  StateVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == cplx{0, 0}) continue;
    size_t j = i ^ xmask;
    uint32_t ph = (global + 2 * (std::popcount(i & zmask) & 1)) & 3;
    out[j] += kPhase[ph] * v[i];
  }
  v = std::move(out);
}

inline void apply_rotation_axis(StateVec& v, char axis, double theta, uint32_t q) {
  cplx c = std::cos(theta / 2), s = cplx{0, -1} * std::sin(theta / 2);
  if (axis == 'z') {
    cplx m[2][2] = {{std::exp(cplx{0, -theta / 2}), 0}, {0, std::exp(cplx{0, theta / 2})}};
    apply_1q(v, q, m);
  } else {
    cplx m[2][2] = {{c, s}, {s, c}};
    apply_1q(v, q, m);
  }
}

/// Applies exp(-i*angle/2 * P) on the embedded support.
inline void apply_pauli_rotation(StateVec& v, const PauliRotation& r,
                                 const std::vector<uint32_t>& support, uint32_t n) {
  PauliRotation nr = r.normalized();
  PauliString full = nr.pauli.embedded(n, support);
  // exp(-i t/2 P) = cos(t/2) I - i sin(t/2) P
  StateVec pv = v;
  apply_pauli(pv, full);
  double c = std::cos(nr.angle / 2), s = std::sin(nr.angle / 2);
  for (size_t i = 0; i < v.size(); ++i) v[i] = c * v[i] + cplx{0, -s} * pv[i];
}

inline void apply_static(StateVec& v, const Instruction& in) {
  static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (in.op) {
    case OpKind::H: {
      cplx m[2][2] = {{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
      apply_1q(v, in.qubits[0], m);
      break;
    }
    case OpKind::S: {
      cplx m[2][2] = {{1, 0}, {0, cplx{0, 1}}};
      apply_1q(v, in.qubits[0], m);
      break;
    }
    case OpKind::Sdg: {
      cplx m[2][2] = {{1, 0}, {0, cplx{0, -1}}};
      apply_1q(v, in.qubits[0], m);
      break;
    }
    case OpKind::X: {
      cplx m[2][2] = {{0, 1}, {1, 0}};
      apply_1q(v, in.qubits[0], m);
      break;
    }
    case OpKind::Y: {
      cplx m[2][2] = {{0, cplx{0, -1}}, {cplx{0, 1}, 0}};
      apply_1q(v, in.qubits[0], m);
      break;
    }
    case OpKind::Z: {
      cplx m[2][2] = {{1, 0}, {0, -1}};
      apply_1q(v, in.qubits[0], m);
      break;
    }
    case OpKind::Phase: {
      cplx m[2][2] = {{1, 0}, {0, std::exp(cplx{0, in.angle})}};
      apply_1q(v, in.qubits[0], m);
      break;
    }
    case OpKind::Rx:
      apply_rotation_axis(v, 'x', in.angle, in.qubits[0]);
      break;
    case OpKind::Rz:
      apply_rotation_axis(v, 'z', in.angle, in.qubits[0]);
      break;
    case OpKind::CX:
      apply_cx(v, in.qubits[0], in.qubits[1]);
      break;
    case OpKind::CZ:
      apply_cz(v, in.qubits[0], in.qubits[1]);
      break;
    case OpKind::Swap:
      apply_swap(v, in.qubits[0], in.qubits[1]);
      break;
    case OpKind::PauliRot:
      apply_pauli_rotation(v, PauliRotation(in.pauli, in.angle), in.qubits,
                           static_cast<uint32_t>(std::countr_zero(v.size())));
      break;
    case OpKind::Barrier:
      break;
    default:
      throw std::invalid_argument("dynamic instruction in static context");
  }
}

struct BranchState {
  std::vector<uint8_t> outcome;  // by cbit index
  double probability = 0.0;
  StateVec state;                // normalized within the branch
};

struct RunOptions {
  uint32_t max_qubits = kDefaultMaxQubits;
  double prune_prob = kBranchPruneProb;
};

/// Depth-first enumeration over measurement outcomes. Resets are measure-and-
/// flip; conditionals read the branch's classical assignment; zero-probability
/// branches are pruned; the postprocessing frame is applied per branch.
inline std::vector<BranchState> run_branches(const Circuit& c, const StateVec& input,
                                             const RunOptions& opts = {}) {
  if (c.n_qubits > opts.max_qubits) throw std::invalid_argument("qubit budget exceeded");
  if (input.size() != size_t{1} << c.n_qubits)
    throw std::invalid_argument("input state dimension mismatch");
  c.validate();

  std::vector<BranchState> results;

  // (state, probability) evolving along one outcome path.
  std::function<void(StateVec, double, std::vector<uint8_t>, size_t)> walk =
      [&](StateVec v, double prob, std::vector<uint8_t> cbits, size_t pos) {
        for (size_t i = pos; i < c.instructions.size(); ++i) {
          const Instruction& in = c.instructions[i];
          switch (in.op) {
            case OpKind::Measure:
            case OpKind::Reset: {
              uint32_t q = in.qubits[0];
              bool xbasis = in.op == OpKind::Measure && in.basis == MeasBasis::X;
              if (xbasis) {
                cplx m[2][2] = {{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)},
                                {1 / std::sqrt(2.0), -1 / std::sqrt(2.0)}};
                apply_1q(v, q, m);  // rotate X basis onto Z
              }
              size_t qm = size_t{1} << q;
              double p1 = 0;
              for (size_t k = 0; k < v.size(); ++k)
                if (k & qm) p1 += std::norm(v[k]);
              double p0 = 1.0 - p1;
              for (int bit = 0; bit < 2; ++bit) {
                double pb = bit ? p1 : p0;
                if (pb * prob <= opts.prune_prob) continue;
                StateVec w = v;
                double norm = 1.0 / std::sqrt(pb);
                for (size_t k = 0; k < w.size(); ++k) {
                  bool is1 = (k & qm) != 0;
                  w[k] = is1 == bool(bit) ? w[k] * norm : cplx{0, 0};
                }
                if (xbasis) {
                  cplx m[2][2] = {{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)},
                                  {1 / std::sqrt(2.0), -1 / std::sqrt(2.0)}};
                  apply_1q(w, q, m);  // back to |+>/|->
                }
                std::vector<uint8_t> cb = cbits;
                if (in.op == OpKind::Measure) cb[in.cbit] = static_cast<uint8_t>(bit);
                if (in.op == OpKind::Reset && bit) {
                  cplx mx[2][2] = {{0, 1}, {1, 0}};
                  apply_1q(w, q, mx);
                }
                walk(std::move(w), prob * pb, std::move(cb), i + 1);
              }
              return;
            }
            case OpKind::CondPauli: {
              if (in.expr.eval(cbits)) {
                cplx mx[2][2] = {{0, 1}, {1, 0}};
                cplx mz[2][2] = {{1, 0}, {0, -1}};
                apply_1q(v, in.qubits[0], in.pauli_kind == 'X' ? mx : mz);
              }
              break;
            }
            case OpKind::CondSignRot: {
              double sign = in.expr.eval(cbits) ? -1.0 : 1.0;
              apply_rotation_axis(v, in.rot_axis, sign * in.angle, in.qubits[0]);
              break;
            }
            default:
              apply_static(v, in);
          }
        }
        for (const auto& [expr, pauli] : c.postprocessing.terms)
          if (expr.eval(cbits)) apply_pauli(v, pauli);
        results.push_back({std::move(cbits), prob, std::move(v)});
      };

  walk(input, 1.0, std::vector<uint8_t>(c.n_cbits, 0), 0);
  return results;
}

/// Exact 2^n x 2^n unitary of a static circuit, by columns.
inline std::vector<StateVec> unitary_of(const Circuit& c, uint32_t max_qubits = 10) {
  if (c.n_qubits > max_qubits) throw std::invalid_argument("qubit budget exceeded");
  for (const Instruction& in : c.instructions)
    if (!in.is_static_gate() && in.op != OpKind::Barrier)
      throw std::invalid_argument("dynamic instruction in unitary_of");
  size_t dim = size_t{1} << c.n_qubits;
  std::vector<StateVec> cols(dim);
  for (size_t j = 0; j < dim; ++j) {
    StateVec v(dim, cplx{0, 0});
    v[j] = 1.0;
    for (const Instruction& in : c.instructions)
      if (in.op != OpKind::Barrier) apply_static(v, in);
    cols[j] = std::move(v);
  }
  return cols;
}

/// Largest-magnitude-entry phase alignment; returns max entrywise distance
/// between columns after alignment.
inline double unitary_distance(const std::vector<StateVec>& a, const std::vector<StateVec>& b) {
  if (a.size() != b.size()) return 1e9;
  // Find global phase from the largest entry of a.
  size_t bi = 0, bj = 0;
  double best = -1;
  for (size_t j = 0; j < a.size(); ++j)
    for (size_t i = 0; i < a[j].size(); ++i)
      if (std::abs(a[j][i]) > best) best = std::abs(a[j][i]), bi = i, bj = j;
  if (best < 1e-12 || std::abs(b[bj][bi]) < 1e-12) return 1e9;
  cplx phase = (a[bj][bi] / std::abs(a[bj][bi])) / (b[bj][bi] / std::abs(b[bj][bi]));
  double worst = 0;
  for (size_t j = 0; j < a.size(); ++j)
    for (size_t i = 0; i < a[j].size(); ++i)
      worst = std::max(worst, std::abs(a[j][i] - phase * b[j][i]));
  return worst;
}

struct EquivReport {
  bool equivalent = false;
  double worst_fidelity = 0.0;
  std::optional<std::vector<uint8_t>> failing_branch;
  std::vector<double> global_phase_per_branch;
  std::string failure_reason;
};

/// Reduced density matrix of `keep` (in order) from a pure state.
inline std::vector<StateVec> reduced_density(const StateVec& v, uint32_t n,
                                             const std::vector<uint32_t>& keep) {
  uint32_t k = static_cast<uint32_t>(keep.size());
  std::vector<uint32_t> rest;
  for (uint32_t q = 0; q < n; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
  size_t dk = size_t{1} << k, dr = size_t{1} << rest.size();
  std::vector<StateVec> rho(dk, StateVec(dk, cplx{0, 0}));
  for (size_t a = 0; a < dk; ++a)
    for (size_t b = 0; b < dk; ++b) {
      cplx acc{0, 0};
      for (size_t r = 0; r < dr; ++r) {
        size_t ia = 0, ib = 0;
        for (uint32_t t = 0; t < k; ++t) {
          if ((a >> t) & 1) ia |= size_t{1} << keep[t];
          if ((b >> t) & 1) ib |= size_t{1} << keep[t];
        }
        for (uint32_t t = 0; t < rest.size(); ++t)
          if ((r >> t) & 1) {
            ia |= size_t{1} << rest[t];
            ib |= size_t{1} << rest[t];
          }
        acc += v[ia] * std::conj(v[ib]);
      }
      rho[a][b] = acc;
    }
  return rho;
}

struct ChannelEquivOptions {
  double tol = kDefaultTol;
  uint32_t max_qubits = kDefaultMaxQubits;
  uint32_t random_inputs = 3;
  uint64_t seed = 0x51ab1e5eedULL;
};

/// Checks that the dynamic circuit `dyn` implements, on the data register,
/// the same channel as the static reference `ref`, for every measurement
/// branch and every probed input. Non-data qubits of dyn start in |0> and the
/// output register must end disentangled in every branch. Gadgets that move
/// data (teleportation, snakes) may name a different output register.
inline EquivReport channel_equiv_moved(const Circuit& dyn, const Circuit& ref,
                                       const std::vector<uint32_t>& data_in,
                                       const std::vector<uint32_t>& data_out,
                                 const std::vector<StateVec>& extra_inputs = {},
                                 const ChannelEquivOptions& opts = {}) {
  uint32_t k = static_cast<uint32_t>(data_in.size());
  if (ref.n_qubits != k || data_out.size() != k)
    throw std::invalid_argument("reference register size mismatch");

  std::vector<StateVec> ref_cols = unitary_of(ref, opts.max_qubits);

  // Probe inputs on the data register: all basis states plus a few random
  // states (unless the caller supplied their own).
  std::vector<StateVec> inputs = extra_inputs;
  if (inputs.empty()) {
    size_t dim = size_t{1} << k;
    for (size_t j = 0; j < dim; ++j) {
      StateVec v(dim, cplx{0, 0});
      v[j] = 1.0;
      inputs.push_back(std::move(v));
    }
    std::mt19937_64 rng(opts.seed);
    auto unit = [&rng]() {
      return (static_cast<double>(rng() >> 11) / 9007199254740992.0) * 2.0 - 1.0;
    };
    for (uint32_t t = 0; t < opts.random_inputs; ++t) {
      StateVec v(dim);
      double norm = 0;
      for (auto& amp : v) {
        amp = cplx{unit(), unit()};
        norm += std::norm(amp);
      }
      norm = 1.0 / std::sqrt(norm);
      for (auto& amp : v) amp *= norm;
      inputs.push_back(std::move(v));
    }
  }

  EquivReport report;
  report.equivalent = true;
  report.worst_fidelity = 1.0;

  for (const StateVec& in : inputs) {
    // Embed the data-register input into the full register (others |0>).
    StateVec full(size_t{1} << dyn.n_qubits, cplx{0, 0});
    for (size_t j = 0; j < in.size(); ++j) {
      size_t idx = 0;
      for (uint32_t t = 0; t < k; ++t)
        if ((j >> t) & 1) idx |= size_t{1} << data_in[t];
      full[idx] = in[j];
    }
    // Reference output.
    StateVec ref_out(in.size(), cplx{0, 0});
    for (size_t j = 0; j < in.size(); ++j)
      if (in[j] != cplx{0, 0})
        for (size_t i = 0; i < in.size(); ++i) ref_out[i] += ref_cols[j][i] * in[j];

    RunOptions ropts;
    ropts.max_qubits = opts.max_qubits;
    auto branches = run_branches(dyn, full, ropts);
    for (const auto& br : branches) {
      auto rho = reduced_density(br.state, dyn.n_qubits, data_out);
      // Disentanglement: purity of the reduced state.
      cplx purity{0, 0};
      for (size_t a = 0; a < rho.size(); ++a)
        for (size_t b = 0; b < rho.size(); ++b) purity += rho[a][b] * rho[b][a];
      if (purity.real() < 1.0 - opts.tol) {
        report.equivalent = false;
        report.worst_fidelity = std::min(report.worst_fidelity, purity.real());
        report.failing_branch = br.outcome;
        report.failure_reason = "data register entangled with ancillas";
        continue;
      }
      // Fidelity <ref|rho|ref>.
      cplx fid{0, 0};
      cplx overlap_phase{0, 0};
      for (size_t a = 0; a < rho.size(); ++a)
        for (size_t b = 0; b < rho.size(); ++b)
          fid += std::conj(ref_out[a]) * rho[a][b] * ref_out[b];
      // Branch global phase (diagnostic): phase of <ref_out | psi_data> via
      // the largest ref amplitude row of rho.
      overlap_phase = fid;
      double f = fid.real();
      report.global_phase_per_branch.push_back(std::arg(overlap_phase));
      if (f < report.worst_fidelity) {
        report.worst_fidelity = f;
        if (f < 1.0 - opts.tol) {
          report.equivalent = false;
          report.failing_branch = br.outcome;
          report.failure_reason = "branch state differs from reference";
        }
      }
    }
  }
  return report;
}

/// Common case: input and output share the data register.
inline EquivReport channel_equiv(const Circuit& dyn, const Circuit& ref,
                                 const std::vector<uint32_t>& data_qubits,
                                 const std::vector<StateVec>& extra_inputs = {},
                                 const ChannelEquivOptions& opts = {}) {
  return channel_equiv_moved(dyn, ref, data_qubits, data_qubits, extra_inputs, opts);
}

/// Sum over branches of probability times <state|P|state>.
inline double expectation(const Circuit& c, const PauliString& p, const StateVec& input,
                          const RunOptions& opts = {}) {
  if (p.num_qubits() != c.n_qubits) throw std::invalid_argument("observable width mismatch");
  auto branches = run_branches(c, input, opts);
  double acc = 0;
  for (const auto& br : branches) {
    StateVec pv = br.state;
    apply_pauli(pv, p);
    cplx e{0, 0};
    for (size_t i = 0; i < pv.size(); ++i) e += std::conj(br.state[i]) * pv[i];
    acc += br.probability * e.real();
  }
  return acc;
}

inline double expectation(const Circuit& c, const PauliString& p) {
  return expectation(c, p, zero_state(c.n_qubits));
}

}  // namespace sim
}  // namespace qdc
