// Copyright 2026 The shormagic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace shormagic {

using Amplitude = std::complex<double>;
using Bitstring = std::uint64_t;

/// Entries whose magnitude falls below this are dropped from the support.
inline constexpr double kPruneTolerance = 1e-14;

/// Pure state on up to 63 qubits stored as its support: a list of
/// (bitstring, amplitude) entries sorted by bitstring. Qubit q is bit q of
/// the key; in Shor states the QFT qubit is the most significant bit.
class SparseState {
 public:
  struct Entry {
    Bitstring key;
    Amplitude amp;
  };

  explicit SparseState(unsigned num_qubits);

  /// Computational basis state |key>.
  static SparseState basis(unsigned num_qubits, Bitstring key);
  /// Builds a state from arbitrary entries. Duplicate keys are summed, tiny
  /// amplitudes pruned; no normalization is applied.
  static SparseState from_entries(unsigned num_qubits, std::vector<Entry> entries);

  unsigned num_qubits() const { return num_qubits_; }
  std::size_t support_size() const { return entries_.size(); }
  std::span<const Entry> entries() const { return entries_; }
  std::vector<Bitstring> support() const;

  /// Amplitude of |key>, zero when absent. O(log D).
  Amplitude amplitude(Bitstring key) const;
  /// Index of key in entries(), or -1.
  std::ptrdiff_t index_of(Bitstring key) const;

  double norm_squared() const;
  void normalize();
  void prune(double tolerance = kPruneTolerance);
  void scale(Amplitude factor);

 private:
  unsigned num_qubits_;
  std::vector<Entry> entries_;
};

SparseState apply_hadamard(const SparseState &state, unsigned qubit);
SparseState apply_phase_s(const SparseState &state, unsigned qubit);
SparseState apply_cnot(const SparseState &state, unsigned control, unsigned target);
/// diag(1, e^{i angle}) on one qubit.
SparseState apply_phase(const SparseState &state, unsigned qubit, double angle);

/// |high> (x) |low>; `low` occupies the least significant qubits.
SparseState tensor(const SparseState &high, const SparseState &low);

/// Von Neumann entropy (nats) of one qubit's reduced density matrix.
double qubit_entanglement_entropy(const SparseState &state, unsigned qubit);

/// 1 - |<a|b>|: zero iff two normalized states agree up to a global phase.
double phase_insensitive_distance(const SparseState &a, const SparseState &b);

}  // namespace shormagic
