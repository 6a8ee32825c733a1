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

#include <Eigen/Dense>

#include "shormagic/simulator.hpp"

namespace shormagic {

inline constexpr unsigned kDenseMaxQubits = 12;

/// Full 2^L state-vector version of the semiclassical circuit, used to
/// validate the sparse engines. Controlled multiplication acts as the
/// permutation y -> m*y mod N on register values below N and as the
/// identity on the unused values N .. 2^n - 1.
class DenseSimulator {
 public:
  explicit DenseSimulator(const ShorInstance &instance);

  void reset();
  StepTrace step(unsigned tau, OutcomeSampler &sampler, bool snapshot = false);

  const Eigen::VectorXcd &amplitudes() const { return psi_; }
  SparseState state() const;
  std::span<const int> outcomes() const { return outcomes_; }

 private:
  ShorInstance instance_;
  Eigen::VectorXcd psi_;
  std::vector<int> outcomes_;
};

/// Converts a dense amplitude vector to a SparseState, pruning dust.
SparseState to_sparse(const Eigen::VectorXcd &psi, unsigned num_qubits);

/// Same contract as run(), on the dense engine. Requires L <= 12.
RunResult dense_reference(const ShorInstance &instance, u64 seed, const RunOptions &options = {});

}  // namespace shormagic
