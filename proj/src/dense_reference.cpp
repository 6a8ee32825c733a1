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

#include "shormagic/dense_reference.hpp"

#include <cmath>

#include "shormagic/error.hpp"

namespace shormagic {

DenseSimulator::DenseSimulator(const ShorInstance &instance) : instance_(instance) {
    if (instance.L > kDenseMaxQubits) {
        throw Error("simulator", "dense reference limited to " + std::to_string(kDenseMaxQubits) + " qubits");
    }
    reset();
}

void DenseSimulator::reset() {
    psi_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << instance_.L);
    psi_(1) = 1.0;
    outcomes_.clear();
}

StepTrace DenseSimulator::step(unsigned tau, OutcomeSampler &sampler, bool snapshot) {
    if (tau != outcomes_.size() + 1 || tau > instance_.t) {
        throw Error("simulator", "dense engine steps must be applied in order");
    }
    const Eigen::Index half = Eigen::Index{1} << instance_.n;
    const double h = M_SQRT1_2;
    auto low = psi_.head(half);
    auto high = psi_.tail(half);

    Eigen::VectorXcd a0 = h * (low + high);
    Eigen::VectorXcd a1 = h * (low - high);

    const u64 m = instance_.step_multiplier(tau);
    Eigen::VectorXcd shifted(half);
    for (Eigen::Index y = 0; y < half; y++) {
        Eigen::Index target = static_cast<u64>(y) < instance_.N ? static_cast<Eigen::Index>(mul_mod(m, y, instance_.N)) : y;
        shifted(target) = a1(y);
    }
    shifted *= std::polar(1.0, feedback_phase(outcomes_, tau));
    low = a0;
    high = shifted;

    StepTrace trace;
    trace.tau = tau;
    trace.support_size = (psi_.array().abs() >= kPruneTolerance).count();
    if (snapshot) {
        trace.probe = state();
    }

    Eigen::VectorXcd b0 = h * (low + high);
    Eigen::VectorXcd b1 = h * (low - high);
    const double p_zero = b0.squaredNorm();
    const double p_one = b1.squaredNorm();
    if (std::abs(p_zero + p_one - 1.0) > 1e-10) {
        throw Error("simulator", "dense norm drifted before measurement");
    }
    trace.outcome = sampler.draw(p_zero / (p_zero + p_one));
    const double p = trace.outcome ? p_one : p_zero;
    trace.probability = p / (p_zero + p_one);

    low = (trace.outcome ? b1 : b0) / std::sqrt(p);
    high.setZero();
    outcomes_.push_back(trace.outcome);
    return trace;
}

SparseState DenseSimulator::state() const { return to_sparse(psi_, instance_.L); }

SparseState to_sparse(const Eigen::VectorXcd &psi, unsigned num_qubits) {
    std::vector<SparseState::Entry> entries;
    for (Eigen::Index i = 0; i < psi.size(); i++) {
        if (std::abs(psi(i)) >= kPruneTolerance) {
            entries.push_back({static_cast<Bitstring>(i), psi(i)});
        }
    }
    return SparseState::from_entries(num_qubits, std::move(entries));
}

RunResult dense_reference(const ShorInstance &instance, u64 seed, const RunOptions &options) {
    OutcomeSampler sampler = options.forced_outcomes ? OutcomeSampler::forced(*options.forced_outcomes)
                                                     : OutcomeSampler::seeded(seed);
    DenseSimulator sim(instance);
    RunResult result;
    std::vector<int> outcomes;
    for (unsigned tau = 1; tau <= instance.t; tau++) {
        StepTrace trace = sim.step(tau, sampler, options.snapshot_probes);
        outcomes.push_back(trace.outcome);
        if (options.record_steps || options.snapshot_probes) {
            result.steps.push_back(std::move(trace));
        }
    }
    result.record = make_record(instance, std::move(outcomes), seed);
    return result;
}

}  // namespace shormagic
