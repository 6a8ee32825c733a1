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

#include "shormagic/sparse_state.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "shormagic/error.hpp"

namespace shormagic {

namespace {

void check_qubit(const SparseState &state, unsigned qubit) {
    if (qubit >= state.num_qubits()) {
        throw Error("simulator", "qubit index " + std::to_string(qubit) + " out of range");
    }
}

}  // namespace

SparseState::SparseState(unsigned num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits > 63) {
        throw Error("simulator", "sparse states support at most 63 qubits");
    }
}

SparseState SparseState::basis(unsigned num_qubits, Bitstring key) {
    SparseState s(num_qubits);
    if (num_qubits < 64 && (key >> num_qubits) != 0) {
        throw Error("simulator", "basis key does not fit in the qubit count");
    }
    s.entries_.push_back({key, 1.0});
    return s;
}

SparseState SparseState::from_entries(unsigned num_qubits, std::vector<Entry> entries) {
    SparseState s(num_qubits);
    std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) { return a.key < b.key; });
    for (const auto &e : entries) {
        if ((e.key >> num_qubits) != 0) {
            throw Error("simulator", "entry key does not fit in the qubit count");
        }
        if (!s.entries_.empty() && s.entries_.back().key == e.key) {
            s.entries_.back().amp += e.amp;
        } else {
            s.entries_.push_back(e);
        }
    }
    s.prune();
    return s;
}

std::vector<Bitstring> SparseState::support() const {
    std::vector<Bitstring> out;
    out.reserve(entries_.size());
    for (const auto &e : entries_) {
        out.push_back(e.key);
    }
    return out;
}

std::ptrdiff_t SparseState::index_of(Bitstring key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const Entry &e, Bitstring k) { return e.key < k; });
    if (it == entries_.end() || it->key != key) {
        return -1;
    }
    return it - entries_.begin();
}

Amplitude SparseState::amplitude(Bitstring key) const {
    auto i = index_of(key);
    return i < 0 ? Amplitude{} : entries_[i].amp;
}

double SparseState::norm_squared() const {
    double total = 0;
    for (const auto &e : entries_) {
        total += std::norm(e.amp);
    }
    return total;
}

void SparseState::normalize() {
    double n = norm_squared();
    if (n <= 0) {
        throw Error("simulator", "cannot normalize a zero state");
    }
    scale(1.0 / std::sqrt(n));
}

void SparseState::prune(double tolerance) {
    std::erase_if(entries_, [tolerance](const Entry &e) { return std::abs(e.amp) < tolerance; });
}

void SparseState::scale(Amplitude factor) {
    for (auto &e : entries_) {
        e.amp *= factor;
    }
}

SparseState apply_hadamard(const SparseState &state, unsigned qubit) {
    check_qubit(state, qubit);
    const double h = M_SQRT1_2;
    const Bitstring bit = Bitstring{1} << qubit;
    std::vector<SparseState::Entry> out;
    out.reserve(2 * state.support_size());
    for (const auto &e : state.entries()) {
        bool one = e.key & bit;
        out.push_back({e.key & ~bit, h * e.amp});
        out.push_back({e.key | bit, one ? -h * e.amp : h * e.amp});
    }
    return SparseState::from_entries(state.num_qubits(), std::move(out));
}

SparseState apply_phase(const SparseState &state, unsigned qubit, double angle) {
    check_qubit(state, qubit);
    const Bitstring bit = Bitstring{1} << qubit;
    const Amplitude phase = std::polar(1.0, angle);
    std::vector<SparseState::Entry> out(state.entries().begin(), state.entries().end());
    for (auto &e : out) {
        if (e.key & bit) {
            e.amp *= phase;
        }
    }
    return SparseState::from_entries(state.num_qubits(), std::move(out));
}

SparseState apply_phase_s(const SparseState &state, unsigned qubit) {
    check_qubit(state, qubit);
    const Bitstring bit = Bitstring{1} << qubit;
    std::vector<SparseState::Entry> out(state.entries().begin(), state.entries().end());
    for (auto &e : out) {
        if (e.key & bit) {
            e.amp *= Amplitude(0, 1);
        }
    }
    return SparseState::from_entries(state.num_qubits(), std::move(out));
}

SparseState apply_cnot(const SparseState &state, unsigned control, unsigned target) {
    check_qubit(state, control);
    check_qubit(state, target);
    if (control == target) {
        throw Error("simulator", "CNOT control and target must differ");
    }
    const Bitstring c = Bitstring{1} << control;
    const Bitstring t = Bitstring{1} << target;
    std::vector<SparseState::Entry> out(state.entries().begin(), state.entries().end());
    for (auto &e : out) {
        if (e.key & c) {
            e.key ^= t;
        }
    }
    return SparseState::from_entries(state.num_qubits(), std::move(out));
}

SparseState tensor(const SparseState &high, const SparseState &low) {
    const unsigned total = high.num_qubits() + low.num_qubits();
    std::vector<SparseState::Entry> out;
    out.reserve(high.support_size() * low.support_size());
    for (const auto &h : high.entries()) {
        for (const auto &l : low.entries()) {
            out.push_back({(h.key << low.num_qubits()) | l.key, h.amp * l.amp});
        }
    }
    return SparseState::from_entries(total, std::move(out));
}

double qubit_entanglement_entropy(const SparseState &state, unsigned qubit) {
    check_qubit(state, qubit);
    const Bitstring bit = Bitstring{1} << qubit;
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (const auto &e : state.entries()) {
        if (e.key & bit) {
            rho(1, 1) += std::norm(e.amp);
            continue;
        }
        rho(0, 0) += std::norm(e.amp);
        Amplitude partner = state.amplitude(e.key | bit);
        rho(0, 1) += e.amp * std::conj(partner);
    }
    rho(1, 0) = std::conj(rho(0, 1));
    rho /= rho.trace().real();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(rho, Eigen::EigenvaluesOnly);
    double entropy = 0;
    for (int i = 0; i < 2; i++) {
        double p = solver.eigenvalues()(i);
        if (p > 1e-300) {
            entropy -= p * std::log(p);
        }
    }
    return std::max(entropy, 0.0);
}

double phase_insensitive_distance(const SparseState &a, const SparseState &b) {
    Amplitude overlap = 0;
    for (const auto &e : a.entries()) {
        overlap += std::conj(e.amp) * b.amplitude(e.key);
    }
    return std::abs(1.0 - std::abs(overlap));
}

}  // namespace shormagic
