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

#include <algorithm>
#include <bit>
#include <cmath>

#include "shormagic/error.hpp"
#include "shormagic/magic.hpp"

namespace shormagic {

namespace {

struct PairTerm {
  Bitstring m;
  Amplitude c;  // conj(a_m) * a_{m ^ x}
};

std::vector<PairTerm> pair_terms(const SparseState &state, Bitstring x) {
    std::vector<PairTerm> out;
    for (const auto &e : state.entries()) {
        auto j = state.index_of(e.key ^ x);
        if (j >= 0) {
            out.push_back({e.key, std::conj(e.amp) * state.entries()[j].amp});
        }
    }
    return out;
}

double log_guarded(double w) {
    if (!(w > 0)) {
        throw Error("magic", "Pauli fourth moment is not positive; state not normalized?");
    }
    return -std::log(w);
}

}  // namespace

double sre_bruteforce(const SparseState &state) {
    const unsigned L = state.num_qubits();
    if (L > kBruteForceMaxQubits) {
        throw Error("magic", "brute-force SRE limited to " + std::to_string(kBruteForceMaxQubits) + " qubits");
    }
    const Bitstring dim = Bitstring{1} << L;
    static constexpr Amplitude kPowI[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};  // i^{-k}

    double total = 0;
    for (Bitstring x = 0; x < dim; x++) {
        auto terms = pair_terms(state, x);
        if (terms.empty()) {
            continue;
        }
        for (Bitstring z = 0; z < dim; z++) {
            Amplitude sum = 0;
            for (const auto &p : terms) {
                sum += (std::popcount(p.m & z) & 1) ? -p.c : p.c;
            }
            double expectation = (kPowI[std::popcount(z & x) & 3] * sum).real();
            double sq = expectation * expectation;
            total += sq * sq;
        }
    }
    return log_guarded(total / static_cast<double>(dim));
}

double sre_sparse_exact(const SparseState &state, std::size_t max_differences) {
    const auto entries = state.entries();
    std::vector<Bitstring> differences;
    differences.reserve(entries.size() * entries.size());
    for (const auto &m : entries) {
        for (const auto &n : entries) {
            differences.push_back(m.key ^ n.key);
        }
        if (differences.size() > 4 * max_differences) {
            std::sort(differences.begin(), differences.end());
            differences.erase(std::unique(differences.begin(), differences.end()), differences.end());
            if (differences.size() > max_differences) {
                break;
            }
        }
    }
    std::sort(differences.begin(), differences.end());
    differences.erase(std::unique(differences.begin(), differences.end()), differences.end());
    if (differences.size() > max_differences) {
        throw Error("magic", "difference set exceeds " + std::to_string(max_differences) +
                                 " strings; use the analytic model for this support");
    }

    double total = 0;
    std::vector<std::pair<Bitstring, Amplitude>> products;
    for (Bitstring x : differences) {
        auto terms = pair_terms(state, x);
        products.clear();
        products.reserve(terms.size() * terms.size());
        for (const auto &p : terms) {
            for (const auto &q : terms) {
                products.emplace_back(p.m ^ q.m, p.c * q.c);
            }
        }
        std::sort(products.begin(), products.end(),
                  [](const auto &u, const auto &v) { return u.first < v.first; });
        for (std::size_t i = 0; i < products.size();) {
            Amplitude g = 0;
            std::size_t j = i;
            for (; j < products.size() && products[j].first == products[i].first; j++) {
                g += products[j].second;
            }
            total += std::norm(g);
            i = j;
        }
    }
    return log_guarded(total);
}

}  // namespace shormagic
