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

#include "shormagic/numtheory.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "shormagic/error.hpp"

namespace shormagic {

namespace {

using u128 = unsigned __int128;

[[noreturn]] void fail(const std::string &message) { throw Error("numtheory", message); }

bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) {
    u64 x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) {
        return false;
    }
    for (unsigned i = 1; i < s; i++) {
        x = mul_mod(x, x, n);
        if (x == n - 1) {
            return false;
        }
    }
    return true;
}

// Brent's variant of Pollard rho. n must be odd and composite.
u64 pollard_brent(u64 n) {
    for (u64 c = 1;; c++) {
        auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
        u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
        constexpr u64 block = 128;
        for (u64 len = 1; g == 1; len <<= 1) {
            x = y;
            for (u64 i = 0; i < len; i++) {
                y = f(y);
            }
            for (u64 k = 0; k < len && g == 1; k += block) {
                ys = y;
                for (u64 i = 0; i < std::min(block, len - k); i++) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) {
            return g;
        }
    }
}

void factor_into(u64 n, std::vector<u64> &primes) {
    if (n == 1) {
        return;
    }
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    u64 d = pollard_brent(n);
    factor_into(d, primes);
    factor_into(n / d, primes);
}

}  // namespace

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 mod_pow(u64 base, u64 exp, u64 m) {
    if (m == 1) {
        return 0;
    }
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(u64 n) {
    if (n < 2) {
        return false;
    }
    static constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : kBases) {
        if (n % p == 0) {
            return n == p;
        }
    }
    unsigned s = std::countr_zero(n - 1);
    u64 d = (n - 1) >> s;
    for (u64 a : kBases) {
        if (miller_rabin_witness(n, a, d, s)) {
            return false;
        }
    }
    return true;
}

std::vector<PrimePower> factorize(u64 n) {
    if (n == 0) {
        fail("cannot factorize 0");
    }
    std::vector<u64> primes;
    for (u64 p : {2, 3, 5, 7, 11, 13}) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    factor_into(n, primes);
    std::sort(primes.begin(), primes.end());

    std::vector<PrimePower> out;
    for (u64 p : primes) {
        if (!out.empty() && out.back().prime == p) {
            out.back().exponent++;
        } else {
            out.push_back({p, 1});
        }
    }
    return out;
}

u64 carmichael(u64 n) {
    u64 result = 1;
    for (const auto &[p, e] : factorize(n)) {
        u64 term;
        if (p == 2) {
            term = e == 1 ? 1 : e == 2 ? 2 : u64{1} << (e - 2);
        } else {
            term = p - 1;
            for (unsigned i = 1; i < e; i++) {
                term *= p;
            }
        }
        result = std::lcm(result, term);
    }
    return result;
}

unsigned ceil_log2(u64 x) {
    if (x == 0) {
        fail("ceil_log2(0) is undefined");
    }
    return x == 1 ? 0 : 64 - std::countl_zero(x - 1);
}

unsigned register_width(u64 N) { return ceil_log2(N); }

OrderFinder::OrderFinder(u64 N) : N_(N) {
    if (N < 2) {
        fail("modulus must be >= 2");
    }
    lambda_ = carmichael(N);
    lambda_factors_ = factorize(lambda_);
}

u64 OrderFinder::order(u64 a) const {
    a %= N_;
    if (std::gcd(a, N_) != 1) {
        fail("gcd(a, N) != 1; N already has a common factor with a");
    }
    u64 e = lambda_;
    for (const auto &[p, exponent] : lambda_factors_) {
        for (unsigned i = 0; i < exponent; i++) {
            if (mod_pow(a, e / p, N_) != 1) {
                break;
            }
            e /= p;
        }
    }
    return e;
}

u64 multiplicative_order(u64 a, u64 N) { return OrderFinder(N).order(a); }

PeriodDecomposition split_period(u64 r) {
    if (r == 0) {
        fail("period must be positive");
    }
    PeriodDecomposition d;
    d.r = r;
    d.k = std::countr_zero(r);
    d.r_odd = r >> d.k;
    d.tau_star = ceil_log2(d.r_odd);
    d.epsilon = d.k == 0 ? 1 : 0;
    return d;
}

std::vector<u64> OrderSpectrum::periods() const {
    std::vector<u64> out;
    out.reserve(members.size());
    for (const auto &[r, list] : members) {
        out.push_back(r);
    }
    return out;
}

u64 OrderSpectrum::count(u64 r) const {
    auto it = members.find(r);
    return it == members.end() ? 0 : it->second.size();
}

Rational OrderSpectrum::g(u64 r) const {
    u64 c = count(r);
    if (c == 0) {
        return {0, 1};
    }
    u64 d = std::gcd(c, total_coprimes);
    return {c / d, total_coprimes / d};
}

OrderSpectrum order_spectrum(u64 N, u64 bound) {
    if (N > bound) {
        fail("N = " + std::to_string(N) + " exceeds the spectrum bound " + std::to_string(bound));
    }
    if (N < 9 || N % 2 == 0 || is_prime(N)) {
        fail("order spectrum requires an odd composite N, got " + std::to_string(N));
    }
    OrderFinder finder(N);
    OrderSpectrum spectrum;
    spectrum.N = N;
    for (u64 a = 2; a < N; a++) {
        if (std::gcd(a, N) != 1) {
            continue;
        }
        spectrum.members[finder.order(a)].push_back(a);
        spectrum.total_coprimes++;
    }
    return spectrum;
}

ContinuedFraction continued_fraction_expand(u64 num, u64 den) {
    if (den == 0 || num >= den) {
        fail("continued fraction input must satisfy 0 <= num < den");
    }
    ContinuedFraction cf;
    // h_{-1}/k_{-1} = 1/0 and h_0/k_0 = 0/1 for the zero integer part.
    u64 h_prev = 1, k_prev = 0, h = 0, k = 1;
    u64 p = den, q = num;  // x = q/p; next coefficient is floor(p/q)
    while (q != 0) {
        u64 a = p / q;
        u64 rem = p % q;
        cf.coefficients.push_back(a);
        u64 h_next = a * h + h_prev;
        u64 k_next = a * k + k_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        cf.convergents.push_back({h, k});
        p = q;
        q = rem;
    }
    return cf;
}

PeriodRecovery recover_period(u64 x_num, unsigned t, u64 a, u64 N, u64 true_r) {
    if (t == 0 || t > 63) {
        fail("measurement width t must be in [1, 63]");
    }
    u64 den = u64{1} << t;
    if (x_num >= den) {
        fail("measurement integer exceeds 2^t");
    }
    PeriodRecovery out;
    for (const auto &c : continued_fraction_expand(x_num, den).convergents) {
        if (c.den > N) {
            break;
        }
        if (mod_pow(a, c.den, N) == 1) {
            out.found = c.den;
            out.success = c.den == true_r;
            break;
        }
    }
    return out;
}

}  // namespace shormagic
