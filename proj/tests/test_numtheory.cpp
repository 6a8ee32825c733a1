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

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "shormagic/error.hpp"
#include "shormagic/numtheory.hpp"

using namespace shormagic;

namespace {

// Naive oracles.
u64 naive_order(u64 a, u64 N) {
    u64 y = a % N, d = 1;
    while (y != 1) {
        y = y * a % N;
        d++;
    }
    return d;
}

bool naive_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; d++)
        if (n % d == 0) return false;
    return true;
}

u64 naive_carmichael(u64 N) {
    u64 l = 1;
    for (u64 a = 1; a < N; a++)
        if (std::gcd(a, N) == 1) l = std::lcm(l, naive_order(a, N));
    return l;
}

bool odd_composite(u64 N) { return N % 2 == 1 && N >= 9 && !naive_prime(N); }

}  // namespace

TEST(MulMod, MatchesWideProduct) {
    std::mt19937_64 gen(11);
    for (int i = 0; i < 10000; i++) {
        const u64 m = gen() | 1;
        const u64 a = gen() % m, b = gen() % m;
        const u64 expect = static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
        ASSERT_EQ(mul_mod(a, b, m), expect);
    }
    EXPECT_EQ(mul_mod(~u64{0} - 1, ~u64{0} - 1, ~u64{0}), 1u);
}

TEST(ModPow, SmallCasesAndEdges) {
    EXPECT_EQ(mod_pow(7, 4, 15), 1u);
    EXPECT_EQ(mod_pow(2, 10, 1000), 24u);
    EXPECT_EQ(mod_pow(5, 0, 13), 1u);
    EXPECT_EQ(mod_pow(5, 3, 1), 0u);
    // Fermat on a 61-bit prime.
    const u64 p = (u64{1} << 61) - 1;
    EXPECT_EQ(mod_pow(123456789, p - 1, p), 1u);
}

TEST(IsPrime, AgreesWithTrialDivision) {
    for (u64 n = 0; n < 20000; n++) ASSERT_EQ(is_prime(n), naive_prime(n)) << n;
    EXPECT_TRUE(is_prime((u64{1} << 61) - 1));
    EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    EXPECT_FALSE(is_prime(u64{4294967291} * 4294967279ULL));
}

TEST(Factorize, ProductReconstructsInput) {
    std::mt19937_64 gen(5);
    for (int i = 0; i < 300; i++) {
        const u64 n = (gen() >> (gen() % 40)) | 1;
        u64 prod = 1;
        u64 last = 0;
        for (const auto &pp : factorize(n)) {
            ASSERT_TRUE(is_prime(pp.prime));
            ASSERT_GT(pp.prime, last);
            last = pp.prime;
            for (unsigned e = 0; e < pp.exponent; e++) prod *= pp.prime;
        }
        ASSERT_EQ(prod, n);
    }
    EXPECT_TRUE(factorize(1).empty());
    const std::vector<PrimePower> f = factorize(18923);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0], (PrimePower{127, 1}));
    EXPECT_EQ(f[1], (PrimePower{149, 1}));
}

TEST(Carmichael, AgreesWithLcmOfOrders) {
    for (u64 N = 2; N < 400; N++) ASSERT_EQ(carmichael(N), naive_carmichael(N)) << N;
    EXPECT_EQ(carmichael(18923), 9324u);
}

TEST(OrderFinder, AgreesWithRepeatedMultiplication) {
    for (u64 N = 9; N <= 1000; N += 2) {
        if (!odd_composite(N)) continue;
        const OrderFinder finder(N);
        for (u64 a = 2; a < N; a++) {
            if (std::gcd(a, N) != 1) continue;
            ASSERT_EQ(finder.order(a), naive_order(a, N)) << a << " mod " << N;
        }
    }
}

TEST(OrderFinder, RejectsNonCoprime) {
    const OrderFinder finder(15);
    try {
        finder.order(6);
        FAIL() << "expected a throw";
    } catch (const Error &e) {
        EXPECT_EQ(e.module(), "numtheory");
    }
}

TEST(RegisterWidth, CeilLog2) {
    EXPECT_EQ(register_width(15), 4u);
    EXPECT_EQ(register_width(16), 4u);
    EXPECT_EQ(register_width(17), 5u);
    EXPECT_EQ(register_width(18923), 15u);
    EXPECT_EQ(ceil_log2(1), 0u);
    EXPECT_EQ(ceil_log2(1036), 11u);
}

TEST(SplitPeriod, Examples) {
    EXPECT_EQ(split_period(1036), (PeriodDecomposition{1036, 2, 259, 9, 0}));
    EXPECT_EQ(split_period(37), (PeriodDecomposition{37, 0, 37, 6, 1}));
    EXPECT_EQ(split_period(4), (PeriodDecomposition{4, 2, 1, 0, 0}));
    EXPECT_EQ(split_period(2), (PeriodDecomposition{2, 1, 1, 0, 0}));
}

TEST(SplitPeriod, Reconstructs) {
    for (u64 r = 1; r < 5000; r++) {
        const auto d = split_period(r);
        ASSERT_EQ(d.r_odd << d.k, r);
        ASSERT_EQ(d.r_odd % 2, 1u);
        ASSERT_EQ(d.tau_star, ceil_log2(d.r_odd));
        ASSERT_EQ(d.epsilon, r % 2 == 1 ? 1 : 0);
    }
}

TEST(OrderSpectrum, FifteenByHand) {
    // Coprimes 2..14 of 15: orders 2,4,4,2,4,4,2 for 4,2,8,11,7,13,14.
    const OrderSpectrum s = order_spectrum(15);
    EXPECT_EQ(s.total_coprimes, 7u);
    EXPECT_EQ(s.periods(), (std::vector<u64>{2, 4}));
    EXPECT_EQ(s.members.at(2), (std::vector<u64>{4, 11, 14}));
    EXPECT_EQ(s.members.at(4), (std::vector<u64>{2, 7, 8, 13}));
    EXPECT_EQ(s.g(4), (Rational{4, 7}));
    EXPECT_EQ(s.g(2), (Rational{3, 7}));
    EXPECT_EQ(s.g(3), (Rational{0, 1}));
}

TEST(OrderSpectrum, FrequenciesSumToOneExactly) {
    for (u64 N : {21, 91, 143, 3599, 18923}) {
        const OrderSpectrum s = order_spectrum(N);
        u64 total = 0;
        for (u64 r : s.periods()) total += s.count(r);
        EXPECT_EQ(total, s.total_coprimes) << N;
        double sum = 0;
        for (u64 r : s.periods()) sum += s.frequency(r);
        EXPECT_NEAR(sum, 1.0, 1e-12);
    }
}

TEST(OrderSpectrum, PaperScaleModulusHas35Periods) {
    const OrderSpectrum s = order_spectrum(18923);
    const std::vector<u64> expect = {2,   3,   4,   6,   7,   9,   12,  14,   18,   21,   28,   36,
                                     37,  42,  63,  74,  84,  111, 126, 148,  222,  252,  259,  333,
                                     444, 518, 666, 777, 1036, 1332, 1554, 2331, 3108, 4662, 9324};
    EXPECT_EQ(s.periods(), expect);
    EXPECT_EQ(s.total_coprimes, 126u * 148u - 1);
}

TEST(OrderSpectrum, RejectsBadModuli) {
    EXPECT_THROW(order_spectrum(16), Error);
    EXPECT_THROW(order_spectrum(13), Error);
    EXPECT_THROW(order_spectrum(7), Error);
    EXPECT_THROW(order_spectrum(1'000'003 * 3, 1'000'000), Error);
}

TEST(ContinuedFraction, ConvergentsReproduceValue) {
    std::mt19937_64 gen(2);
    for (int i = 0; i < 2000; i++) {
        const u64 den = 2 + gen() % 100000;
        const u64 num = gen() % den;
        const ContinuedFraction cf = continued_fraction_expand(num, den);
        if (num == 0) {
            EXPECT_TRUE(cf.convergents.empty());
            continue;
        }
        const u64 g = std::gcd(num, den);
        ASSERT_EQ(cf.convergents.back(), (Convergent{num / g, den / g}));
        for (std::size_t k = 1; k < cf.convergents.size(); k++) {
            const auto &p = cf.convergents[k - 1], &q = cf.convergents[k];
            // Adjacent convergents have determinant +-1 and growing denominators.
            const __int128 det = static_cast<__int128>(q.num) * p.den - static_cast<__int128>(p.num) * q.den;
            ASSERT_TRUE(det == 1 || det == -1);
            ASSERT_GT(q.den, p.den);
        }
    }
}

TEST(ContinuedFraction, KnownExpansion) {
    // 415/93 - 4 = 43/93 = [0; 2, 6, 7].
    const ContinuedFraction cf = continued_fraction_expand(43, 93);
    EXPECT_EQ(cf.coefficients, (std::vector<u64>{2, 6, 7}));
    EXPECT_EQ(cf.convergents, (std::vector<Convergent>{{1, 2}, {6, 13}, {43, 93}}));
}

TEST(RecoverPeriod, TextbookCases) {
    // N = 15, a = 7, r = 4, t = 9: x = s/4.
    EXPECT_TRUE(recover_period(128, 9, 7, 15, 4).success);
    EXPECT_TRUE(recover_period(384, 9, 7, 15, 4).success);
    const PeriodRecovery half = recover_period(256, 9, 7, 15, 4);
    EXPECT_FALSE(half.success);  // gives 2, a proper divisor
    EXPECT_FALSE(recover_period(0, 9, 7, 15, 4).success);
    // A multiple of r found first is a failure too: a = 4 (r = 2), x = 1/4.
    const PeriodRecovery multiple = recover_period(128, 9, 4, 15, 2);
    EXPECT_FALSE(multiple.success);
    ASSERT_TRUE(multiple.found.has_value());
    EXPECT_EQ(*multiple.found, 4u);
}

TEST(RecoverPeriod, NearbyPeakRecovers) {
    // r = 1036 mod 18923 with t = 31: the closest t-bit fraction to s/r
    // recovers r whenever gcd(s, r) = 1.
    const u64 N = 18923, a = 15780, r = 1036;
    ASSERT_EQ(naive_order(a, N), r);
    for (u64 s : {1, 3, 5, 517, 1035}) {
        const u64 x = static_cast<u64>(std::llround(std::ldexp(static_cast<double>(s) / r, 31)));
        EXPECT_TRUE(recover_period(x, 31, a, N, r).success) << s;
    }
}
