#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "gfe/arith.hpp"

using gfe::BigInt;
using gfe::PrimePower;

namespace {

// Smallest-prime-factor table from a linear sieve.
std::vector<std::uint32_t> spf_table(std::uint32_t limit) {
    std::vector<std::uint32_t> spf(limit + 1, 0), primes;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf[i] == 0) {
            spf[i] = i;
            primes.push_back(i);
        }
        for (std::uint32_t p : primes) {
            if (p > spf[i] || static_cast<std::uint64_t>(p) * i > limit) break;
            spf[p * i] = p;
        }
    }
    return spf;
}

std::vector<PrimePower> trial_division(std::uint64_t n) {
    std::vector<PrimePower> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        gfe::Exponent e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

BigInt reassemble(const std::vector<PrimePower>& f) {
    BigInt n = 1;
    for (const auto& pp : f) n *= boost::multiprecision::pow(pp.prime, static_cast<unsigned>(pp.exponent));
    return n;
}

void expect_well_formed(const BigInt& n, const std::vector<PrimePower>& f) {
    EXPECT_EQ(reassemble(f), n);
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_GE(f[i].exponent, 1);
        EXPECT_TRUE(gfe::is_prime(f[i].prime)) << f[i].prime;
        if (i) {
            EXPECT_LT(f[i - 1].prime, f[i].prime);
        }
    }
}

}  // namespace

TEST(Gcd, Examples) {
    EXPECT_EQ(gfe::gcd(0, 7), 7);
    EXPECT_EQ(gfe::gcd(12, 18), 6);
    EXPECT_EQ(gfe::gcd(0, 0), 0);
}

TEST(Gcd, TwoToSixtyFourPlusOneAgainstResidueOracle) {
    // 2^64 + 1 mod 3 by repeated doubling
    unsigned residue = 1;
    for (int i = 0; i < 64; ++i) residue = residue * 2 % 3;
    residue = (residue + 1) % 3;
    const BigInt n = (BigInt(1) << 64) + 1;
    EXPECT_EQ(gfe::gcd(n, 3), residue == 0 ? 3 : 1);
    EXPECT_EQ(gfe::gcd(n, 3), 1);
}

TEST(TripleGcd, Examples) {
    EXPECT_EQ(gfe::triple_gcd(2, 7, 3), 1);
    EXPECT_EQ(gfe::triple_gcd(6, 10, 15), 1);
    EXPECT_EQ(gfe::triple_gcd(4, 8, 12), 4);
}

TEST(Factorize, Examples) {
    EXPECT_TRUE(gfe::factorize(1).empty());
    EXPECT_EQ(gfe::factorize(360), trial_division(360));
    EXPECT_EQ(gfe::factorize(360), (std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}}));
    EXPECT_EQ(gfe::factorize(5041), trial_division(5041));
    EXPECT_EQ(gfe::factorize(5041), (std::vector<PrimePower>{{71, 2}}));
}

TEST(Factorize, RejectsOutOfRange) {
    EXPECT_THROW(gfe::factorize(0), gfe::DomainError);
    const BigInt above = gfe::default_magnitude_cap() + 1;
    EXPECT_THROW(gfe::factorize(above), gfe::MagnitudeExceeded);
    EXPECT_NO_THROW(gfe::factorize(gfe::default_magnitude_cap()));
    EXPECT_THROW(gfe::factorize(1000, 999), gfe::MagnitudeExceeded);
}

TEST(Factorize, CofactorsBeyondTrialDivision) {
    const BigInt p1 = 1000003, p2 = 1000033;
    EXPECT_EQ(gfe::factorize(p1 * p2), (std::vector<PrimePower>{{p1, 1}, {p2, 1}}));

    const BigInt m61 = (BigInt(1) << 61) - 1, m31 = (BigInt(1) << 31) - 1, m89 = (BigInt(1) << 89) - 1;
    EXPECT_EQ(gfe::factorize(m61 * m61), (std::vector<PrimePower>{{m61, 2}}));
    EXPECT_EQ(gfe::factorize(m31 * m61), (std::vector<PrimePower>{{m31, 1}, {m61, 1}}));
    EXPECT_EQ(gfe::factorize(m89), (std::vector<PrimePower>{{m89, 1}}));
    EXPECT_EQ(gfe::factorize(m89 * 12), (std::vector<PrimePower>{{2, 2}, {3, 1}, {m89, 1}}));

    // two primes of ~38 and ~50 bits: above 2^64, nothing below 10^6
    const BigInt a = BigInt("274877906899"), b = BigInt("1125899906842597");
    ASSERT_TRUE(gfe::is_prime(a));
    ASSERT_TRUE(gfe::is_prime(b));
    EXPECT_EQ(gfe::factorize(a * b), (std::vector<PrimePower>{{a, 1}, {b, 1}}));

    const BigInt n = BigInt(1) << 127;
    EXPECT_EQ(gfe::factorize(n), (std::vector<PrimePower>{{2, 127}}));
}

TEST(Factorize, LargerCapAllowsLargerInputs) {
    const BigInt m127 = (BigInt(1) << 127) - 1;
    const BigInt cap = BigInt(1) << 200;
    const auto f = gfe::factorize(m127 * 6, cap);
    EXPECT_EQ(f, (std::vector<PrimePower>{{2, 1}, {3, 1}, {m127, 1}}));
}

TEST(Factorize, RoundTripsRandom64Bit) {
    std::mt19937_64 rng(20201205);
    for (int i = 0; i < 10000; ++i) {
        const BigInt n = BigInt(rng() | 1u) * ((i % 2) ? 1 : 2);
        const auto f = gfe::factorize(n, BigInt(1) << 65);
        expect_well_formed(n, f);
    }
}

TEST(IsPrime, AgreesWithSieveAndRejectsPseudoprimes) {
    const auto spf = spf_table(100000);
    for (std::uint32_t n = 0; n <= 100000; ++n) {
        const bool sieve_prime = n >= 2 && spf[n] == n;
        ASSERT_EQ(gfe::is_prime(n), sieve_prime) << n;
    }
    // strong pseudoprimes to several small bases, and Carmichael numbers
    for (const char* c : {"3215031751", "2152302898747", "3474749660383", "341550071728321", "561", "41041",
                          "3825123056546413051", "318665857834031151167461"}) {
        EXPECT_FALSE(gfe::is_prime(BigInt(c))) << c;
    }
    EXPECT_TRUE(gfe::is_prime(BigInt("18446744073709551557")));  // largest prime below 2^64
    EXPECT_TRUE(gfe::is_prime((BigInt(1) << 89) - 1));
}

TEST(Radical, Examples) {
    EXPECT_EQ(gfe::radical(8).radical, 2);
    EXPECT_EQ(gfe::radical(42).radical, 42);
    EXPECT_EQ(gfe::radical(1).radical, 1);
    EXPECT_TRUE(gfe::radical(1).factors.empty());

    // brute-force product of primes p <= n dividing n
    BigInt brute = 1;
    for (int p = 2; p <= 360; ++p) {
        if (360 % p == 0 && gfe::is_prime(p)) brute *= p;
    }
    EXPECT_EQ(brute, 30);
    EXPECT_EQ(gfe::radical(360).radical, brute);
}

TEST(Radical, MatchesLinearSieveUpTo1e5) {
    constexpr std::uint32_t limit = 100000;
    const auto spf = spf_table(limit);
    for (std::uint32_t n = 1; n <= limit; ++n) {
        std::uint64_t expected = 1;
        for (std::uint32_t m = n, last = 0; m > 1; m /= spf[m]) {
            if (spf[m] != last) expected *= spf[m];
            last = spf[m];
        }
        const auto info = gfe::radical(n);
        ASSERT_EQ(info.radical, expected) << n;
        ASSERT_EQ(n % info.radical, 0);
        ASSERT_EQ(reassemble(info.factors), n);
    }
}

TEST(Radical, SquarefreeAndDivides) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const BigInt n = BigInt(rng() % 1000000000000ULL + 1);
        const auto info = gfe::radical(n);
        EXPECT_EQ(n % info.radical, 0);
        for (const auto& f : gfe::factorize(info.radical)) EXPECT_EQ(f.exponent, 1);
    }
}

TEST(Radical, MultiplicativeOnCoprimePairs) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint64_t> dist(1, 1000000);
    int checked = 0;
    while (checked < 2000) {
        const BigInt a = dist(rng), b = dist(rng);
        if (gfe::gcd(a, b) != 1) continue;
        EXPECT_EQ(gfe::radical(a * b).radical, gfe::radical(a).radical * gfe::radical(b).radical);
        ++checked;
    }
}

TEST(RadicalOfTriple, Examples) {
    EXPECT_EQ(gfe::radical_of_triple(2, 7, 3).radical, gfe::radical(42).radical);
    EXPECT_EQ(gfe::radical_of_triple(2, 7, 3).radical, 42);
    EXPECT_EQ(gfe::radical_of_triple(2, 17, 71).radical, gfe::radical(2 * 17 * 71).radical);
    EXPECT_EQ(gfe::radical_of_triple(2, 17, 71).radical, 2414);
    EXPECT_EQ(gfe::radical_of_triple(4, 9, 25).radical, 30);
    EXPECT_EQ(gfe::radical_of_triple(4, 9, 25).n, 900);
    EXPECT_THROW(gfe::radical_of_triple(1, 9, 25), gfe::DomainError);
}

TEST(RadicalOfTriple, MergesSharedPrimes) {
    const auto info = gfe::radical_of_triple(12, 18, 10);
    EXPECT_EQ(info.factors, (std::vector<PrimePower>{{2, 4}, {3, 3}, {5, 1}}));
    EXPECT_EQ(info.radical, 30);
}

TEST(LnBig, Examples) {
    EXPECT_EQ(gfe::ln_big(1), 0.0);
    EXPECT_NEAR(gfe::ln_big(81), 4.394449154672438765580980947690102818589962231291, 4.4e-12);
    EXPECT_NEAR(gfe::ln_big(BigInt(1) << 100), 69.314718055994530941723212145817656807550013436026, 7e-11);
    EXPECT_THROW(gfe::ln_big(0), gfe::DomainError);
}

TEST(LnBig, RelativeErrorOnHugeValues) {
    // ln(10^k) = k ln 10
    for (int k : {19, 20, 40, 100, 300, 1000}) {
        const BigInt n = boost::multiprecision::pow(BigInt(10), k);
        const double expected = k * std::log(10.0);
        EXPECT_NEAR(gfe::ln_big(n) / expected, 1.0, 1e-12) << k;
    }
}

TEST(LnBig, PowerConsistency) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const BigInt n = BigInt(rng() % (std::uint64_t(-1)) + 2);
        for (unsigned k : {2u, 3u, 5u}) {
            const double a = gfe::ln_big(n);
            const double b = gfe::ln_big(boost::multiprecision::pow(n, k)) / k;
            ASSERT_NEAR(a / b, 1.0, 1e-11) << n << "^" << k;
        }
    }
}

TEST(CheckedPow, Examples) {
    EXPECT_EQ(gfe::checked_pow(3, 4), 81);
    EXPECT_EQ(gfe::checked_pow(71, 2), 5041);
    EXPECT_EQ(gfe::checked_pow(2, 9), 512);
    EXPECT_EQ(gfe::checked_pow(1, 1000000000), 1);
    EXPECT_EQ(gfe::checked_pow(2, 128), gfe::default_magnitude_cap());
    EXPECT_THROW(gfe::checked_pow(2, 129), gfe::MagnitudeExceeded);
    EXPECT_THROW(gfe::checked_pow(3, 81), gfe::MagnitudeExceeded);
    EXPECT_THROW(gfe::checked_pow(10, 3, 999), gfe::MagnitudeExceeded);
    EXPECT_THROW(gfe::checked_pow(3, 0), gfe::InvalidExponent);
}

TEST(IntegerRoot, FloorRootProperty) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 5000; ++i) {
        const unsigned k = 1 + rng() % 12;
        const std::uint64_t n = rng() >> (rng() % 60);
        const auto r = gfe::integer_root(n, k);
        const BigInt bn(n), br(r);
        ASSERT_LE(boost::multiprecision::pow(br, k), bn);
        ASSERT_GT(boost::multiprecision::pow(br + 1, k), bn);
    }
    for (int i = 0; i < 500; ++i) {
        const unsigned k = 2 + rng() % 9;
        const BigInt n = (BigInt(rng()) << 128) + (BigInt(rng()) << 64) + rng();
        const BigInt r = gfe::integer_root(n, k);
        ASSERT_LE(boost::multiprecision::pow(r, k), n);
        ASSERT_GT(boost::multiprecision::pow(r + 1, k), n);
    }
    EXPECT_EQ(gfe::integer_root(std::uint64_t(-1), 2), 4294967295u);
    EXPECT_EQ(gfe::integer_root(std::uint64_t(512), 9), 2u);
    EXPECT_EQ(gfe::integer_root(BigInt(1) << 120, 3), BigInt(1) << 40);
}

TEST(Arith, ConcurrentFactorizationIsDeterministic) {
    const BigInt n = BigInt("274877906899") * BigInt("1125899906842597");
    const auto expected = gfe::factorize(n);
    std::vector<std::vector<PrimePower>> results(4);
    {
        std::vector<std::jthread> threads;
        for (auto& r : results) threads.emplace_back([&r, &n] { r = gfe::factorize(n); });
    }
    for (const auto& r : results) EXPECT_EQ(r, expected);
}
