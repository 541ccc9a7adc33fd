#pragma once

// Exact integer arithmetic: gcd, factorization, radicals, powers, roots and
// logarithms of arbitrary precision integers.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gfe/errors.hpp"

namespace gfe {

using BigInt = boost::multiprecision::cpp_int;

/// Exponents of the equation and of prime factorizations.
using Exponent = std::int64_t;

struct PrimePower {
    BigInt prime;
    Exponent exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// An integer together with its factorization and squarefree kernel.
struct RadicalInfo {
    BigInt n;
    std::vector<PrimePower> factors;
    BigInt radical;
};

/// Default cap on factorization inputs and checked powers: 2^128.
inline const BigInt& default_magnitude_cap() {
    static const BigInt cap = BigInt(1) << 128;
    return cap;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

inline BigInt triple_gcd(const BigInt& x, const BigInt& y, const BigInt& z) {
    return gcd(gcd(x, y), z);
}

/// Natural logarithm of n >= 1, from the bit length and the top 64 bits.
inline double ln_big(const BigInt& n) {
    if (n < 1) throw DomainError("ln_big: argument must be >= 1");
    const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(n)) + 1;
    if (bits <= 64) return std::log(static_cast<double>(n.convert_to<std::uint64_t>()));
    const auto shift = bits - 64;
    const auto top = static_cast<std::uint64_t>(n >> static_cast<unsigned>(shift));
    return std::log(static_cast<double>(top)) + static_cast<double>(shift) * std::numbers::ln2;
}

/// Exact base^exp; throws MagnitudeExceeded if the result is above cap.
inline BigInt checked_pow(const BigInt& base, Exponent exp, const BigInt& cap = default_magnitude_cap()) {
    if (base < 1) throw DomainError("checked_pow: base must be positive");
    if (exp < 1) throw InvalidExponent("checked_pow: exponent must be positive");
    if (base == 1) return 1;
    // base >= 2, so exp beyond the bit length of cap already overflows
    if (cap < 2 || static_cast<std::uint64_t>(exp) > boost::multiprecision::msb(cap) + 1) {
        throw MagnitudeExceeded("checked_pow: result exceeds magnitude cap");
    }
    BigInt result = 1;
    for (Exponent i = 0; i < exp; ++i) {
        result *= base;
        if (result > cap) throw MagnitudeExceeded("checked_pow: result exceeds magnitude cap");
    }
    return result;
}

/// True iff base^exp >= bound, without materializing large powers.
inline bool power_at_least(const BigInt& base, Exponent exp, const BigInt& bound) {
    if (bound <= 1) return true;
    if (base <= 1) return false;
    BigInt acc = 1;
    for (Exponent i = 0; i < exp; ++i) {
        acc *= base;
        if (acc >= bound) return true;
    }
    return false;
}

namespace detail {

inline bool pow_le_u64(std::uint64_t base, unsigned k, std::uint64_t n) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= base;
        if (acc > n) return false;
    }
    return true;
}

}  // namespace detail

/// floor(n^(1/k)) for k >= 1.
inline std::uint64_t integer_root(std::uint64_t n, unsigned k) {
    if (k == 0) throw InvalidExponent("integer_root: k must be >= 1");
    if (k == 1 || n < 2) return n;
    if (k >= 64) return 1;
    auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    while (r > 0 && !detail::pow_le_u64(r, k, n)) --r;
    while (detail::pow_le_u64(r + 1, k, n)) ++r;
    return r;
}

inline BigInt integer_root(const BigInt& n, unsigned k) {
    if (k == 0) throw InvalidExponent("integer_root: k must be >= 1");
    if (n < 0) throw DomainError("integer_root: negative argument");
    if (k == 1 || n < 2) return n;
    if (n <= std::numeric_limits<std::uint64_t>::max()) {
        return integer_root(n.convert_to<std::uint64_t>(), k);
    }
    const auto bits = boost::multiprecision::msb(n) + 1;
    // Newton from above; the sequence decreases strictly until it reaches the floor root
    BigInt x = BigInt(1) << static_cast<unsigned>((bits + k - 1) / k);
    for (;;) {
        BigInt y = ((k - 1) * x + n / boost::multiprecision::pow(x, k - 1)) / k;
        if (y >= x) return x;
        x = std::move(y);
    }
}

namespace detail {

inline constexpr std::uint32_t kTrialLimit = 1'000'000;
inline constexpr std::uint64_t kRhoSeed = 0x9e3779b97f4a7c15ULL;
inline constexpr int kProbablePrimeRounds = 40;

inline std::vector<std::uint32_t> sieve_primes(std::uint32_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

inline const std::vector<std::uint32_t>& trial_primes() {
    static const std::vector<std::uint32_t> primes = sieve_primes(kTrialLimit);
    return primes;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline const std::uint64_t kSmallBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Deterministic for every n < 2^64 with the first twelve prime bases.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : kSmallBases) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : kSmallBases) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

inline BigInt random_below(const BigInt& n, std::mt19937_64& rng) {
    const auto words = boost::multiprecision::msb(n) / 64 + 2;
    BigInt v = 0;
    for (std::size_t i = 0; i < words; ++i) v = (v << 64) | BigInt(rng());
    return v % n;
}

inline bool miller_rabin_round(const BigInt& n, const BigInt& a, const BigInt& d, unsigned s) {
    BigInt x = boost::multiprecision::powm(a, d, n);
    const BigInt nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return true;
    }
    return false;
}

// Fixed small bases plus kProbablePrimeRounds seeded random bases.
inline bool is_probable_prime_big(const BigInt& n) {
    for (std::uint64_t p : kSmallBases) {
        if (boost::multiprecision::integer_modulus(n, p) == 0) return n == p;
    }
    BigInt d = n - 1;
    unsigned s = 0;
    while (!boost::multiprecision::bit_test(d, 0)) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : kSmallBases) {
        if (!miller_rabin_round(n, BigInt(a), d, s)) return false;
    }
    std::mt19937_64 rng(kRhoSeed);
    const BigInt span = n - 3;
    for (int i = 0; i < kProbablePrimeRounds; ++i) {
        if (!miller_rabin_round(n, random_below(span, rng) + 2, d, s)) return false;
    }
    return true;
}

// Brent's variant of Pollard rho. n must be odd and composite.
inline std::uint64_t rho_u64(std::uint64_t n, std::mt19937_64& rng) {
    constexpr std::uint64_t batch = 128;
    for (;;) {
        std::uint64_t y = rng() % n;
        const std::uint64_t c = rng() % (n - 1) + 1;
        // 128-bit sum: v^2 mod n plus c can exceed 2^64
        auto f = [&](std::uint64_t v) {
            return static_cast<std::uint64_t>((static_cast<unsigned __int128>(v) * v + c) % n);
        };
        std::uint64_t g = 1, q = 1, x = 0, ys = 0;
        for (std::uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
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
        if (g != n) return g;
    }
}

inline BigInt rho_big(const BigInt& n, std::mt19937_64& rng) {
    constexpr std::uint64_t batch = 128;
    for (;;) {
        BigInt y = random_below(n, rng);
        const BigInt c = random_below(n - 1, rng) + 1;
        auto f = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
        BigInt g = 1, q = 1, x, ys;
        for (std::uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
                    y = f(y);
                    q = q * (x > y ? BigInt(x - y) : BigInt(y - x)) % n;
                }
                g = gcd(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(x > ys ? BigInt(x - ys) : BigInt(ys - x), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

// Largest k with n = b^k, as (b, k); (n, 1) if n is not a perfect power.
// Every prime factor of n is >= kTrialLimit, which bounds k by bits / 19.
inline std::pair<BigInt, unsigned> perfect_power(const BigInt& n) {
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
    for (unsigned k = bits / 19; k >= 2; --k) {
        const BigInt b = integer_root(n, k);
        if (boost::multiprecision::pow(b, k) == n) return {b, k};
    }
    return {n, 1};
}

// n > 1 has no prime factor below kTrialLimit.
inline void split_u64(std::uint64_t n, std::vector<BigInt>& out, std::mt19937_64& rng) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.emplace_back(n);
        return;
    }
    const std::uint64_t d = rho_u64(n, rng);
    split_u64(d, out, rng);
    split_u64(n / d, out, rng);
}

inline void split_big(const BigInt& n, std::vector<BigInt>& out, std::mt19937_64& rng) {
    if (n <= std::numeric_limits<std::uint64_t>::max()) {
        split_u64(n.convert_to<std::uint64_t>(), out, rng);
        return;
    }
    if (is_probable_prime_big(n)) {
        out.push_back(n);
        return;
    }
    // rho needs ~sqrt(p) steps on p^k; peel powers off first
    if (const auto [b, k] = perfect_power(n); k > 1) {
        std::vector<BigInt> base;
        split_big(b, base, rng);
        for (unsigned i = 0; i < k; ++i) out.insert(out.end(), base.begin(), base.end());
        return;
    }
    const BigInt d = rho_big(n, rng);
    split_big(d, out, rng);
    split_big(n / d, out, rng);
}

}  // namespace detail

/// Deterministic primality test below 2^64; 40-round Miller-Rabin above.
inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n <= std::numeric_limits<std::uint64_t>::max()) return detail::is_prime_u64(n.convert_to<std::uint64_t>());
    return detail::is_probable_prime_big(n);
}

/// Prime factorization in increasing prime order; empty for n = 1.
///
/// Trial division by the primes below 10^6, then Brent-Pollard rho with a
/// fixed per-call seed on whatever cofactor remains.
inline std::vector<PrimePower> factorize(const BigInt& n, const BigInt& cap = default_magnitude_cap()) {
    if (n < 1) throw DomainError("factorize: argument must be >= 1");
    if (n > cap) throw MagnitudeExceeded("factorize: argument exceeds magnitude cap " + cap.str());

    constexpr auto u64_max = std::numeric_limits<std::uint64_t>::max();
    const auto& primes = detail::trial_primes();
    std::vector<BigInt> found;
    BigInt m = n;
    std::size_t idx = 0;

    for (; idx < primes.size() && m > u64_max; ++idx) {
        const std::uint32_t p = primes[idx];
        while (m > u64_max && boost::multiprecision::integer_modulus(m, p) == 0) {
            found.emplace_back(p);
            m /= p;
        }
        if (m <= u64_max) break;
    }

    std::mt19937_64 rng(detail::kRhoSeed);
    if (m <= u64_max) {
        auto small = m.convert_to<std::uint64_t>();
        bool exhausted = true;
        for (; idx < primes.size(); ++idx) {
            const std::uint64_t p = primes[idx];
            if (p * p > small) {
                exhausted = false;
                break;
            }
            while (small % p == 0) {
                found.emplace_back(p);
                small /= p;
            }
        }
        if (small > 1) {
            if (exhausted) {
                detail::split_u64(small, found, rng);
            } else {
                found.emplace_back(small);
            }
        }
    } else {
        detail::split_big(m, found, rng);
    }

    std::sort(found.begin(), found.end());
    std::vector<PrimePower> factors;
    for (const auto& p : found) {
        if (!factors.empty() && factors.back().prime == p) {
            ++factors.back().exponent;
        } else {
            factors.push_back({p, 1});
        }
    }
    return factors;
}

inline BigInt radical_from_factors(const std::vector<PrimePower>& factors) {
    BigInt rad = 1;
    for (const auto& f : factors) rad *= f.prime;
    return rad;
}

/// Squarefree kernel of n: the product of its distinct primes.
inline RadicalInfo radical(const BigInt& n, const BigInt& cap = default_magnitude_cap()) {
    RadicalInfo info{n, factorize(n, cap), 0};
    info.radical = radical_from_factors(info.factors);
    return info;
}

/// Radical of x*y*z. Each factor is factored separately, so the cap
/// applies to x, y and z individually rather than to their product.
inline RadicalInfo radical_of_triple(const BigInt& x, const BigInt& y, const BigInt& z,
                                     const BigInt& cap = default_magnitude_cap()) {
    if (x < 2 || y < 2 || z < 2) throw DomainError("radical_of_triple: x, y, z must be >= 2");
    std::vector<PrimePower> merged;
    for (const BigInt* v : {&x, &y, &z}) {
        auto f = factorize(*v, cap);
        merged.insert(merged.end(), f.begin(), f.end());
    }
    std::sort(merged.begin(), merged.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    std::vector<PrimePower> factors;
    for (auto& f : merged) {
        if (!factors.empty() && factors.back().prime == f.prime) {
            factors.back().exponent += f.exponent;
        } else {
            factors.push_back(std::move(f));
        }
    }
    RadicalInfo info{x * y * z, std::move(factors), 0};
    info.radical = radical_from_factors(info.factors);
    return info;
}

/// Parses a nonnegative decimal integer; throws ParseError otherwise.
inline BigInt parse_bigint(const std::string& text) {
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError("not a nonnegative decimal integer: '" + text + "'");
    }
    return BigInt(text);
}

}  // namespace gfe
