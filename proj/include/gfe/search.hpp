#pragma once

// Exhaustive enumeration of primitive solutions of x^p + y^q = z^r inside
// configurable caps, and a catalog of the known ones.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "gfe/arith.hpp"
#include "gfe/bounds.hpp"
#include "gfe/errors.hpp"

namespace gfe {

struct Solution {
    BigInt x;
    Exponent p = 0;
    BigInt y;
    Exponent q = 0;
    BigInt z;
    Exponent r = 0;

    friend bool operator==(const Solution&, const Solution&) = default;

    std::string str() const {
        return x.str() + "^" + std::to_string(p) + " + " + y.str() + "^" + std::to_string(q) + " = " + z.str() +
               "^" + std::to_string(r);
    }
};

inline auto solution_key(const Solution& s) { return std::tie(s.x, s.p, s.y, s.q, s.z, s.r); }

/// Swaps the two summands so that x^p <= y^q.
inline Solution canonical(const Solution& s, const BigInt& cap = default_magnitude_cap()) {
    if (checked_pow(s.x, s.p, cap) <= checked_pow(s.y, s.q, cap)) return s;
    return {s.y, s.q, s.x, s.p, s.z, s.r};
}

struct SearchConfig {
    std::uint64_t max_base = 0;  // cap on x, y, z
    Exponent min_exp = 2;
    Exponent max_exp = 0;
    BigInt max_magnitude = 0;  // cap on z^r
    bool require_coprime = true;
    bool canonical_only = true;  // emit only x^p <= y^q
    bool hyperbolic_only = true;  // 1/p + 1/q + 1/r < 1
    unsigned jobs = 1;

    void validate() const {
        if (max_base < 2) throw InvalidConfig("max_base must be >= 2");
        if (min_exp < 2) throw InvalidConfig("min_exp must be >= 2");
        if (max_exp < min_exp) throw InvalidConfig("max_exp must be >= min_exp");
        if (max_magnitude < 8) throw InvalidConfig("max_magnitude must be >= 8");
        if (jobs < 1) throw InvalidConfig("jobs must be >= 1");
    }
};

/// Exact check of the equation and of gcd(x, y, z) = 1.
inline bool verify_solution(const Solution& s, const BigInt& cap = default_magnitude_cap()) {
    if (s.x < 2 || s.y < 2 || s.z < 2 || s.p < 2 || s.q < 2 || s.r < 2) return false;
    const BigInt lhs = checked_pow(s.x, s.p, cap) + checked_pow(s.y, s.q, cap);
    const BigInt rhs = checked_pow(s.z, s.r, cap);
    return lhs == rhs && triple_gcd(s.x, s.y, s.z) == 1;
}

namespace detail {

template <class Int>
struct Power {
    Int value;
    std::uint64_t base;
    Exponent exp;
};

template <class Int>
struct Hit {
    Int magnitude;
    std::uint64_t x, p, y, q, z, r;

    auto key() const { return std::tie(magnitude, x, p, y, q, z, r); }
};

inline bool pow_fits(std::uint64_t base, Exponent exp, const std::uint64_t& cap, std::uint64_t& out) {
    unsigned __int128 acc = 1;
    for (Exponent i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > cap) return false;
    }
    out = static_cast<std::uint64_t>(acc);
    return true;
}

inline bool pow_fits(std::uint64_t base, Exponent exp, const BigInt& cap, BigInt& out) {
    if (!power_at_least(BigInt(base), exp, cap + 1)) {
        out = boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
        return true;
    }
    return false;
}

// All b^e <= cap with 2 <= b <= max_base and e in range, ordered by value.
template <class Int>
std::vector<Power<Int>> powers_up_to(std::uint64_t max_base, Exponent min_exp, Exponent max_exp, const Int& cap) {
    std::vector<Power<Int>> out;
    for (Exponent e = min_exp; e <= max_exp; ++e) {
        Int v;
        if (!pow_fits(2, e, cap, v)) break;
        for (std::uint64_t b = 2; b <= max_base; ++b) {
            if (!pow_fits(b, e, cap, v)) break;
            out.push_back({v, b, e});
        }
    }
    std::sort(out.begin(), out.end(), [](const Power<Int>& a, const Power<Int>& b) {
        return std::tie(a.value, a.base, a.exp) < std::tie(b.value, b.base, b.exp);
    });
    return out;
}

inline bool is_hyperbolic(Exponent p, Exponent q, Exponent r) {
    const BigInt bp(p), bq(q), br(r);
    return bq * br + bp * br + bp * bq < bp * bq * br;
}

template <class Int>
void scan_target(const Power<Int>& target, const std::vector<Power<Int>>& powers, const SearchConfig& cfg,
                 std::vector<Hit<Int>>& hits) {
    const Int limit = cfg.canonical_only ? Int(target.value / 2) : Int(target.value - 1);
    for (const auto& xp : powers) {
        if (xp.value > limit) break;
        const Int residue = target.value - xp.value;
        for (Exponent q = cfg.min_exp; q <= cfg.max_exp; ++q) {
            const auto y = integer_root(residue, static_cast<unsigned>(std::min<Exponent>(q, 1 << 20)));
            if (y < 2) break;
            if (y > cfg.max_base) continue;
            Int yq;
            const auto ybase = static_cast<std::uint64_t>(y);
            if (!pow_fits(ybase, q, residue, yq) || yq != residue) continue;
            if (cfg.require_coprime && std::gcd(std::gcd(xp.base, ybase), target.base) != 1) continue;
            if (cfg.hyperbolic_only && !is_hyperbolic(xp.exp, q, target.exp)) continue;
            hits.push_back({target.value, xp.base, static_cast<std::uint64_t>(xp.exp), ybase,
                            static_cast<std::uint64_t>(q), target.base, static_cast<std::uint64_t>(target.exp)});
        }
    }
}

template <class Int>
std::vector<Hit<Int>> run_search(const SearchConfig& cfg, const Int& max_magnitude) {
    const auto powers = powers_up_to<Int>(cfg.max_base, cfg.min_exp, cfg.max_exp, max_magnitude);
    const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(powers.size())));
    std::vector<std::vector<Hit<Int>>> shards(jobs);
    auto work = [&](unsigned shard) {
        for (std::size_t i = shard; i < powers.size(); i += jobs) scan_target(powers[i], powers, cfg, shards[shard]);
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(jobs);
        for (unsigned s = 0; s < jobs; ++s) workers.emplace_back(work, s);
    }
    std::vector<Hit<Int>> merged;
    for (auto& s : shards) merged.insert(merged.end(), s.begin(), s.end());
    std::sort(merged.begin(), merged.end(), [](const Hit<Int>& a, const Hit<Int>& b) { return a.key() < b.key(); });
    return merged;
}

template <class Int>
std::vector<Solution> to_solutions(const std::vector<Hit<Int>>& hits) {
    std::vector<Solution> out;
    out.reserve(hits.size());
    for (const auto& h : hits) {
        out.push_back({BigInt(h.x), static_cast<Exponent>(h.p), BigInt(h.y), static_cast<Exponent>(h.q), BigInt(h.z),
                       static_cast<Exponent>(h.r)});
    }
    return out;
}

}  // namespace detail

/// Every solution inside the caps, sorted by z^r and then by
/// (x, p, y, q, z, r). The order does not depend on cfg.jobs.
///
/// Outer loop over the targets z^r, inner loop over x^p on the canonical
/// side, then an integer-root test of the residue for each exponent q.
/// Magnitudes up to 2^62 run on machine words.
inline std::vector<Solution> enumerate_solutions(const SearchConfig& cfg) {
    cfg.validate();
    if (cfg.max_magnitude <= (BigInt(1) << 62)) {
        return detail::to_solutions(detail::run_search<std::uint64_t>(cfg, cfg.max_magnitude.convert_to<std::uint64_t>()));
    }
    return detail::to_solutions(detail::run_search<BigInt>(cfg, cfg.max_magnitude));
}

/// Shared-magnitude group ids for a list sorted by z^r: entries with the
/// same z^r (for example 2^9 and 8^3) get the same id.
inline std::vector<std::size_t> magnitude_groups(std::span<const Solution> sols,
                                                 const BigInt& cap = default_magnitude_cap()) {
    std::vector<std::size_t> ids;
    ids.reserve(sols.size());
    BigInt prev = -1;
    std::size_t id = 0;
    for (const auto& s : sols) {
        BigInt mag = checked_pow(s.z, s.r, cap);
        if (!ids.empty() && mag != prev) ++id;
        ids.push_back(id);
        prev = std::move(mag);
    }
    return ids;
}

/// Throws CatalogCorrupt unless every entry passes verify_solution.
inline void verify_catalog(std::span<const Solution> entries) {
    for (const auto& s : entries) {
        bool ok = false;
        try {
            ok = verify_solution(s);
        } catch (const MagnitudeExceeded&) {
            ok = false;
        }
        if (!ok) throw CatalogCorrupt("catalog entry fails exact verification: " + s.str());
    }
}

/// The known primitive solutions with bases >= 2, re-verified on every call.
inline std::vector<Solution> known_catalog() {
    std::vector<Solution> cat = {
        {2, 5, 7, 2, 3, 4},
        {7, 3, 13, 2, 2, 9},
        {2, 7, 17, 3, 71, 2},
        {3, 5, 11, 4, 122, 2},
        {17, 7, 76271, 3, 21063928, 2},
        {1414, 3, 2213459, 2, 65, 7},
        {9262, 3, 15312283, 2, 113, 7},
        {43, 8, 96222, 3, 30042907, 2},
        {33, 8, 1549034, 2, 15613, 3},
    };
    verify_catalog(cat);
    return cat;
}

}  // namespace gfe
