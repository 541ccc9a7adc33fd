#pragma once

// Scalar formulas attached to x^p + y^q = z^r: the exponent sum chi, the
// phi function, the lower bound L on chi, Wong's explicit inequality, the cap
// on log log G, and the negative bound derived from the exponential
// Stewart-Yu inequality. Natural logs throughout.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "gfe/arith.hpp"
#include "gfe/errors.hpp"

namespace gfe {

using Rational = boost::multiprecision::cpp_rational;

/// Constants consumed from the explicit abc-type results.
struct Constants {
    /// Wong's exponent constant c in log z < G^{1/3 + c / log log G}.
    static constexpr double wong_c = 15.0;
    static constexpr double forty_five = 3.0 * wong_c;
    /// Natural log of Chim's constant c = e^{2.6e44}. c itself is never formed.
    static constexpr double chim_ln_c = 2.6e44;
    /// Laishram-Shorey bound 4/7, conditional on Baker's explicit abc conjecture.
    static Rational ls_bound() { return Rational(4, 7); }
    /// Chim-Shorey-Sinha bound 1/1.72 = 25/43, also conditional.
    static Rational css_bound() { return Rational(25, 43); }
    static constexpr double css_bound_real = 1.0 / 1.72;
};

static_assert(Constants::forty_five == 3.0 * Constants::wong_c);

enum class SignatureClass { spherical, parabolic, hyperbolic };

inline std::string_view to_string(SignatureClass c) {
    switch (c) {
        case SignatureClass::spherical: return "spherical";
        case SignatureClass::parabolic: return "parabolic";
        case SignatureClass::hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

struct ExponentTriple {
    Exponent p = 0;
    Exponent q = 0;
    Exponent r = 0;
    /// 1/p + 1/q + 1/r in lowest terms.
    Rational chi;
    SignatureClass signature_class = SignatureClass::parabolic;

    BigInt chi_num() const { return boost::multiprecision::numerator(chi); }
    BigInt chi_den() const { return boost::multiprecision::denominator(chi); }
    double chi_value() const { return chi.convert_to<double>(); }
};

/// Exact chi for exponents >= 2. The classification uses only the rational.
inline ExponentTriple chi(Exponent p, Exponent q, Exponent r) {
    if (p < 2 || q < 2 || r < 2) throw InvalidExponent("chi: exponents must be >= 2");
    ExponentTriple t{p, q, r, Rational(1, p) + Rational(1, q) + Rational(1, r), SignatureClass::parabolic};
    if (t.chi < 1) {
        t.signature_class = SignatureClass::hyperbolic;
    } else if (t.chi > 1) {
        t.signature_class = SignatureClass::spherical;
    }
    return t;
}

namespace detail {

inline const double kLn3 = std::log(3.0);

inline void require_power_at_least_8(const BigInt& z, Exponent r, const char* who) {
    if (z < 2 || r < 1) throw DomainError(std::string(who) + ": requires z >= 2 and r >= 1");
    if (!power_at_least(z, r, 8)) throw DomainError(std::string(who) + ": requires z^r >= 8");
}

inline double loglog_radical(const BigInt& G, const char* who) {
    if (G < 30) throw GTooSmall(std::string(who) + ": G must be >= 30, got " + G.str());
    return std::log(ln_big(G));
}

}  // namespace detail

/// phi evaluated from ln x; requires x >= 3.
inline double phi_from_log(double ln_x) {
    if (!(ln_x >= detail::kLn3)) throw DomainError("phi: argument must be >= 3");
    return 3.0 * std::log(ln_x) / ln_x;
}

/// phi(x) = 3 ln ln x / ln x.
inline double phi(double x) {
    if (!(x >= 3.0)) throw DomainError("phi: argument must be >= 3");
    return phi_from_log(std::log(x));
}

inline double phi(const BigInt& n) {
    if (n < 3) throw DomainError("phi: argument must be >= 3");
    return phi_from_log(ln_big(n));
}

/// phi(z^r) through r ln z; z^r is never formed.
inline double phi_power(const BigInt& z, Exponent r) {
    if (z < 2 || r < 1 || !power_at_least(z, r, 3)) throw DomainError("phi: argument must be >= 3");
    return phi_from_log(static_cast<double>(r) * ln_big(z));
}

/// Lower bound L = phi(z^r) / (1 + 45 / ln ln G). Every solution has L < chi.
inline double lower_bound(const BigInt& z, Exponent r, const BigInt& G) {
    detail::require_power_at_least_8(z, r, "lower_bound");
    const double llg = detail::loglog_radical(G, "lower_bound");
    return phi_power(z, r) / (1.0 + Constants::forty_five / llg);
}

struct WongCheck {
    bool holds = false;
    /// (1/3 + 15 / ln ln G) ln G - ln ln(z^r); positive iff the inequality holds.
    double margin_log = 0.0;
};

/// ln(z^r) < G^{1/3 + 15 / ln ln G}, compared in log space.
inline WongCheck wong_check(const BigInt& z, Exponent r, const BigInt& G) {
    if (z < 2 || r < 1) throw DomainError("wong_check: requires z >= 2 and r >= 1");
    const double llg = detail::loglog_radical(G, "wong_check");
    const double lhs_log = std::log(static_cast<double>(r)) + std::log(ln_big(z));
    const double rhs_log = (1.0 / 3.0 + Constants::wong_c / llg) * ln_big(G);
    const double margin = rhs_log - lhs_log;
    return {margin > 0.0, margin};
}

/// Everything the lower-bound theorem says about one (z, r, G), plus the
/// comparison against chi when the exponents p, q are known.
struct BoundReport {
    double log_zr = 0.0;
    double loglog_zr = 0.0;
    double phi_zr = 0.0;
    BigInt G;
    double loglog_G = 0.0;
    double lower_bound_L = 0.0;
    bool wong_ok = false;
    double wong_margin_log = 0.0;

    struct ChiComparison {
        ExponentTriple exponents;
        double chi = 0.0;
        bool theorem_satisfied = false;  // L < chi
        double margin = 0.0;             // chi - L
    };
    std::optional<ChiComparison> chi_check;
};

inline BoundReport bound_report(const BigInt& z, Exponent r, const BigInt& G,
                                const std::optional<ExponentTriple>& exponents = std::nullopt) {
    BoundReport rep;
    rep.lower_bound_L = lower_bound(z, r, G);
    rep.log_zr = static_cast<double>(r) * ln_big(z);
    rep.loglog_zr = std::log(rep.log_zr);
    rep.phi_zr = phi_power(z, r);
    rep.G = G;
    rep.loglog_G = std::log(ln_big(G));
    const auto w = wong_check(z, r, G);
    rep.wong_ok = w.holds;
    rep.wong_margin_log = w.margin_log;
    if (exponents) {
        if (exponents->r != r) throw PreconditionFailed("bound_report: exponent triple has a different r");
        BoundReport::ChiComparison c{*exponents, exponents->chi_value(), false, 0.0};
        c.margin = c.chi - rep.lower_bound_L;
        c.theorem_satisfied = rep.lower_bound_L < c.chi;
        rep.chi_check = c;
    }
    return rep;
}

/// phi(z^r) / chi in the factored form pq / ((p + q) r + pq) * 3 ln ln(z^r) / ln z.
inline double phi_chi_ratio(Exponent p, Exponent q, Exponent r, const BigInt& z) {
    if (p < 2 || q < 2 || r < 2) throw InvalidExponent("phi_chi_ratio: exponents must be >= 2");
    detail::require_power_at_least_8(z, r, "phi_chi_ratio");
    const BigInt pq = BigInt(p) * q;
    const double factor = Rational(pq, (BigInt(p) + q) * r + pq).convert_to<double>();
    const double ln_z = ln_big(z);
    return factor * 3.0 * std::log(static_cast<double>(r) * ln_z) / ln_z;
}

/// The same ratio as a direct quotient phi(z^r) / chi.
inline double phi_chi_ratio_direct(Exponent p, Exponent q, Exponent r, const BigInt& z) {
    const auto t = chi(p, q, r);
    detail::require_power_at_least_8(z, r, "phi_chi_ratio");
    return phi_power(z, r) / t.chi_value();
}

enum class CapKind { cap, unbounded, contradiction };

inline std::string_view to_string(CapKind k) {
    switch (k) {
        case CapKind::cap: return "cap";
        case CapKind::unbounded: return "unbounded";
        case CapKind::contradiction: return "contradiction";
    }
    return "unknown";
}

/// Bound on ln ln G implied by L < chi. Only kind == cap carries a value.
struct GCap {
    CapKind kind = CapKind::contradiction;
    double ratio = 0.0;
    double loglog_cap = 0.0;
};

inline constexpr double kUnboundedTolerance = 1e-12;

/// Case split on phi(z^r)/chi. A ratio is never exactly 1 for integer
/// inputs, so "equal" means within kUnboundedTolerance.
inline GCap g_cap_from_ratio(double ratio, double tolerance = kUnboundedTolerance) {
    if (std::isnan(ratio)) throw DomainError("g_cap: ratio is NaN");
    if (std::abs(ratio - 1.0) <= tolerance) return {CapKind::unbounded, ratio, 0.0};
    if (ratio > 1.0) return {CapKind::cap, ratio, Constants::forty_five / (ratio - 1.0)};
    return {CapKind::contradiction, ratio, 0.0};
}

inline GCap g_cap_loglog(Exponent p, Exponent q, Exponent r, const BigInt& z) {
    return g_cap_from_ratio(phi_chi_ratio(p, q, r, z));
}

/// -3 (2 ln ln(z^r) + ln c) / (ln(z^r) + 9), with c passed as ln c.
inline double negative_bound(const BigInt& z, Exponent r, double ln_c) {
    detail::require_power_at_least_8(z, r, "negative_bound");
    if (!std::isfinite(ln_c)) throw DomainError("negative_bound: ln c must be finite");
    const double log_zr = static_cast<double>(r) * ln_big(z);
    return -3.0 * (2.0 * std::log(log_zr) + ln_c) / (log_zr + 9.0);
}

/// ln of the threshold 1 / (sqrt(c) ln z) below which r makes the negative bound positive.
inline double r_threshold_log(const BigInt& z, double ln_c) {
    if (z < 2) throw DomainError("r_threshold_log: requires z >= 2");
    return -ln_c / 2.0 - std::log(ln_big(z));
}

/// Sign predicate of negative_bound through the threshold: ln r > threshold.
inline bool negative_bound_is_negative(const BigInt& z, Exponent r, double ln_c) {
    if (r < 1) throw DomainError("negative_bound_is_negative: requires r >= 1");
    return std::log(static_cast<double>(r)) > r_threshold_log(z, ln_c);
}

/// How chi compares with the bounds that assume Baker's explicit abc conjecture.
struct ConditionalComparison {
    bool exceeds_ls = false;   // chi > 4/7
    bool exceeds_css = false;  // chi > 1/1.72
};

inline ConditionalComparison conditional_comparison(const Rational& chi_value) {
    return {chi_value > Constants::ls_bound(), chi_value > Constants::css_bound()};
}

}  // namespace gfe
