#ifndef GFL_UTIL_HPP
#define GFL_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace gfl {

/// Gamma-function ratio Gamma(num)/Gamma(den) through log-Gamma, so large
/// arguments (sigma >> 1) do not overflow. Both arguments must be positive.
inline double gamma_ratio(double num, double den) {
    return std::exp(std::lgamma(num) - std::lgamma(den));
}

/// x^p - y^p for 0 <= y <= x without catastrophic cancellation when x ~ y.
inline double pow_diff(double x, double y, double p) {
    if (y <= 0.0) return std::pow(x, p);
    const double r = (x - y) / y;
    if (r < 0.5) return std::pow(y, p) * std::expm1(p * std::log1p(r));
    return std::pow(x, p) - std::pow(y, p);
}

/// (1 - exp(-z))/z, the first exponential-integrator weight; stable at z ~ 0.
inline double phi1(double z) {
    if (std::abs(z) < 1e-8) return 1.0 - 0.5 * z;
    return -std::expm1(-z) / z;
}

/// Exact moments of the power kernel on one interval, parameterized by the
/// interval width delta and the gap Y between the interval and the kernel's
/// singular point -- never by the difference of two large distances, which
/// would cancel catastrophically once delta falls below one ulp of Y (the
/// geometric step schedules reach Y/delta ~ 1e18). The first moment is
/// returned width-normalized: the raw moment would overflow near the top of
/// double range where Y^(mu+1) does not exist.
///   ascending :  integrals over [0,delta] of (Y + x)^(mu-1)       {1, x/delta} dx
///   descending:  integrals over [0,delta] of (Y + delta-x)^(mu-1) {1, x/delta} dx
/// for mu in (0,1], Y >= 0.
struct PowerMoments {
    double m0;
    double m1_avg;  // (1/delta) * first moment
};

inline PowerMoments power_moments_ascending(double Y, double delta, double mu) {
    PowerMoments m;
    if (Y <= 0.0) {
        m.m0 = std::pow(delta, mu) / mu;
        m.m1_avg = std::pow(delta, mu) / (mu + 1.0);
        return m;
    }
    const double r = delta / Y;
    const double L = std::log1p(r);
    const double base = std::pow(Y, mu);
    m.m0 = base * std::expm1(mu * L) / mu;
    if (r < 1e-4) {
        m.m1_avg =
            base * r * (0.5 + (mu - 1.0) * r / 3.0 + (mu - 1.0) * (mu - 2.0) * r * r / 8.0);
    } else {
        const double bracket = std::expm1((mu + 1.0) * L) / (mu + 1.0) - std::expm1(mu * L) / mu;
        m.m1_avg = base * bracket / r;
    }
    return m;
}

inline PowerMoments power_moments_descending(double Y, double delta, double mu) {
    PowerMoments asc = power_moments_ascending(Y, delta, mu);
    return {asc.m0, asc.m0 - asc.m1_avg};
}

/// Quintic smoothstep: 0 at u<=0, 1 at u>=1, C^2 across the joins.
inline double smoothstep5(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}
inline double smoothstep5_d1(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return 30.0 * u * u * (1.0 - u) * (1.0 - u);
}
inline double smoothstep5_d2(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u);
}

/// Surface area of the unit sphere S^(d-1) in R^d; omega(1) = 2 covers the
/// two-point "sphere" of the 1-D radial measure.
inline double unit_sphere_area(int d) {
    return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

/// Deterministic 2-D Halton point (bases 2 and 3), index >= 0.
inline void halton2(std::uint64_t index, double& x, double& y) {
    auto radical_inverse = [](std::uint64_t i, std::uint64_t base) {
        double f = 1.0, r = 0.0;
        while (i > 0) {
            f /= static_cast<double>(base);
            r += f * static_cast<double>(i % base);
            i /= base;
        }
        return r;
    };
    x = radical_inverse(index + 1, 2);
    y = radical_inverse(index + 1, 3);
}

/// FNV-1a 64-bit hash, hex-encoded; used for config fingerprints in reports.
inline std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

}  // namespace gfl

#endif
