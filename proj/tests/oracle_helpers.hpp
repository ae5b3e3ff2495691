// Independent slow reference implementations used only by the test suites.
// These deliberately avoid the library's own code paths: separate series,
// separate quadrature, extended precision where it helps.
#ifndef GHCOV_TEST_ORACLE_HELPERS_HPP
#define GHCOV_TEST_ORACLE_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace testoracle {

inline constexpr long double kPiL = 3.14159265358979323846264338327950288L;

// ln Gamma by Stirling with a deep recurrence shift; independent of the
// library's shift/threshold choices.
inline long double lgamma_ld(long double x) {
    static const long double c[] = {
        1.0L / 12.0L, -1.0L / 360.0L, 1.0L / 1260.0L, -1.0L / 1680.0L, 1.0L / 1188.0L,
        -691.0L / 360360.0L, 1.0L / 156.0L, -3617.0L / 122400.0L, 43867.0L / 244188.0L,
        -174611.0L / 125400.0L};
    if (x < 0.5L) {
        long double s = std::sin(kPiL * x);
        return std::log(kPiL / std::fabs(s)) - lgamma_ld(1.0L - x);
    }
    long double shift = 0.0L;
    while (x < 32.0L) {
        shift += std::log(x);
        x += 1.0L;
    }
    long double inv = 1.0L / x, inv2 = inv * inv, p = inv, s = 0.0L;
    for (long double ck : c) {
        s += ck * p;
        p *= inv2;
    }
    return (x - 0.5L) * std::log(x) - x + 0.91893853320467274178032973640561764L + s - shift;
}

inline long double gamma_ld(long double x) {
    if (x <= 0.0L && std::fabs(x - std::roundl(x)) < 1e-18L)
        throw std::domain_error("gamma_ld pole");
    long double lg = lgamma_ld(x);
    long double sgn = 1.0L;
    if (x < 0.0L) {
        long double s = std::sin(kPiL * x);
        sgn = (s < 0.0L) ? -1.0L : 1.0L;
    }
    return sgn * std::exp(lg);
}

// Compensated long double pFq series; throws on failure to shrink.
inline long double pfq_series_ld(const std::vector<long double>& up,
                                 const std::vector<long double>& lo, long double x,
                                 int max_terms = 30000) {
    long double sum = 1.0L, comp = 0.0L, term = 1.0L;
    for (int n = 0; n < max_terms; ++n) {
        long double r = 1.0L;
        for (long double a : up) r *= (a + n);
        for (long double b : lo) r /= (b + n);
        term *= r * x / (n + 1.0L);
        long double y = term - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::fabs(term) < 1e-24L * std::fabs(sum) + 1e-300L) return sum;
    }
    throw std::runtime_error("pfq_series_ld did not converge");
}

// Adaptive Simpson, independent of the library integrator.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 60) {
    auto simpson = [&](double lo, double hi) {
        double m = 0.5 * (lo + hi);
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(m) + f(hi));
    };
    std::function<double(double, double, double, double, int)> rec =
        [&](double lo, double hi, double whole, double eps, int d) -> double {
        double m = 0.5 * (lo + hi);
        double l = simpson(lo, m), r = simpson(m, hi);
        if (d <= 0 || std::abs(l + r - whole) < 15.0 * eps)
            return l + r + (l + r - whole) / 15.0;
        return rec(lo, m, l, eps / 2.0, d - 1) + rec(m, hi, r, eps / 2.0, d - 1);
    };
    return rec(a, b, simpson(a, b), tol, depth);
}

// Bessel J for real order by its integral representation
//   J_nu(x) = (1/pi) int_0^pi cos(nu t - x sin t) dt
//           - sin(nu pi)/pi int_0^inf exp(-x sinh s - nu s) ds,  x > 0.
inline double bessel_j_integral(double nu, double x, double tol = 1e-13) {
    double main = adaptive_simpson(
                      [&](double t) { return std::cos(nu * t - x * std::sin(t)); }, 0.0,
                      static_cast<double>(kPiL), tol) /
                  static_cast<double>(kPiL);
    double snp = std::sin(nu * static_cast<double>(kPiL));
    if (std::abs(snp) < 1e-15) return main;
    double S = 1.0;
    while (x * std::sinh(S) + nu * S < 50.0 && S < 40.0) S += 0.5;
    double tail = adaptive_simpson(
        [&](double s) { return std::exp(-x * std::sinh(s) - nu * s); }, 0.0, S, tol);
    return main - snp / static_cast<double>(kPiL) * tail;
}

// Deterministic splitmix64 for reproducible pseudo-random test sweeps.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
    return (splitmix64(state) >> 11) * 0x1.0p-53;
}

} // namespace testoracle

#endif
