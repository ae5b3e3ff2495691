#include "ghcov/specfun.hpp"
#include "ghcov/errors.hpp"
#include "ghcov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ghcov {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool near_integer(double x, double tol) {
    return std::abs(x - std::round(x)) <= tol;
}

// Stirling series for ln Gamma, accurate for x >= 20 (long double internally).
long double stirling_lgamma(long double x) {
    // B_{2k}/(2k(2k-1)) for k = 1..9
    static const long double c[] = {
        1.0L / 12.0L,       -1.0L / 360.0L,      1.0L / 1260.0L,
        -1.0L / 1680.0L,    1.0L / 1188.0L,      -691.0L / 360360.0L,
        1.0L / 156.0L,      -3617.0L / 122400.0L, 43867.0L / 244188.0L};
    const long double half_log_2pi = 0.91893853320467274178032973640561764L;
    long double inv = 1.0L / x, inv2 = inv * inv, p = inv, s = 0.0L;
    for (const long double ck : c) {
        s += ck * p;
        p *= inv2;
    }
    return (x - 0.5L) * std::log(x) - x + half_log_2pi + s;
}

constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// sin(pi x) and cos(pi x) reduced through f = x - round(x), which is exact in
// floating point; keeps full relative accuracy near integer x.
long double sin_pi(long double x) {
    long double n = std::nearbyint(x);
    long double f = x - n;
    long double s = std::sin(kPiL * f);
    bool odd = std::fmod(std::abs(n), 2.0L) == 1.0L;
    return odd ? -s : s;
}

long double cos_pi(long double x) {
    long double n = std::nearbyint(x);
    long double f = x - n;
    long double c = std::cos(kPiL * f);
    bool odd = std::fmod(std::abs(n), 2.0L) == 1.0L;
    return odd ? -c : c;
}

bool near_integer_ld(long double x, long double tol) {
    return std::abs(x - std::nearbyint(x)) <= tol;
}

} // namespace

static long double log_gamma_ld(long double x, int* sign) {
    if (sign) *sign = 1;
    if (std::isnan((double)x)) throw validation_error("log_gamma: NaN argument");
    if (x <= 0.0L && near_integer_ld(x, 0.0L))
        throw validation_error("log_gamma: pole at nonpositive integer x=" +
                               std::to_string((double)x));
    if (x == 1.0L || x == 2.0L) return 0.0L;
    if (x < 0.5L) {
        // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)).
        long double s = sin_pi(x);
        long double lg = std::log(kPiL / std::abs(s)) - log_gamma_ld(1.0L - x, nullptr);
        if (sign) *sign = (s < 0.0L) ? -1 : 1;
        return lg;
    }
    long double z = x;
    long double shift = 0.0L;
    while (z < 20.0L) {
        shift += std::log(z);
        z += 1.0L;
    }
    return stirling_lgamma(z) - shift;
}

double log_gamma(double x, int* sign) {
    return static_cast<double>(log_gamma_ld(x, sign));
}

double gamma_fn(double x) {
    int s = 1;
    double lg = log_gamma(x, &s);
    return s * std::exp(lg);
}

double rgamma(double x) {
    if (x <= 0.0 && near_integer(x, 0.0)) return 0.0;
    int s = 1;
    double lg = log_gamma(x, &s);
    if (lg > 700.0) return 0.0;
    return s * std::exp(-lg);
}

// ---------------------------------------------------------------------------
// Bessel J
// ---------------------------------------------------------------------------

namespace {

// Ascending series, reliable for x <= ~9 where cancellation stays mild.
double bessel_j_series(double nu, double x) {
    // First term (x/2)^nu / Gamma(nu+1); nu = -1 makes it vanish and the
    // series starts at k = 1.
    long double x2 = (long double)x * x / 4.0L;
    long double sum = 0.0L, term;
    double lead = rgamma(nu + 1.0);
    if (lead != 0.0) {
        term = (long double)(lead)*std::exp((long double)nu * std::log((long double)x / 2.0L));
    } else {
        // nu is a negative integer (only nu = -1 in the supported range).
        term = -std::exp((nu + 2.0) * std::log((long double)x / 2.0L)) * (long double)rgamma(nu + 2.0);
        sum += term;
        term *= -x2 / (2.0L * (nu + 2.0L));
        long double k = 1.0L;
        for (int i = 2; i < 400; ++i) {
            sum += term;
            if (std::abs(term) < 1e-20L * std::abs(sum) + 1e-320L) break;
            k += 1.0L;
            term *= -x2 / ((k + 1.0L) * (nu + k + 1.0L));
        }
        return static_cast<double>(sum);
    }
    for (int k = 0; k < 400; ++k) {
        sum += term;
        if (std::abs(term) < 1e-20L * std::abs(sum) + 1e-320L) break;
        term *= -x2 / ((k + 1.0L) * (nu + k + 1.0L));
    }
    return static_cast<double>(sum);
}

// Hankel asymptotic expansion, for x comfortably beyond nu^2.
double bessel_j_asymptotic(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    long double p = 1.0L, q = 0.0L, term = 1.0L;
    // a_k = prod_{j=1..k} (mu - (2j-1)^2) / (k! 8^k x^k), alternating into P, Q.
    long double prev = std::numeric_limits<long double>::max();
    for (int k = 1; k <= 40; ++k) {
        term *= (mu - (2.0L * k - 1.0L) * (2.0L * k - 1.0L)) / (k * 8.0L * x);
        if (std::abs(term) > prev) break; // divergence point of the asymptotic series
        prev = std::abs(term);
        int m = k % 4;
        if (m == 1) q += term;
        else if (m == 2) p -= term;
        else if (m == 3) q -= term;
        else p += term;
        if (std::abs(term) < 1e-19L) break;
    }
    double chi = x - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) *
           (static_cast<double>(p) * std::cos(chi) - static_cast<double>(q) * std::sin(chi));
}

// Miller backward recurrence with the (x/2)^mu normalization sum,
// for the intermediate zone where neither series nor asymptotics are safe.
double bessel_j_miller(double nu, double x) {
    double base = nu - std::floor(nu); // fractional order in [0,1)
    int steps = static_cast<int>(nu - base + 0.5);
    int extra = static_cast<int>(x + 20.0 + 12.0 * std::sqrt(x));
    int top = steps + extra + (extra % 2); // start well above both order and argument
    long double jp = 0.0L, jc = 1e-280L;
    long double norm = 0.0L;
    // weight_k for order base+2k: k=0 -> Gamma(base+1); k>=1 -> (base+2k) Gamma(base+k)/k!
    // accumulate while descending: simpler to collect values first.
    std::vector<long double> vals(static_cast<size_t>(top) + 1, 0.0L);
    vals[static_cast<size_t>(top)] = jc;
    for (int j = top; j >= 1; --j) {
        long double jm = (2.0L * (base + j)) / x * jc - jp;
        jp = jc;
        jc = jm;
        vals[static_cast<size_t>(j - 1)] = jc;
        if (std::abs(jc) > 1e260L) {
            for (auto& v : vals) v *= 1e-260L;
            jc *= 1e-260L;
            jp *= 1e-260L;
        }
    }
    long double w = std::exp((long double)log_gamma(base + 1.0)); // = Gamma(base+1)
    norm = w * vals[0];
    long double gamma_ratio = w; // tracks (base+2k) Gamma(base+k)/k! iteratively
    for (int k = 1; 2 * k <= top; ++k) {
        // weight ratio w_k/w_{k-1}: ((base+2k)/(base+2k-2)) * (base+k-1)/k
        if (k == 1) {
            // w_1 = (base+2) Gamma(base+1)/1! ; w_0 = Gamma(base+1) (as mu*Gamma(mu) limit)
            gamma_ratio = w * (base + 2.0L);
        } else {
            gamma_ratio *= (base + 2.0L * k) / (base + 2.0L * k - 2.0L) * (base + k - 1.0L) / k;
        }
        norm += gamma_ratio * vals[static_cast<size_t>(2 * k)];
    }
    long double scale = std::exp((long double)base * std::log((long double)x / 2.0L)) / norm;
    return static_cast<double>(vals[static_cast<size_t>(steps)] * scale);
}

} // namespace

double bessel_j(double nu, double x) {
    if (x < 0.0) throw validation_error("bessel_j: requires x >= 0");
    if (nu < -1.0) throw validation_error("bessel_j: requires nu >= -1");
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        if (nu == -1.0) return 0.0;
        return std::numeric_limits<double>::infinity();
    }
    if (nu < 0.0 && nu > -1.0) {
        if (x <= 9.0) return bessel_j_series(nu, x);
        // one stable downward step from positive orders
        double mu = nu + 1.0;
        double j1 = bessel_j(mu, x), j2 = bessel_j(mu + 1.0, x);
        return (2.0 * mu / x) * j1 - j2;
    }
    if (x <= 9.0) return bessel_j_series(nu, x);
    if (x >= std::max(20.0, 1.6 * nu * nu + 6.0)) return bessel_j_asymptotic(nu, x);
    return bessel_j_miller(nu, x);
}

// ---------------------------------------------------------------------------
// Bessel K via the cosh integral representation
// ---------------------------------------------------------------------------

double bessel_k(double nu, double x) {
    if (!(x > 0.0)) throw validation_error("bessel_k: requires x > 0");
    nu = std::abs(nu);
    // K_nu(x) = e^{-x} int_0^inf e^{-x(cosh t - 1)} cosh(nu t) dt.
    // Find T where the integrand drops below ~e^-60 of its maximum, then
    // integrate in scaled form to dodge overflow at large nu / small x.
    double T = std::acosh(1.0 + 60.0 / x) + 1.0;
    for (int i = 0; i < 80; ++i) {
        if (-x * (std::cosh(T) - 1.0) + nu * T < -60.0) break;
        T += 0.5;
    }
    double fmax_log = 0.0;
    for (double t = 0.0; t <= T; t += T / 64.0) {
        double lf = -x * (std::cosh(t) - 1.0) + std::log(std::cosh(nu * t) + 1e-300);
        if (lf > fmax_log) fmax_log = lf;
    }
    auto fs = [&](double t) {
        return std::exp(-x * (std::cosh(t) - 1.0) + std::log(std::cosh(nu * t) + 1e-300) - fmax_log);
    };
    double v = integrate(fs, 0.0, T, 1e-15, 2e-14, 6000);
    return std::exp(-x + fmax_log + std::log(v));
}

// ---------------------------------------------------------------------------
// Generalized hypergeometric series
// ---------------------------------------------------------------------------

SeriesResult hyp_pfq(const HypParams& params, double x, const PrecisionBudget& budget) {
    const size_t k = params.upper.size(), kp = params.lower.size();
    for (double b : params.lower)
        if (b <= 0.0 && near_integer(b, 0.0))
            throw validation_error("hyp_pfq: lower parameter at a pole: " + std::to_string(b));
    if (k > kp + 1 && x != 0.0)
        throw validation_error("hyp_pfq: divergent series (k > k'+1) for x != 0");
    if (k == kp + 1) {
        if (std::abs(x) > 1.0)
            throw validation_error("hyp_pfq: outside convergence disc |x| < 1");
        if (std::abs(x) == 1.0) {
            double sa = 0.0, sb = 0.0;
            for (double a : params.upper) sa += a;
            for (double b : params.lower) sb += b;
            if (!(sa < sb))
                throw validation_error("hyp_pfq: |x| = 1 requires sum(upper) < sum(lower)");
        }
    }
    // Neumaier-compensated accumulation: alternating series with large
    // arguments cancel through partial sums far above the result, and the
    // compensation keeps the effective precision near the term accuracy.
    long double sum = 1.0L, comp = 0.0L, term = 1.0L;
    int small_streak = 0;
    for (int n = 0; n < budget.max_terms; ++n) {
        long double ratio = 1.0L;
        for (double a : params.upper) ratio *= (long double)a + n;
        for (double b : params.lower) ratio /= (long double)b + n;
        term *= ratio * x / (n + 1.0L);
        long double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        double total = static_cast<double>(sum + comp);
        double tol = budget.abs_tol + budget.rel_tol * std::abs(total);
        if (std::abs(static_cast<double>(term)) <= tol) {
            if (++small_streak >= 3)
                return {total, std::abs(static_cast<double>(term)), n + 1};
        } else {
            small_streak = 0;
        }
    }
    throw numeric_error("hyp_pfq: series did not converge within max_terms");
}

// ---------------------------------------------------------------------------
// 2F1 on [0, 1] with C - A - B > 0
// ---------------------------------------------------------------------------

namespace {

long double hyp2f1_series_ld(long double A, long double B, long double C, long double x, int max_terms) {
    long double sum = 1.0L, comp = 0.0L, term = 1.0L;
    int small_streak = 0;
    for (int n = 0; n < max_terms; ++n) {
        term *= (A + n) * (B + n) / ((C + n) * (n + 1.0L)) * x;
        long double y = term - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) <= 1e-19L * std::abs(sum) + 1e-320L) {
            if (++small_streak >= 3) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw numeric_error("hyp2f1: direct series did not converge");
}

// Signed log-space product of gamma factors in extended precision.
// A pole in the denominator annihilates the whole product (1/Gamma -> 0).
long double gamma_ratio_ld(std::initializer_list<long double> num,
                           std::initializer_list<long double> den) {
    for (long double v : den)
        if (v <= 0.0L && near_integer_ld(v, 0.0L)) return 0.0L;
    long double lg = 0.0L;
    int sgn = 1, s = 1;
    for (long double v : num) {
        lg += log_gamma_ld(v, &s);
        sgn *= s;
    }
    for (long double v : den) {
        lg -= log_gamma_ld(v, &s);
        sgn *= s;
    }
    return sgn * std::exp(lg);
}

double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    for (double v : den)
        if (v <= 0.0 && near_integer(v, 0.0)) return 0.0;
    long double lg = 0.0L;
    int sgn = 1, s = 1;
    for (double v : num) {
        lg += log_gamma_ld(v, &s);
        sgn *= s;
    }
    for (double v : den) {
        lg -= log_gamma_ld(v, &s);
        sgn *= s;
    }
    return static_cast<double>(sgn * std::exp(lg));
}

// Connection expansion at 1-x, evaluated entirely in long double: the two
// branches cancel heavily when C-A-B approaches an integer.
long double hyp2f1_connection_once(long double A, long double B, long double C, double x,
                                   int max_terms) {
    const long double s = C - A - B;
    const long double y = 1.0L - (long double)x;
    long double t1 = gamma_ratio_ld({C, s}, {C - A, C - B}) *
                     hyp2f1_series_ld(A, B, A + B - C + 1.0L, y, max_terms);
    long double t2 = gamma_ratio_ld({C, -s}, {A, B}) * std::pow(y, s) *
                     hyp2f1_series_ld(C - A, C - B, s + 1.0L, y, max_terms);
    return t1 + t2;
}

} // namespace

double hyp2f1_kernel_form(double A, double B, double C, double x,
                          const PrecisionBudget& budget, Hyp2f1Path path) {
    if (!(x >= 0.0 && x <= 1.0))
        throw validation_error("hyp2f1_kernel_form: x must lie in [0, 1]");
    if (!(C - A - B > 0.0))
        throw validation_error("hyp2f1_kernel_form: requires C - A - B > 0");
    if (x == 0.0) return 1.0;
    if (x == 1.0) return gamma_ratio({C, C - A - B}, {C - A, C - B});
    const double s = C - A - B;
    const double dist = std::abs(s - std::round(s));
    bool direct;
    switch (path) {
    case Hyp2f1Path::DirectSeries: direct = true; break;
    case Hyp2f1Path::Connection: direct = false; break;
    default:
        // The connection expansion cancels heavily for s near an integer and
        // for large upper parameters; the direct series has all-positive
        // terms and converges geometrically up to x = 0.8, so it is the
        // preferred route there.
        direct = (x <= 0.8);
        break;
    }
    if (direct) {
        long double v = hyp2f1_series_ld(A, B, C, x, budget.max_terms);
        return static_cast<double>(v);
    }
    if (near_integer(s, 1e-6)) {
        // Log case: dual perturbation of C about the integer offset, averaged;
        // the O(eps) parts cancel and the O(eps^2) residue is negligible at
        // the call sites.
        const long double eps = 1e-5L;
        long double m = std::nearbyint((long double)C - A - B);
        long double base = (long double)A + (long double)B + m;
        long double up = hyp2f1_connection_once(A, B, base + eps, x, budget.max_terms);
        long double dn = hyp2f1_connection_once(A, B, base - eps, x, budget.max_terms);
        return static_cast<double>(0.5L * (up + dn));
    }
    return static_cast<double>(hyp2f1_connection_once(A, B, C, x, budget.max_terms));
}

// ---------------------------------------------------------------------------
// 1F2 with the large-negative-argument mixture path
// ---------------------------------------------------------------------------

namespace detail {

// 0F1(; g; -w^2): ascending series for small w, Bessel form otherwise.
double hyp0f1_neg(double g, double w) {
    if (w <= 4.0) {
        long double sum = 1.0L, term = 1.0L;
        long double w2 = (long double)w * w;
        for (int k = 0; k < 200; ++k) {
            term *= -w2 / ((g + k) * (k + 1.0L));
            sum += term;
            if (std::abs((double)term) < 1e-18) break;
        }
        return static_cast<double>(sum);
    }
    return gamma_fn(g) * std::pow(w, 1.0 - g) * bessel_j(g - 1.0, 2.0 * w);
}

double hyp1f2_mixture(double alpha, double beta, double gamma_, double z, double abs_tol) {
    if (!(beta > alpha) || !(alpha > 0.0) || !(gamma_ > 0.0))
        throw validation_error("hyp1f2_mixture: needs beta > alpha > 0, gamma > 0");
    // 1F2(a;b,g;-z^2) = G(b)/(G(a)G(b-a)) int_0^1 t^(a-1) (1-t)^(b-a-1) 0F1(;g;-t z^2) dt
    double c = gamma_ratio({beta}, {alpha, beta - alpha});
    auto f = [&](double t) { return hyp0f1_neg(gamma_, z * std::sqrt(t)); };
    double integral = integrate_beta_weighted(f, alpha, beta - alpha, abs_tol, 1e-13, 40000);
    return c * integral;
}

double hyp1f2_asymptotic_neg(double alpha, double beta, double gamma_, double z, int n_alg) {
    double alg = 0.0;
    double sign = 1.0;
    for (int k = 0; k < n_alg; ++k) {
        double coef = gamma_fn(alpha + k) * rgamma(beta - alpha - k) * rgamma(gamma_ - alpha - k) /
                      gamma_fn(1.0 + k);
        alg += sign * coef * std::pow(z, -2.0 * alpha - 2.0 * k);
        sign = -sign;
    }
    alg *= gamma_fn(beta) * gamma_fn(gamma_) * rgamma(alpha);
    // oscillatory part with its 1/z correction (endpoint expansion of the
    // Bessel-mixture form plus the Bessel P/Q correction); the correction
    // coefficient vanishes identically for the tent family as a check.
    const double q = beta - alpha;
    const double mu = 4.0 * (gamma_ - 1.0) * (gamma_ - 1.0);
    const double h1 = -(2.0 * alpha - gamma_ - 0.5) - 0.5 * (beta - alpha - 1.0);
    const double c1 = (mu - 1.0) / 16.0 - 0.5 * q * h1;
    const double phi = 2.0 * z - kPi * (beta + gamma_ - alpha) / 2.0 + kPi / 4.0;
    double osc = gamma_fn(beta) * gamma_fn(gamma_) / (std::sqrt(kPi)) * rgamma(alpha) *
                 std::pow(z, alpha - beta - gamma_ + 0.5) *
                 (std::cos(phi) - c1 / z * std::sin(phi));
    return alg + osc;
}

} // namespace detail

double hyp1f2(double alpha, double beta, double gamma_, double x, const PrecisionBudget& budget) {
    // The alternating series cancels through partial sums of order
    // exp(2 sqrt(|x|)); past |x| ~ 324 the bounded mixture form is safer.
    if (x >= -324.0) {
        HypParams hp{{alpha}, {beta, gamma_}};
        return hyp_pfq(hp, x, budget).value;
    }
    return detail::hyp1f2_mixture(alpha, beta, gamma_, std::sqrt(-x), budget.abs_tol);
}

// ---------------------------------------------------------------------------
// Regularized incomplete gamma Q
// ---------------------------------------------------------------------------

double reg_inc_gamma_q(double s, double x) {
    if (!(s > 0.0)) throw validation_error("reg_inc_gamma_q: requires s > 0");
    if (x < 0.0) throw validation_error("reg_inc_gamma_q: requires x >= 0");
    if (x == 0.0) return 1.0;
    double lpre = s * std::log(x) - x - log_gamma(s);
    if (x < s + 1.0) {
        // P series: P = x^s e^-x / Gamma(s+1) * sum_n x^n / ((s+1)...(s+n))
        long double sum = 1.0L, term = 1.0L;
        for (int n = 1; n < 10000; ++n) {
            term *= x / (s + n);
            sum += term;
            if (std::abs((double)term) < 1e-17 * std::abs((double)sum)) break;
        }
        double P = std::exp(lpre) / s * static_cast<double>(sum);
        return 1.0 - P;
    }
    // Lentz continued fraction for Q.
    const double tiny = 1e-300;
    double b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 10000; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(lpre) * h;
}

// ---------------------------------------------------------------------------
// Tricomi U and the Laguerre function of the second kind
// ---------------------------------------------------------------------------

namespace {

long double hyp1f1_series_ld(long double a, long double b, long double x, int max_terms) {
    long double sum = 1.0L, comp = 0.0L, term = 1.0L;
    int small_streak = 0;
    for (int n = 0; n < max_terms; ++n) {
        term *= (a + n) * x / ((b + n) * (n + 1.0L));
        long double y = term - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) <= 1e-19L * std::abs(sum) + 1e-320L) {
            if (++small_streak >= 3) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw numeric_error("hyp1f1: series did not converge");
}

long double hyp1f1_stable_ld(long double a, long double b, long double x) {
    // Kummer transform for negative arguments to avoid the alternating series.
    if (x < 0.0L) return std::exp(x) * hyp1f1_series_ld(b - a, b, -x, 40000);
    return hyp1f1_series_ld(a, b, x, 40000);
}

// b must be carried in extended precision: near integer b the two branches
// cancel to ~eps relative, so the tiny offset in b has to stay exact.
long double tricomi_u_once(long double a, long double b, long double x) {
    long double t1 = gamma_ratio_ld({1.0L - b}, {a - b + 1.0L}) * hyp1f1_stable_ld(a, b, x);
    long double xp;
    if (x >= 0.0L) {
        xp = std::pow(x, 1.0L - b);
    } else {
        xp = std::pow(-x, 1.0L - b) * cos_pi(1.0L - b);
    }
    long double t2 = gamma_ratio_ld({b - 1.0L}, {a}) * xp * hyp1f1_stable_ld(a - b + 1.0L, 2.0L - b, x);
    return t1 + t2;
}

} // namespace

double tricomi_u(double a, double b, double x) {
    if (a == 0.0) return 1.0;
    if (near_integer(b, 1e-6)) {
        const long double eps = 1e-5L;
        long double m = std::nearbyint((long double)b);
        long double up = tricomi_u_once(a, m + eps, x);
        long double dn = tricomi_u_once(a, m - eps, x);
        return static_cast<double>(0.5L * (up + dn));
    }
    return static_cast<double>(tricomi_u_once(a, b, x));
}

double laguerre_second_kind(double alpha, double beta, double x) {
    if (!(beta > alpha)) throw validation_error("laguerre_second_kind: requires beta > alpha");
    if (x < 0.0) throw validation_error("laguerre_second_kind: requires x >= 0");
    const double q = beta - alpha;
    if (x == 0.0) {
        if (!(beta < 1.0))
            throw validation_error("laguerre_second_kind: x = 0 integral diverges for beta >= 1");
        return gamma_fn(1.0 - beta) * rgamma(1.0 - alpha);
    }
    // substitute u = 1 + v: e^-x / Gamma(q) * int_0^inf e^(-x v) (1+v)^(alpha-1) v^(q-1) dv
    // piece 1: v in [0,1] with v = w^(1/q) when q < 1
    double piece1;
    if (q < 1.0) {
        auto f = [&](double w) {
            double v = std::pow(w, 1.0 / q);
            return std::exp(-x * v) * std::pow(1.0 + v, alpha - 1.0);
        };
        piece1 = integrate(f, 0.0, 1.0, 1e-14, 1e-12, 4000) / q;
    } else {
        auto f = [&](double v) {
            return std::exp(-x * v) * std::pow(v, q - 1.0) * std::pow(1.0 + v, alpha - 1.0);
        };
        piece1 = integrate(f, 0.0, 1.0, 1e-14, 1e-12, 4000);
    }
    // piece 2: v in [1, V]; pick V so the integrand is below ~1e-22 relative.
    double V = 1.0;
    auto logf = [&](double v) {
        return -x * v + (q - 1.0) * std::log(v) + (alpha - 1.0) * std::log1p(v);
    };
    while (V < 1e8 && logf(V) > -55.0) V *= 1.7;
    auto f2 = [&](double v) { return std::exp(logf(v)); };
    double piece2 = integrate(f2, 1.0, V, 1e-14, 1e-12, 8000);
    return std::exp(-x - log_gamma(q)) * (piece1 + piece2);
}

} // namespace ghcov
