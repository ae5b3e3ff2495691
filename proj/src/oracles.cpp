#include "ghcov/oracles.hpp"
#include "ghcov/errors.hpp"
#include "ghcov/quadrature.hpp"
#include "ghcov/specfun.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace ghcov {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    double lg = 0.0;
    int sgn = 1, s = 1;
    for (double v : num) {
        lg += log_gamma(v, &s);
        sgn *= s;
    }
    for (double v : den) {
        lg -= log_gamma(v, &s);
        sgn *= s;
    }
    return sgn * std::exp(lg);
}

} // namespace

double cov_eval_integral(const KernelParams& p, int d, double r, const QuadratureSpec& q) {
    require_param_space(p, d, "cov_eval_integral");
    if (r < 0.0) throw validation_error("cov_eval_integral: r must be >= 0");
    if (r >= p.a) return 0.0;
    const double dh = 0.5 * d;
    const double u2 = (r / p.a) * (r / p.a);
    // substitute t = u^2 + (1 - u^2) s to pull the interval onto [0,1]:
    // pref (1-u^2)^(beta-alpha+gamma-d/2-1) *
    //   int_0^1 s^(gamma-d/2-1) (1-s)^(beta-alpha-1) (u^2 + (1-u^2) s)^(alpha-gamma) ds
    double pref = gamma_ratio({p.beta - dh}, {p.alpha - dh, p.beta - p.alpha});
    double lam = p.beta - p.alpha + p.gamma_ - dh - 1.0;
    auto f = [&](double s) { return std::pow(u2 + (1.0 - u2) * s, p.alpha - p.gamma_); };
    double integral = integrate_beta_weighted(f, p.gamma_ - dh, p.beta - p.alpha,
                                              q.abs_tol * 1e-2, 1e-12, q.max_subdivisions * 4);
    return p.sigma2 * pref * std::pow(1.0 - u2, lam) * integral;
}

double cov_eval_mixture(const KernelParams& p, int d, double r, const QuadratureSpec& q) {
    require_param_space(p, d, "cov_eval_mixture");
    if (r < 0.0) throw validation_error("cov_eval_mixture: r must be >= 0");
    if (r >= p.a) return 0.0;
    const double dh = 0.5 * d;
    const double u2 = (r / p.a) * (r / p.a);
    double pref = gamma_ratio({p.gamma_ - dh}, {p.gamma_ - p.alpha, p.alpha - dh});
    double lam = p.beta - p.alpha + p.gamma_ - dh - 1.0;
    auto f = [&](double t) {
        if (t >= 1.0) return 0.0; // (1 + t u^2/(1-t))^(alpha-beta) -> 0
        return std::pow(1.0 + t / (1.0 - t) * u2, p.alpha - p.beta);
    };
    double integral = integrate_beta_weighted(f, p.gamma_ - p.alpha, p.alpha - dh,
                                              q.abs_tol * 1e-2, 1e-12, q.max_subdivisions * 4);
    return p.sigma2 * pref * std::pow(1.0 - u2, lam) * integral;
}

// ---------------------------------------------------------------------------
// Hankel round trip
// ---------------------------------------------------------------------------

namespace {

// Upper incomplete gamma for complex z (used on the negative imaginary axis).
std::complex<double> upper_inc_gamma(double s, std::complex<double> z) {
    if (std::abs(z) < 1e-280) return {gamma_fn(s), 0.0};
    if (std::abs(z) <= 1.5) {
        // Gamma(s) - z^s sum_k (-z)^k / (k! (s+k))
        std::complex<double> total = 0.0, term = 1.0;
        for (int k = 0; k < 300; ++k) {
            if (k > 0) term *= -z / static_cast<double>(k);
            std::complex<double> c = term / (s + k);
            total += c;
            if (std::abs(c) < 1e-18 * std::abs(total)) break;
        }
        return gamma_fn(s) - std::exp(s * std::log(z)) * total;
    }
    // Lentz continued fraction.
    const double tiny = 1e-290;
    std::complex<double> b = z + 1.0 - s, c = 1.0 / tiny, dd = 1.0 / b, h = dd;
    for (int i = 1; i < 600; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        dd = an * dd + b;
        if (std::abs(dd) < tiny) dd = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        dd = 1.0 / dd;
        std::complex<double> delta = dd * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-z + s * std::log(z)) * h;
}

// int_Z^inf rho^lam cos(2 pi f rho + phi) drho for lam < -1 (the f -> 0 limit
// exists); reduced to Gamma(lam+1, -2 pi i f Z).
double power_cos_tail(double lam, double f, double phi, double Z) {
    const double s = lam + 1.0;
    if (f < 0.0) {
        f = -f;
        phi = -phi;
    }
    double W = 2.0 * kPi * f * Z;
    std::complex<double> E;
    if (W < 1e-12) {
        E = {-1.0 / s, 0.0};
    } else {
        std::complex<double> z(0.0, -W);
        E = std::exp(-s * std::log(z)) * upper_inc_gamma(s, z);
    }
    return std::pow(Z, s) * (std::exp(std::complex<double>(0.0, phi)) * E).real();
}

// Double-double helpers (Dekker/Knuth): the alternating 1F2 series cancels
// through partial sums of order exp(~2 sqrt|x|), beyond long double headroom
// near z ~ 20; double-double keeps the floor near 1e-30 * peak.
struct DD {
    double hi = 0.0, lo = 0.0;
};

DD dd_two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

DD dd_add(DD a, DD b) {
    // full-accuracy double-double addition (Dekker add2)
    DD s = dd_two_sum(a.hi, b.hi);
    DD t = dd_two_sum(a.lo, b.lo);
    s.lo += t.hi;
    double hi = s.hi + s.lo;
    double lo = s.lo - (hi - s.hi);
    lo += t.lo;
    double hi2 = hi + lo;
    return {hi2, lo - (hi2 - hi)};
}

DD dd_mul_d(DD a, double b) {
    double p = a.hi * b;
    double e = std::fma(a.hi, b, -p);
    e += a.lo * b;
    double hi = p + e;
    return {hi, e - (hi - p)};
}

DD dd_mul(DD a, DD b) {
    double p = a.hi * b.hi;
    double e = std::fma(a.hi, b.hi, -p);
    e += a.hi * b.lo + a.lo * b.hi;
    double hi = p + e;
    return {hi, e - (hi - p)};
}

DD dd_div(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = dd_add(a, dd_mul_d(dd_mul_d(b, q1), -1.0));
    double q2 = r.hi / b.hi;
    r = dd_add(r, dd_mul_d(dd_mul_d(b, q2), -1.0));
    double q3 = r.hi / b.hi;
    DD q = dd_two_sum(q1, q2);
    q.lo += q3;
    double hi = q.hi + q.lo;
    return {hi, q.lo - (hi - q.hi)};
}

// 1F2(alpha; beta, gamma; -z^2) by the plain series in double-double.
// Parameter-plus-index factors are formed with exact two_sum so each term is
// double-double accurate even at large n.
double hyp1f2_series_dd(double alpha, double beta, double gamma_, double z) {
    DD x{0.0, 0.0};
    {
        double p = z * z;
        double e = std::fma(z, z, -p);
        x = {-p, -e};
    }
    DD sum{1.0, 0.0}, term{1.0, 0.0};
    int streak = 0;
    for (int n = 0; n < 4000; ++n) {
        term = dd_mul(term, dd_two_sum(alpha, n));
        term = dd_mul(term, x);
        term = dd_div(term, dd_two_sum(beta, n));
        term = dd_div(term, dd_two_sum(gamma_, n));
        term = dd_div(term, DD{n + 1.0, 0.0});
        sum = dd_add(sum, term);
        if (std::abs(term.hi) <= 1e-26 * std::abs(sum.hi) + 1e-60) {
            if (++streak >= 3) return sum.hi + sum.lo;
        } else {
            streak = 0;
        }
    }
    throw numeric_error("hyp1f2_series_dd: no convergence");
}

// 1F2(alpha;beta,gamma;-z^2) tuned for the spectral integrand: double-double
// series to z = 25, bounded mixture quadrature to z = 45, large-argument
// expansion beyond.
double spectral_f12(const KernelParams& p, double z) {
    if (z <= 25.0) return hyp1f2_series_dd(p.alpha, p.beta, p.gamma_, z);
    if (z <= 45.0) return detail::hyp1f2_mixture(p.alpha, p.beta, p.gamma_, z, 1e-11);
    return detail::hyp1f2_asymptotic_neg(p.alpha, p.beta, p.gamma_, z);
}

// k-th positive zero of J_nu: half-integer closed forms, otherwise McMahon
// refined by Newton.
double bessel_zero(double nu, int k) {
    if (nu == -0.5) return (k - 0.5) * kPi;
    if (nu == 0.5) return k * kPi;
    double b = (k + 0.5 * nu - 0.25) * kPi;
    double mu = 4.0 * nu * nu;
    double x = b - (mu - 1.0) / (8.0 * b);
    for (int it = 0; it < 8; ++it) {
        double j = bessel_j(nu, x);
        double jp = 0.5 * (bessel_j(nu - 1.0, x) - bessel_j(nu + 1.0, x));
        double dx = j / jp;
        x -= dx;
        if (std::abs(dx) < 1e-14 * x) break;
    }
    return x;
}

} // namespace

double hankel_roundtrip(const KernelParams& p, int d, double r, const QuadratureSpec& q) {
    require_param_space(p, d, "hankel_roundtrip");
    if (!(p.gamma_ > 0.5 * d))
        throw validation_error("hankel_roundtrip: needs gamma > d/2 for convergence");
    if (r < 0.0) throw validation_error("hankel_roundtrip: r must be >= 0");
    const double dh = 0.5 * d;
    const double nu = dh - 1.0;
    const double a = p.a;
    const double zeta = zeta_normalizer(p, d);

    // shared asymptotic constants of the spectral density
    const double A = gamma_ratio({p.beta, p.gamma_}, {p.beta - p.alpha, p.gamma_ - p.alpha});
    const double K = gamma_ratio({p.beta, p.gamma_}, {p.alpha}) / std::sqrt(kPi);
    const double om = p.alpha - p.beta - p.gamma_ + 0.5;
    const double PhiF = -kPi * (p.beta + p.gamma_ - p.alpha) / 2.0 + kPi / 4.0;

    // r = 0: non-oscillatory radial integral,
    // g(0) = 2 pi^{d/2} zeta / Gamma(d/2) int rho^{d-1} F(pi a rho) drho.
    if (r < 1e-12 * a) {
        auto f0 = [&](double rho) {
            return std::pow(rho, d - 1.0) * spectral_f12(p, kPi * a * rho);
        };
        double Z = std::max(120.0 / (kPi * a), 1.0 / a);
        double bulk = 0.0;
        double cuts[4] = {0.0, std::min(25.0 / (kPi * a), Z), std::min(45.0 / (kPi * a), Z), Z};
        for (int c = 0; c < 3; ++c)
            if (cuts[c + 1] > cuts[c])
                bulk += integrate(f0, cuts[c], cuts[c + 1], std::max(q.abs_tol * 0.1, 1e-11),
                                  1e-9, q.max_subdivisions * 4);
        double tail = A * std::pow(kPi * a, -2.0 * p.alpha) *
                          power_cos_tail(d - 1.0 - 2.0 * p.alpha, 0.0, 0.0, Z) +
                      K * std::pow(kPi * a, om) * power_cos_tail(d - 1.0 + om, a, PhiF, Z);
        return p.sigma2 * 2.0 * std::pow(kPi, dh) * zeta / gamma_fn(dh) * (bulk + tail);
    }

    auto integrand = [&](double rho) {
        return std::pow(rho, dh) * bessel_j(nu, 2.0 * kPi * rho * r) *
               spectral_f12(p, kPi * a * rho);
    };
    // bulk up to the first usable zero of J_nu(2 pi rho r), then lobes
    auto zero_at = [&](int k) { return bessel_zero(nu, k) / (2.0 * kPi * r); };
    double Zmin = 45.0 / (kPi * a);
    int k0 = 1;
    while (zero_at(k0) < Zmin) ++k0;
    double Z0 = zero_at(k0);
    double bulk = 0.0;
    double cuts[3] = {0.0, std::min(25.0 / (kPi * a), Z0), Z0};
    for (int c = 0; c < 2; ++c)
        if (cuts[c + 1] > cuts[c])
            bulk += integrate(integrand, cuts[c], cuts[c + 1],
                              std::max(q.abs_tol * 0.1, 1e-11), 1e-9, q.max_subdivisions * 8);
    const int nlobe = 40;
    double lobes = 0.0;
    for (int k = k0; k < k0 + nlobe; ++k) {
        double err = 0.0;
        lobes += integrate_nothrow(integrand, zero_at(k), zero_at(k + 1),
                                   std::max(q.abs_tol * 0.01, 1e-12), 1e-8, 300, &err);
    }
    double Zend = zero_at(k0 + nlobe);

    // analytic tail beyond Zend from the leading asymptotics of both factors
    double cJ = std::sqrt(2.0 / (kPi * 2.0 * kPi * r));
    double phJ = -nu * kPi / 2.0 - kPi / 4.0;
    double lam_alg = dh - 0.5 - 2.0 * p.alpha;
    double lam_osc = dh - 0.5 + om;
    double C2 = 0.5 * cJ * K * std::pow(kPi * a, om);
    double tail = cJ * A * std::pow(kPi * a, -2.0 * p.alpha) * power_cos_tail(lam_alg, r, phJ, Zend);
    tail += C2 * (power_cos_tail(lam_osc, a + r, PhiF + phJ, Zend) +
                  power_cos_tail(lam_osc, a - r, PhiF - phJ, Zend));
    // first Bessel asymptotic correction (the Q term), nonzero for integer nu
    double muJ = 4.0 * nu * nu;
    double qc = (muJ - 1.0) / (8.0 * 2.0 * kPi * r);
    if (qc != 0.0) {
        tail += cJ * qc * A * std::pow(kPi * a, -2.0 * p.alpha) *
                power_cos_tail(lam_alg - 1.0, r, phJ - kPi / 2.0, Zend);
        tail += qc * C2 * (power_cos_tail(lam_osc - 1.0, a + r, PhiF + phJ - kPi / 2.0, Zend) +
                           power_cos_tail(lam_osc - 1.0, a - r, PhiF - phJ - kPi / 2.0, Zend));
    }
    return p.sigma2 * 2.0 * kPi * zeta / std::pow(r, dh - 1.0) * (bulk + lobes + tail);
}

double mixture_identity_check(double alpha, double beta, double gamma_,
                              const std::vector<double>& x_grid) {
    double worst = 0.0;
    for (double z : x_grid) {
        double series = hyp1f2_series_dd(alpha, beta, gamma_, z);
        double mix = detail::hyp1f2_mixture(alpha, beta, gamma_, z, 1e-13);
        worst = std::max(worst, std::abs(series - mix));
    }
    return worst;
}

double term_integration_identity_check(double alpha, double beta, double gamma_, double beta_ij,
                                       double gamma_ij, double a, double x) {
    if (!(beta_ij > beta) || !(beta > 0.0) || !(gamma_ij > gamma_) || !(gamma_ > 0.0))
        throw validation_error("term_integration_identity_check: needs beta_ij > beta > 0, "
                               "gamma_ij > gamma > 0");
    const double ax2 = (a * x) * (a * x);
    PrecisionBudget tight{1e-14, 1e-17, 40000};
    auto inner = [&](double t2) {
        auto f = [&](double t1) {
            return hyp_pfq({{alpha}, {beta, gamma_}}, -t1 * t2 * ax2, tight).value;
        };
        return integrate_beta_weighted(f, beta, beta_ij - beta, 1e-12, 1e-11, 4000);
    };
    double lhs = integrate_beta_weighted(inner, gamma_, gamma_ij - gamma_, 1e-11, 1e-10, 2000);
    double rhs = gamma_ratio({beta, beta_ij - beta, gamma_, gamma_ij - gamma_},
                             {beta_ij, gamma_ij}) *
                 hyp_pfq({{alpha}, {beta_ij, gamma_ij}}, -ax2, tight).value;
    return std::abs(lhs - rhs);
}

// ---------------------------------------------------------------------------
// Convergence harness
// ---------------------------------------------------------------------------

bool ConvergenceTrace::nonincreasing(double slack) const {
    for (size_t i = 1; i < sup_errors.size(); ++i)
        if (sup_errors[i] > sup_errors[i - 1] * (1.0 + slack)) return false;
    return true;
}

ConvergenceTrace convergence_harness(const LimitKernelSpec& target, int steps, int d) {
    if (steps < 1) throw validation_error("convergence_harness: steps must be >= 1");
    ConvergenceTrace trace;
    trace.target = target;
    const double b = target.b;
    const double dh = 0.5 * d;
    for (int j = 1; j <= steps; ++j) {
        KernelParams p;
        p.a = 1.0;
        switch (target.family) {
        case LimitFamily::Matern:
            p.alpha = dh + target.shape;
            p.beta = p.gamma_ = std::pow(10.0, j);
            p.a = 2.0 * b * std::sqrt(p.beta * p.gamma_);
            break;
        case LimitFamily::Laguerre:
            p.alpha = dh + target.shape;
            p.beta = dh + target.shape2;
            p.gamma_ = std::pow(10.0, j);
            p.a = b * std::sqrt(p.gamma_);
            break;
        case LimitFamily::Tricomi:
            p.alpha = dh + 2.0 * target.shape;
            p.beta = dh + target.shape2;
            p.gamma_ = std::pow(10.0, j);
            p.a = b * std::sqrt(p.gamma_);
            break;
        case LimitFamily::IncGamma:
            p.alpha = dh + target.shape;
            p.beta = dh + 1.0;
            p.gamma_ = std::pow(10.0, j);
            p.a = b * std::sqrt(p.gamma_);
            break;
        case LimitFamily::Erfc:
            p.alpha = 0.5 * (d + 1);
            p.beta = dh + 1.0;
            p.gamma_ = std::pow(10.0, j);
            p.a = b * std::sqrt(p.gamma_);
            break;
        case LimitFamily::Gaussian:
            if (target.shape < 0.5) {
                // all parameters to infinity, a sqrt(alpha/(beta gamma)) -> b
                p.alpha = dh + 4.5 + 4.0 * (j - 1);
                p.beta = p.gamma_ = 2.0 * p.alpha;
                p.a = 2.0 * b * std::sqrt(p.alpha);
            } else {
                // beta -> alpha, gamma -> infinity, a/sqrt(gamma) -> b
                p.alpha = dh + 1.25;
                p.gamma_ = std::pow(10.0, j);
                p.beta = p.alpha + p.alpha / (p.gamma_ - p.alpha);
                p.a = b * std::sqrt(p.gamma_);
            }
            break;
        }
        if (!check_param_space(p, d).in_space)
            throw validation_error("convergence_harness: path leaves P_d at step " +
                                   std::to_string(j));
        double sup = 0.0;
        const int ngrid = 61;
        for (int i = 0; i < ngrid; ++i) {
            double r = 6.0 * b * i / (ngrid - 1.0);
            double err = std::abs(cov_eval(p, d, r) - limit_kernel_eval(target, r));
            sup = std::max(sup, err);
        }
        trace.path.push_back({p.a, p.alpha, p.beta, p.gamma_});
        trace.sup_errors.push_back(sup);
    }
    return trace;
}

// ---------------------------------------------------------------------------
// Gram and simulation
// ---------------------------------------------------------------------------

GramResult gram(const Eigen::MatrixXd& points, const KernelParams& p, int d) {
    require_param_space(p, d, "gram");
    if (points.cols() != d) throw validation_error("gram: points have wrong dimension");
    const Eigen::Index n = points.rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = p.sigma2;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double dist = (points.row(i) - points.row(j)).norm();
            if (dist >= p.a) continue; // compact support: exact skip
            double v = cov_eval(p, d, dist);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return detail::summarize_gram(std::move(m));
}

namespace detail {

namespace {
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
} // namespace

double uniform_at(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t h = mix64(seed * 0x9E3779B97F4A7C15ull + index + 1ull);
    h = mix64(h ^ (seed >> 32) ^ (index * 0xD1342543DE82EF95ull));
    return ((h >> 11) + 1.0) * 0x1.0p-53; // in (0, 1]
}

double gaussian_at(std::uint64_t seed, std::uint64_t index) {
    double u1 = uniform_at(seed, 2 * index);
    double u2 = uniform_at(seed, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

} // namespace detail

SimulationResult simulate_field(const Eigen::MatrixXd& points, const KernelParams& p, int d,
                                int n_realizations, std::uint64_t seed) {
    if (n_realizations < 1) throw validation_error("simulate_field: need n_realizations >= 1");
    GramResult g = gram(points, p, d);
    if (!g.psd)
        throw numeric_error("simulate_field: Gram matrix is not PSD at tolerance (min_eig=" +
                            std::to_string(g.min_eig) + ")");
    const Eigen::Index n = g.matrix.rows();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.matrix);
    if (es.info() != Eigen::Success) throw numeric_error("simulate_field: eigensolver failed");
    Eigen::VectorXd lam = es.eigenvalues();
    SimulationResult out;
    double trace = lam.sum();
    double clipped = 0.0;
    Eigen::VectorXd sq(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lam(i) < 0.0) {
            clipped += -lam(i);
            sq(i) = 0.0;
        } else {
            sq(i) = std::sqrt(lam(i));
        }
    }
    out.clipped_mass = clipped;
    out.clipped_warning = clipped > 1e-8 * std::max(trace, 0.0);
    Eigen::MatrixXd root = es.eigenvectors() * sq.asDiagonal();
    out.samples.resize(n, n_realizations);
    Eigen::VectorXd z(n);
    for (int k = 0; k < n_realizations; ++k) {
        for (Eigen::Index i = 0; i < n; ++i)
            z(i) = detail::gaussian_at(seed, static_cast<std::uint64_t>(k) * n + i);
        out.samples.col(k) = root * z;
    }
    out.empirical_cov = out.samples * out.samples.transpose() / double(n_realizations);
    return out;
}

} // namespace ghcov
