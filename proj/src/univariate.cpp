#include "ghcov/univariate.hpp"
#include "ghcov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ghcov {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kBoundaryTol = 1e-12;

double half(int d) { return 0.5 * d; }

bool near_integer(double x, double tol) { return std::abs(x - std::round(x)) <= tol; }


// exp of a signed sum of log-gammas; denominator poles annihilate the value.
double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    for (double v : den)
        if (v <= 0.0 && near_integer(v, 0.0)) return 0.0;
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

ParamSpaceReport check_param_space(double alpha, double beta, double gamma_, int d) {
    if (d < 0) throw validation_error("check_param_space: d must be >= 0");
    ParamSpaceReport r;
    r.dimension = d;
    const double dh = half(d);
    r.cond_alpha = alpha > dh;
    const double lhs_p = 2.0 * (beta - alpha) * (gamma_ - alpha);
    r.cond_product = lhs_p >= alpha;
    const double lhs_s = 2.0 * (beta + gamma_);
    const double rhs_s = 6.0 * alpha + 1.0;
    r.cond_sum = lhs_s >= rhs_s;
    r.in_space = r.cond_alpha && r.cond_product && r.cond_sum;
    r.boundary = std::abs(alpha - dh) <= kBoundaryTol || std::abs(lhs_p - alpha) <= kBoundaryTol ||
                 std::abs(lhs_s - rhs_s) <= kBoundaryTol;
    return r;
}

ParamSpaceReport check_param_space(const KernelParams& p, int d) {
    return check_param_space(p.alpha, p.beta, p.gamma_, d);
}

std::string describe_param_space(const ParamSpaceReport& r) {
    std::ostringstream os;
    os << "P_" << r.dimension << " membership: " << (r.in_space ? "yes" : "no")
       << " [cond_alpha=" << (r.cond_alpha ? "ok" : "FAIL")
       << ", cond_product=" << (r.cond_product ? "ok" : "FAIL")
       << ", cond_sum=" << (r.cond_sum ? "ok" : "FAIL") << "]";
    return os.str();
}

void require_param_space(const KernelParams& p, int d, const char* where) {
    if (!(p.a > 0.0)) throw validation_error(std::string(where) + ": range a must be positive");
    if (!(p.sigma2 > 0.0)) throw validation_error(std::string(where) + ": sigma2 must be positive");
    ParamSpaceReport r = check_param_space(p, d);
    if (!r.in_space)
        throw validation_error(std::string(where) + ": parameters outside P_d; " +
                               describe_param_space(r));
}

double zeta_normalizer(const KernelParams& p, int d) {
    if (d < 1) throw validation_error("zeta_normalizer: d must be >= 1");
    require_param_space(p, d, "zeta_normalizer");
    const double dh = half(d);
    int s = 1, sgn = 1;
    double lg = log_gamma(p.alpha, &s);
    sgn *= s;
    lg += log_gamma(p.beta - dh, &s);
    sgn *= s;
    lg += log_gamma(p.gamma_ - dh, &s);
    sgn *= s;
    lg -= log_gamma(p.alpha - dh, &s);
    sgn *= s;
    lg -= log_gamma(p.beta, &s);
    sgn *= s;
    lg -= log_gamma(p.gamma_, &s);
    sgn *= s;
    return sgn * std::exp(lg + dh * std::log(kPi) + d * std::log(p.a));
}

double cov_eval(const KernelParams& p, int d, double r) {
    if (d < 1) throw validation_error("cov_eval: d must be >= 1");
    if (r < 0.0) throw validation_error("cov_eval: r must be >= 0");
    require_param_space(p, d, "cov_eval");
    if (r >= p.a) return 0.0; // exact support branch
    if (r == 0.0) return p.sigma2;
    const double dh = half(d);
    const double u = r / p.a;
    const double x = 1.0 - u * u;
    const double A = p.beta - p.alpha;
    const double B = p.gamma_ - p.alpha;
    const double C = p.beta - p.alpha + p.gamma_ - dh;
    const double lambda = C - 1.0;
    double pref = gamma_ratio({p.beta - dh, p.gamma_ - dh}, {C, p.alpha - dh});
    double f = hyp2f1_kernel_form(A, B, C, x);
    return p.sigma2 * pref * std::pow(x, lambda) * f;
}

double spectral_eval(const KernelParams& p, int d, double u) {
    if (u < 0.0) throw validation_error("spectral_eval: u must be >= 0");
    double z = kPi * p.a * u;
    double zeta = zeta_normalizer(p, d);
    return p.sigma2 * zeta * hyp1f2(p.alpha, p.beta, p.gamma_, -z * z);
}

SmoothnessReport smoothness(const KernelParams& p, int d) {
    SmoothnessReport s;
    const double m_origin = 2.0 * p.alpha - d; // k < m_origin, strict
    const double m_range = p.beta - p.alpha + p.gamma_ - half(d) - 1.0;
    s.k_origin = std::max(0, static_cast<int>(std::ceil(m_origin)) - 1);
    s.k_range = std::max(0, static_cast<int>(std::ceil(m_range)) - 1);
    s.ms_diff_order = s.k_origin / 2;
    return s;
}

namespace {

KernelParams shifted(const KernelParams& p, double delta) {
    KernelParams q = p;
    q.alpha += delta;
    q.beta += delta;
    q.gamma_ += delta;
    return q;
}

} // namespace

DimensionWalk montee(const KernelParams& p, int d, int k) {
    if (k < 0 || k >= d) throw validation_error("montee: requires 0 <= k < d");
    require_param_space(p, d, "montee");
    if (k == 0) return {p, d, 1.0};
    double scale = zeta_normalizer(p, d) / zeta_normalizer(p, d - k);
    return {shifted(p, 0.5 * k), d - k, scale};
}

DimensionWalk descente(const KernelParams& p, int d, int k) {
    if (k < 0) throw validation_error("descente: requires k >= 0");
    if (!(p.a > 0.0)) throw validation_error("descente: range a must be positive");
    if (k == 0) return {p, d, 1.0};
    // The only precondition is the proviso on the downgraded triple; the input
    // itself may be a montee's bookkeeping output outside P_d.
    KernelParams q = shifted(p, -0.5 * k);
    ParamSpaceReport rep = check_param_space(q, d + k);
    if (!rep.in_space)
        throw validation_error("descente: downgraded parameters leave P_{d+k}; " +
                               describe_param_space(rep));
    double scale = zeta_normalizer(q, d) / zeta_normalizer(q, d + k);
    return {q, d + k, scale};
}

DimensionWalk restrict_kernel(const KernelParams& p, int d, int k) {
    if (k < 0 || k >= d) throw validation_error("restrict_kernel: requires 0 <= k < d");
    require_param_space(p, d, "restrict_kernel");
    // P_d subset P_{d-k} after the -k/2 shift, so no further check is needed.
    return {shifted(p, -0.5 * k), d - k, 1.0};
}

DimensionWalk extend_kernel(const KernelParams& p, int d, int k) {
    if (k < 0) throw validation_error("extend_kernel: requires k >= 0");
    require_param_space(p, d, "extend_kernel");
    KernelParams q = shifted(p, 0.5 * k);
    ParamSpaceReport rep = check_param_space(q, d + k);
    if (!rep.in_space) {
        throw validation_error("extend_kernel: shifted parameters leave P_{d+k}; maximal "
                               "admissible k = " +
                               std::to_string(max_extension_order(p, d)) + "; " +
                               describe_param_space(rep));
    }
    return {q, d + k, 1.0};
}

int max_extension_order(const KernelParams& p, int d) {
    int k = 0;
    while (k < 10000) {
        KernelParams q = shifted(p, 0.5 * (k + 1));
        if (!check_param_space(q, d + k + 1).in_space) break;
        ++k;
    }
    return k;
}

KernelParams make_spherical(int d, double kappa, double a) {
    if (!(a > 0.0)) throw validation_error("make_spherical: a must be positive");
    if (!(kappa > -0.5))
        throw validation_error("make_spherical: kappa must exceed -1/2 (needs alpha > d/2)");
    KernelParams p;
    p.a = a;
    p.alpha = 0.5 * (d + 1) + kappa;
    p.beta = 0.5 * d + 1.0 + kappa;
    p.gamma_ = d + 1.0 + 2.0 * kappa;
    require_param_space(p, d, "make_spherical");
    return p;
}

KernelParams make_askey(int d, double ell, double a) {
    if (!(a > 0.0)) throw validation_error("make_askey: a must be positive");
    if (!(ell >= 0.5 * (d + 1)))
        throw validation_error("make_askey: requires ell >= (d+1)/2");
    KernelParams p;
    p.a = a;
    p.alpha = 0.5 * (d + 1);
    p.beta = 0.5 * (d + ell + 1);
    p.gamma_ = 0.5 * (d + ell) + 1.0;
    require_param_space(p, d, "make_askey");
    return p;
}

KernelParams make_wendland(int d, double kappa, double ell, double a) {
    if (!(a > 0.0)) throw validation_error("make_wendland: a must be positive");
    if (kappa < 0.0) throw validation_error("make_wendland: kappa must be >= 0");
    if (!(ell >= 0.5 * (d + 1) + kappa))
        throw validation_error("make_wendland: requires ell >= (d+1)/2 + kappa");
    KernelParams p;
    p.a = a;
    p.alpha = 0.5 * (d + 1) + kappa;
    p.beta = 0.5 * (d + ell + 1) + kappa;
    p.gamma_ = 0.5 * (d + ell) + 1.0 + kappa;
    require_param_space(p, d, "make_wendland");
    return p;
}

double TruncatedPoly::eval(double u) const {
    if (u >= 1.0) return 0.0;
    double s = 0.0, up = 1.0;
    for (double c : even) {
        s += c * up;
        up *= u * u;
    }
    if (!shifted.empty()) {
        double us = std::pow(u, shift_exponent);
        up = 1.0;
        for (double c : shifted) {
            s += c * us * up;
            up *= u * u;
        }
    }
    return s;
}

TruncatedPoly truncated_poly_coeffs(const KernelParams& p, int d) {
    // The expansion is a formal identity for the radial function; it does not
    // require P_d membership, only the integrality conditions below.
    const double dh = half(d);
    const double int_tol = 1e-9;
    double alpha = p.alpha, beta = p.beta, gamma_ = p.gamma_;
    bool primary = near_integer(beta - dh, int_tol) && near_integer(gamma_ - alpha, int_tol);
    bool symmetric = near_integer(gamma_ - dh, int_tol) && near_integer(beta - alpha, int_tol);
    if (!primary && symmetric) std::swap(beta, gamma_); // covariance is beta<->gamma symmetric
    else if (!primary && !symmetric)
        throw validation_error("truncated_poly_coeffs: needs beta-d/2 and gamma-alpha integral "
                               "(or the beta<->gamma swap)");
    if (near_integer(alpha - dh, int_tol))
        throw validation_error("truncated_poly_coeffs: alpha - d/2 must not be an integer");
    const int N = static_cast<int>(std::round(beta - dh));
    const int M = static_cast<int>(std::round(gamma_ - alpha));
    if (N < 1) throw validation_error("truncated_poly_coeffs: beta - d/2 must be >= 1");
    if (M < 0) throw validation_error("truncated_poly_coeffs: gamma - alpha must be >= 0");

    TruncatedPoly out;
    out.shift_exponent = 2.0 * alpha - d;
    // Even part: 2F1(d/2-gamma+1, d/2-beta+1; d/2-alpha+1; u^2) truncates at N terms.
    out.even.resize(static_cast<size_t>(N));
    double c = 1.0;
    for (int n = 0; n < N; ++n) {
        out.even[static_cast<size_t>(n)] = c;
        c *= (dh - gamma_ + 1.0 + n) * (dh - beta + 1.0 + n) /
             ((dh - alpha + 1.0 + n) * (n + 1.0));
    }
    // Shifted part: C u^(2 alpha - d) 2F1(alpha-beta+1, alpha-gamma+1; alpha-d/2+1; u^2),
    // M terms, with C the connection coefficient.
    out.shifted.resize(static_cast<size_t>(M));
    if (M > 0) {
        double C0 = gamma_ratio({dh - alpha, beta - dh, gamma_ - dh},
                                {alpha - dh, beta - alpha, gamma_ - alpha});
        c = C0;
        for (int n = 0; n < M; ++n) {
            out.shifted[static_cast<size_t>(n)] = c;
            c *= (alpha - beta + 1.0 + n) * (alpha - gamma_ + 1.0 + n) /
                 ((alpha - dh + 1.0 + n) * (n + 1.0));
        }
    }
    return out;
}

double limit_kernel_eval(const LimitKernelSpec& spec, double r) {
    if (!(spec.b > 0.0)) throw validation_error("limit_kernel_eval: b must be positive");
    if (r < 0.0) throw validation_error("limit_kernel_eval: r must be >= 0");
    const double x = r / spec.b;
    switch (spec.family) {
    case LimitFamily::Matern: {
        if (!(spec.shape > 0.0)) throw validation_error("limit_kernel_eval: Matern needs nu > 0");
        if (r == 0.0) return 1.0;
        double nu = spec.shape;
        return 2.0 * rgamma(nu) * std::pow(0.5 * x, nu) * bessel_k(nu, x);
    }
    case LimitFamily::Gaussian:
        return std::exp(-x * x);
    case LimitFamily::Erfc:
        return std::erfc(x);
    case LimitFamily::IncGamma:
        if (!(spec.shape > 0.0))
            throw validation_error("limit_kernel_eval: IncGamma needs alpha - d/2 > 0");
        return reg_inc_gamma_q(spec.shape, x * x);
    case LimitFamily::Laguerre: {
        // shape = alpha - d/2, shape2 = beta - d/2 (with beta > alpha)
        double s1 = spec.shape, s2 = spec.shape2;
        if (!(s2 > s1) || !(s1 > 0.0))
            throw validation_error("limit_kernel_eval: Laguerre needs beta > alpha > d/2");
        double pref = gamma_ratio({s2}, {s1});
        return pref * laguerre_second_kind(1.0 - s2, 1.0 - s1, x * x);
    }
    case LimitFamily::Tricomi: {
        // shape = n (alpha - d/2 = 2n), shape2 = w = beta - d/2
        double n = spec.shape, w = spec.shape2;
        if (!(n >= 1.0) || std::abs(n - std::round(n)) > 1e-12)
            throw validation_error("limit_kernel_eval: Tricomi needs integer n >= 1");
        if (!(w > 0.0)) throw validation_error("limit_kernel_eval: Tricomi needs beta > d/2");
        // Real-branch limit kernel: G(w)/G(2n) e^{-x^2} U(w - 2n, 1 - 2n, x^2).
        double pref = gamma_ratio({w}, {2.0 * n});
        return pref * std::exp(-x * x) * tricomi_u(w - 2.0 * n, 1.0 - 2.0 * n, x * x);
    }
    }
    throw validation_error("limit_kernel_eval: unknown family");
}

} // namespace ghcov
