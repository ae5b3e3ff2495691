#ifndef GHCOV_UNIVARIATE_HPP
#define GHCOV_UNIVARIATE_HPP

#include "ghcov/specfun.hpp"

#include <string>
#include <vector>

namespace ghcov {

/// Parameters of the compactly-supported hypergeometric covariance:
/// range a, shape triple (alpha, beta, gamma), variance scale sigma2.
struct KernelParams {
    double a = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma_ = 0.0;
    double sigma2 = 1.0;
};

/// Membership report for the validity region P_d.
struct ParamSpaceReport {
    int dimension = 0;
    bool in_space = false;
    bool cond_alpha = false;   // alpha > d/2  (alpha > 0 when d = 0)
    bool cond_product = false; // 2 (beta-alpha)(gamma-alpha) >= alpha
    bool cond_sum = false;     // 2 (beta+gamma) >= 6 alpha + 1
    bool boundary = false;     // some condition holds with equality within 1e-12
};

ParamSpaceReport check_param_space(double alpha, double beta, double gamma_, int d);
ParamSpaceReport check_param_space(const KernelParams& p, int d);

/// Throws validation_error naming every failed condition.
void require_param_space(const KernelParams& p, int d, const char* where);

/// Human-readable condition summary, used in diagnostics.
std::string describe_param_space(const ParamSpaceReport& r);

/// Normalization factor zeta_d making the covariance equal 1 at the origin;
/// computed in log space.
double zeta_normalizer(const KernelParams& p, int d);

/// Covariance value sigma^2 g_d(r); exactly 0 for r >= a, exactly sigma^2 at r = 0.
double cov_eval(const KernelParams& p, int d, double r);

/// Isotropic spectral density at radial frequency u >= 0:
/// sigma^2 zeta_d 1F2(alpha; beta, gamma; -(pi a u)^2).
double spectral_eval(const KernelParams& p, int d, double u);

struct SmoothnessReport {
    int k_origin = 0;      // differentiability order at r = 0
    int k_range = 0;       // differentiability order at r = a
    int ms_diff_order = 0; // floor(k_origin / 2)
};

SmoothnessReport smoothness(const KernelParams& p, int d);

/// Result of a dimension-walk operator: parameters, the new dimension, and
/// the radial proportionality constant of the transitive operator.
struct DimensionWalk {
    KernelParams params;
    int dimension = 0;
    double scale = 1.0;
};

/// Transitive upgrading of order k (0 <= k < d): shifts (alpha, beta, gamma)
/// by +k/2 and lands in dimension d-k; scale = zeta_d / zeta_{d-k} at the
/// input parameters. k = 0 returns the input with scale 1.
DimensionWalk montee(const KernelParams& p, int d, int k);

/// Transitive downgrading of order k: shifts parameters by -k/2 into
/// dimension d+k, provided the shifted triple lies in P_{d+k}; the scale is
/// the reciprocal of the matching montee so the two compose to the identity.
DimensionWalk descente(const KernelParams& p, int d, int k);

/// Restriction to a subspace R^{d-k}: the radial function is unchanged
/// (scale always 1).
DimensionWalk restrict_kernel(const KernelParams& p, int d, int k);

/// Extension to R^{d+k}; fails if the shifted triple leaves P_{d+k} and then
/// reports the maximal admissible k.
DimensionWalk extend_kernel(const KernelParams& p, int d, int k);

/// Maximal k such that extend_kernel(p, d, k) is valid.
int max_extension_order(const KernelParams& p, int d);

/// Euclid's hat / spherical family: alpha=(d+1)/2+kappa, beta=d/2+1+kappa,
/// gamma=d+1+2kappa. Fractional kappa > -1/2 is admitted (fractional
/// montee/descente of the spherical kernel).
KernelParams make_spherical(int d, double kappa, double a);

/// Askey kernel (1-r/a)_+^ell: requires ell >= (d+1)/2.
KernelParams make_askey(int d, double ell, double a);

/// Generalized Wendland kernel: requires ell >= (d+1)/2 + kappa, kappa >= 0.
KernelParams make_wendland(int d, double kappa, double ell, double a);

/// Finite power expansion of the covariance when beta - d/2 and gamma - alpha
/// are integers and alpha - d/2 is not: g(r) = sum even[n] u^(2n)
/// + sum shifted[n] u^(2n + shift_exponent), u = r/a < 1.
struct TruncatedPoly {
    std::vector<double> even;
    std::vector<double> shifted;
    double shift_exponent = 0.0;
    double eval(double u) const;
};

TruncatedPoly truncated_poly_coeffs(const KernelParams& p, int d);

enum class LimitFamily { Matern, Laguerre, Tricomi, IncGamma, Erfc, Gaussian };

/// Asymptotic kernel reached along a parameter path. `shape` is nu=alpha-d/2
/// for Matern, n for Tricomi and alpha-d/2 for IncGamma; Laguerre and Tricomi
/// additionally carry shape2 = beta-d/2.
struct LimitKernelSpec {
    LimitFamily family = LimitFamily::Matern;
    double b = 1.0;
    double shape = 0.5;
    double shape2 = 0.0;
};

double limit_kernel_eval(const LimitKernelSpec& spec, double r);

} // namespace ghcov

#endif
