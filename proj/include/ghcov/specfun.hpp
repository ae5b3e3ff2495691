#ifndef GHCOV_SPECFUN_HPP
#define GHCOV_SPECFUN_HPP

#include <vector>

namespace ghcov {

/// Truncation control for hypergeometric series.
struct PrecisionBudget {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    int max_terms = 10000;
};

/// Parameter lists of a generalized hypergeometric series kFk'.
struct HypParams {
    std::vector<double> upper; // alpha_1 .. alpha_k
    std::vector<double> lower; // beta_1 .. beta_k'
};

struct SeriesResult {
    double value = 0.0;
    double err_estimate = 0.0;
    int terms_used = 0;
};

/// ln|Gamma(x)|; the sign of Gamma(x) is written to *sign when non-null.
/// Throws validation_error at the poles (x a nonpositive integer).
double log_gamma(double x, int* sign = nullptr);

/// exp(log_gamma) with sign, for arguments where Gamma does not overflow.
double gamma_fn(double x);

/// 1/Gamma(x); zero at the poles.
double rgamma(double x);

/// Bessel function of the first kind, real order nu >= -1, x >= 0.
double bessel_j(double nu, double x);

/// Modified Bessel function of the second kind, x > 0. Symmetric in nu.
double bessel_k(double nu, double x);

/// Generalized hypergeometric series (power series with term-ratio
/// truncation). Respects the convergence domain: k <= k' any x,
/// k = k'+1 needs |x| < 1 (or |x| = 1 with sum(upper) < sum(lower)).
SeriesResult hyp_pfq(const HypParams& params, double x, const PrecisionBudget& budget = {});

enum class Hyp2f1Path { Auto, DirectSeries, Connection };

/// 2F1(A, B; C; x) on x in [0, 1] with C - A - B > 0.
/// Direct series for x <= 1/2, the 1-x connection expansion for x > 1/2,
/// Gauss summation at x = 1. When C - A - B is within 1e-6 of an integer the
/// connection expansion is evaluated at C +/- 1e-5 and averaged.
double hyp2f1_kernel_form(double A, double B, double C, double x,
                          const PrecisionBudget& budget = {},
                          Hyp2f1Path path = Hyp2f1Path::Auto);

/// 1F2(alpha; beta, gamma; x). For x < -400 the alternating series is
/// abandoned for the beta-mixture-of-Bessel quadrature, whose integrand is
/// bounded; elsewhere the direct series is used.
double hyp1f2(double alpha, double beta, double gamma_, double x,
              const PrecisionBudget& budget = {});

/// Regularized upper incomplete gamma Q(s, x), s > 0, x >= 0.
/// Series for x < s + 1, Lentz continued fraction otherwise.
double reg_inc_gamma_q(double s, double x);

/// Tricomi confluent hypergeometric U(a, b, x) through the standard two-term
/// 1F1 combination; b within 1e-6 of an integer is handled by dual
/// perturbation b +/- 1e-5 and averaging. For x < 0 the power x^(1-b) is taken
/// on the real branch |x|^(1-b) cos(pi (1-b)).
double tricomi_u(double a, double b, double x);

/// Laguerre function of the second kind
///   L(alpha, beta, x) = 1/Gamma(beta-alpha) int_1^inf e^(-u x) u^(alpha-1) (u-1)^(beta-alpha-1) du,
/// beta > alpha, by adaptive quadrature with endpoint substitution.
/// x = 0 requires beta < 1 and is evaluated in closed form.
double laguerre_second_kind(double alpha, double beta, double x);

namespace detail {

/// Large-argument expansion of 1F2(alpha; beta, gamma; -z^2):
/// algebraic series (n_alg terms) plus the leading oscillatory term.
double hyp1f2_asymptotic_neg(double alpha, double beta, double gamma_, double z, int n_alg = 3);

/// 1F2(alpha; beta, gamma; -z^2) by the Eq.-style beta mixture of Bessel
/// functions; valid for beta > alpha > 0, gamma > 0, z >= 0.
double hyp1f2_mixture(double alpha, double beta, double gamma_, double z, double abs_tol = 1e-13);

} // namespace detail

} // namespace ghcov

#endif
