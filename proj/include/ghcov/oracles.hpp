#ifndef GHCOV_ORACLES_HPP
#define GHCOV_ORACLES_HPP

#include "ghcov/gram.hpp"
#include "ghcov/univariate.hpp"

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

namespace ghcov {

/// Numerical integration control for the verification paths.
struct QuadratureSpec {
    enum class Method { AdaptiveGaussKronrod, BesselZeroPartition };
    Method method = Method::AdaptiveGaussKronrod;
    double abs_tol = 1e-10;
    int max_subdivisions = 4000;
};

/// Covariance by the finite-integral form (adaptive quadrature with
/// endpoint substitutions). Independent of the closed-form path.
double cov_eval_integral(const KernelParams& p, int d, double r,
                         const QuadratureSpec& q = {});

/// Covariance by the beta-mixture-of-powered-quadratics representation
/// (generalized Cauchy mixture); a third independent path.
double cov_eval_mixture(const KernelParams& p, int d, double r,
                        const QuadratureSpec& q = {});

/// Reconstructs the covariance at radius r by numerically inverting the
/// spectral density: oscillatory radial integral partitioned at Bessel
/// zeros, with the asymptotic tail integrated in closed form through
/// incomplete gamma functions.
double hankel_roundtrip(const KernelParams& p, int d, double r,
                        const QuadratureSpec& q = {});

/// Max deviation over the grid between the 1F2 power series and its
/// beta-mixture-of-Bessel quadrature; x_grid holds values of pi*a*rho.
double mixture_identity_check(double alpha, double beta, double gamma_,
                              const std::vector<double>& x_grid);

/// Deviation between the double-quadrature left side and the gamma-ratio
/// right side of the term-by-term integration identity used by the
/// multivariate validity proof.
double term_integration_identity_check(double alpha, double beta, double gamma_,
                                       double beta_ij, double gamma_ij, double a, double x);

/// Parameter path walked toward an asymptotic kernel, with sup-norm errors.
struct ConvergenceTrace {
    LimitKernelSpec target;
    std::vector<std::array<double, 4>> path; // (a, alpha, beta, gamma) per step
    std::vector<double> sup_errors;
    /// Nonincreasing within the given slack fraction?
    bool nonincreasing(double slack = 0.10) const;
};

/// Walks the parameter path of the target family (steps entries) and records
/// sup_{r in [0, 6b]} |cov_eval - limit_kernel_eval| per step. For the
/// Gaussian family, spec.shape = 0 selects the all-parameters path and
/// spec.shape = 1 the beta-to-alpha path.
ConvergenceTrace convergence_harness(const LimitKernelSpec& target, int steps, int d);

/// Gram matrix over points (rows of `points`, one point per row) with the
/// compact-support skip; eigenvalue summary included.
GramResult gram(const Eigen::MatrixXd& points, const KernelParams& p, int d);

struct SimulationResult {
    Eigen::MatrixXd samples;       // n_points x n_realizations
    Eigen::MatrixXd empirical_cov; // n_points x n_points
    double clipped_mass = 0.0;     // eigenvalue mass clipped at zero
    bool clipped_warning = false;  // clipped mass exceeded 1e-8 * trace
};

/// Draws Gaussian realizations through the symmetric square root of the Gram
/// matrix (eigenvalues clipped at zero). Fully deterministic in (seed).
SimulationResult simulate_field(const Eigen::MatrixXd& points, const KernelParams& p, int d,
                                int n_realizations, std::uint64_t seed);

namespace detail {

/// Counter-based standard normal: value is a pure function of (seed, index),
/// so parallel or reordered generation is reproducible.
double gaussian_at(std::uint64_t seed, std::uint64_t index);

/// Uniform in (0,1], pure function of (seed, index).
double uniform_at(std::uint64_t seed, std::uint64_t index);

} // namespace detail

} // namespace ghcov

#endif
