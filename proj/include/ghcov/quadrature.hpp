#ifndef GHCOV_QUADRATURE_HPP
#define GHCOV_QUADRATURE_HPP

#include <functional>

namespace ghcov {

/// Adaptive quadrature on [a, b]: 15-point Gauss-Legendre panels with
/// bisection, error estimated by parent-vs-children comparison.
/// Throws numeric_error if the subdivision budget is exhausted before
/// the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-12,
                 int max_subdivisions = 4000);

/// Same contract, but never throws: returns the best estimate and reports
/// the achieved error bound through *err_out.
double integrate_nothrow(const std::function<double(double)>& f, double a, double b,
                         double abs_tol, double rel_tol, int max_subdivisions,
                         double* err_out);

/// Beta-weighted integral  int_0^1 t^(p-1) (1-t)^(q-1) f(t) dt  with p, q > 0
/// and f bounded. Endpoint singularities (p < 1 or q < 1) are removed by the
/// power substitutions t = (w^(1/p))/2 and 1-t = (w^(1/q))/2 on the two halves.
double integrate_beta_weighted(const std::function<double(double)>& f,
                               double p, double q,
                               double abs_tol = 1e-12, double rel_tol = 1e-12,
                               int max_subdivisions = 4000);

/// Nodes of the fixed 15-point Gauss-Legendre rule mapped to [a, b];
/// returns the rule's value. No adaptivity; used for lobe integration where
/// the caller controls panel widths.
double gauss15(const std::function<double(double)>& f, double a, double b);

} // namespace ghcov

#endif
