#ifndef GHCOV_GRAM_HPP
#define GHCOV_GRAM_HPP

#include <Eigen/Dense>

namespace ghcov {

/// Assembled kernel matrix with its eigenvalue summary. psd is judged at
/// min_eig >= -tol * max_eig with the tolerance recorded alongside.
struct GramResult {
    Eigen::MatrixXd matrix;
    double min_eig = 0.0;
    double max_eig = 0.0;
    bool psd = false;
    double nnz_fraction = 0.0;
    double psd_tol = 1e-10;
};

namespace detail {

/// Fill eigenvalue summary + psd flag + nonzero fraction for a symmetric matrix.
GramResult summarize_gram(Eigen::MatrixXd m, double psd_tol = 1e-10);

} // namespace detail

} // namespace ghcov

#endif
