#include "ghcov/gram.hpp"
#include "ghcov/errors.hpp"

#include <Eigen/Eigenvalues>

namespace ghcov {
namespace detail {

GramResult summarize_gram(Eigen::MatrixXd m, double psd_tol) {
    GramResult out;
    const Eigen::Index n = m.rows();
    if (n != m.cols()) throw validation_error("summarize_gram: matrix not square");
    Eigen::Index nnz = 0;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            if (m(i, j) != 0.0) ++nnz;
    out.nnz_fraction = n == 0 ? 0.0 : static_cast<double>(nnz) / static_cast<double>(n * n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw numeric_error("summarize_gram: eigensolver failed");
    out.min_eig = es.eigenvalues().minCoeff();
    out.max_eig = es.eigenvalues().maxCoeff();
    out.psd_tol = psd_tol;
    out.psd = out.min_eig >= -psd_tol * std::max(out.max_eig, 0.0);
    out.matrix = std::move(m);
    return out;
}

} // namespace detail
} // namespace ghcov
