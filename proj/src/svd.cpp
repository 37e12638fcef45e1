#include "qttdft/svd.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace qttdft {

namespace {

using EigenMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_matrix(const ComplexTensor& m) {
    if (m.rank() != 2)
        throw std::invalid_argument("svd_truncate: input must be a matrix");
}

SvdResult truncate_decomposition(const EigenMat& u, const Eigen::VectorXd& s,
                                 const EigenMat& vh, i64 keep) {
    const i64 full = static_cast<i64>(s.size());
    if (keep < 1)
        keep = 1;
    if (keep > full)
        keep = full;

    double discarded_sq = 0.0;
    for (i64 i = keep; i < full; ++i)
        discarded_sq += s(i) * s(i);

    SvdResult out;
    out.u = ComplexTensor({u.rows(), keep});
    out.v = ComplexTensor({keep, vh.cols()});
    out.s.assign(s.data(), s.data() + keep);
    for (i64 i = 0; i < u.rows(); ++i)
        for (i64 j = 0; j < keep; ++j)
            out.u.data[static_cast<size_t>(i * keep + j)] = u(i, j);
    for (i64 i = 0; i < keep; ++i)
        for (i64 j = 0; j < vh.cols(); ++j)
            out.v.data[static_cast<size_t>(i * vh.cols() + j)] = vh(i, j);
    out.discarded_weight = std::sqrt(discarded_sq);
    return out;
}

// Full SVD via Eigen; vh is the row factor such that m = u * diag(s) * vh.
void full_svd(const ComplexTensor& m, EigenMat& u, Eigen::VectorXd& s, EigenMat& vh) {
    const i64 rows = m.shape[0];
    const i64 cols = m.shape[1];
    Eigen::Map<const EigenMat> mapped(m.data.data(), rows, cols);
    Eigen::JacobiSVD<EigenMat> svd(mapped, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = svd.matrixU();
    s = svd.singularValues();
    vh = svd.matrixV().adjoint();
}

} // namespace

SvdResult svd_truncate(const ComplexTensor& m, i64 rank) {
    check_matrix(m);
    if (rank < 1)
        throw std::invalid_argument("svd_truncate: rank must be >= 1");
    EigenMat u, vh;
    Eigen::VectorXd s;
    full_svd(m, u, s, vh);
    return truncate_decomposition(u, s, vh, rank);
}

SvdResult svd_truncate_tol(const ComplexTensor& m, double tol) {
    check_matrix(m);
    if (tol < 0.0)
        throw std::invalid_argument("svd_truncate: tol must be nonnegative");
    return svd_truncate_abs(m, tol * frobenius_norm(m));
}

SvdResult svd_truncate_abs(const ComplexTensor& m, double abs_tol) {
    check_matrix(m);
    if (abs_tol < 0.0)
        throw std::invalid_argument("svd_truncate: tolerance must be nonnegative");
    EigenMat u, vh;
    Eigen::VectorXd s;
    full_svd(m, u, s, vh);

    // smallest rank whose discarded tail stays within budget
    const i64 full = static_cast<i64>(s.size());
    double tail_sq = 0.0;
    i64 keep = full;
    for (i64 r = full; r >= 1; --r) {
        const double next_sq = tail_sq + s(r - 1) * s(r - 1);
        if (std::sqrt(next_sq) <= abs_tol) {
            tail_sq = next_sq;
            keep = r - 1;
        } else {
            break;
        }
    }
    return truncate_decomposition(u, s, vh, keep);
}

ComplexTensor svd_reconstruct(const SvdResult& f) {
    const i64 rows = f.u.shape[0];
    const i64 r = f.rank();
    ComplexTensor us({rows, r});
    for (i64 i = 0; i < rows; ++i)
        for (i64 j = 0; j < r; ++j)
            us.data[static_cast<size_t>(i * r + j)] =
                f.u.data[static_cast<size_t>(i * r + j)] * f.s[static_cast<size_t>(j)];
    return contract(us, f.v, {{1, 0}});
}

} // namespace qttdft
