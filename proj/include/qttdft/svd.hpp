#pragma once

#include "qttdft/complex_tensor.hpp"

namespace qttdft {

/// Truncated SVD of a matrix: u * diag(s) * v approximates the input,
/// with u of shape (rows, r), v of shape (r, cols) and s nonincreasing.
/// discarded_weight = sqrt(sum of squares of dropped singular values),
/// which equals the Frobenius norm of the reconstruction residual.
struct SvdResult {
    ComplexTensor u;
    std::vector<double> s;
    ComplexTensor v;
    double discarded_weight = 0.0;

    i64 rank() const { return static_cast<i64>(s.size()); }
};

/// Keep at most `rank` singular values (ties at the boundary keep the
/// earlier index; output is deterministic).
SvdResult svd_truncate(const ComplexTensor& m, i64 rank);

/// Keep the minimal rank with discarded_weight <= tol * ||m||_F.
/// A zero matrix yields rank 1 with s = [0].
SvdResult svd_truncate_tol(const ComplexTensor& m, double tol);

/// Keep the minimal rank with discarded_weight <= abs_tol (absolute).
SvdResult svd_truncate_abs(const ComplexTensor& m, double abs_tol);

ComplexTensor svd_reconstruct(const SvdResult& f);

} // namespace qttdft
