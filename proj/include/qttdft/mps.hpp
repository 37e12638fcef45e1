#pragma once

#include "qttdft/complex_tensor.hpp"
#include "qttdft/digits.hpp"
#include "qttdft/qft_mpo.hpp"

namespace qttdft {

/// Quantized vector: n cores of shape (left bond, digit, right bond) with
/// unit boundary bonds, plus the significance convention of site 1.
struct Mps {
    int n = 0;
    int d = 2;
    SignificanceOrder order = SignificanceOrder::LsbFirst;
    std::vector<ComplexTensor> cores;

    i64 max_bond() const;
};

void validate_mps(const Mps& m);

/// TT-SVD quantization of a dense length-d^n vector. The per-bond truncation
/// budget is tol / sqrt(n-1) relative to ||v||, so the accumulated 2-norm
/// reconstruction error is at most tol * ||v||.
Mps dense_to_mps(std::span<const cd> v, int d, SignificanceOrder order, double tol);

/// Exact dense contraction honoring the significance order (guard d^n <= 2^24).
std::vector<cd> mps_to_dense(const Mps& m);

/// Apply an MPO to an LSB-first MPS. The result is MSB-first: the transform
/// flips the significance convention instead of inserting a bit-reversal
/// network, which is exactly what keeps the operator low-rank. tol > 0
/// rounds the result by TT-SVD; tol = 0 keeps the full grown bond.
Mps apply_mpo(const Mpo& op, const Mps& v, double tol);

/// Explicit digit-reversal permutation on a dense vector, for callers that
/// need natural-order output after an MPO application.
std::vector<cd> digit_reversal_permutation(std::span<const cd> v, int d);

} // namespace qttdft
