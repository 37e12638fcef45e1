#pragma once

#include <complex>
#include <cstdint>
#include <span>

namespace qttdft::kernels {

using cd = std::complex<double>;
using i64 = std::int64_t;

// Finite-input complex product; sidesteps the Annex-G inf/nan libcall in the
// hot loops, where operands are always finite.
inline cd cmul(cd x, cd y) {
    return cd{x.real() * y.real() - x.imag() * y.imag(),
              x.real() * y.imag() + x.imag() * y.real()};
}

// Row-major complex GEMM, C = A(MxK) * B(KxN). The _serial variants are the
// reference implementations; the unsuffixed ones dispatch to OpenMP when the
// problem is large enough and produce identical results row by row.
void matmul_serial(const cd* a, const cd* b, cd* c, i64 m, i64 k, i64 n);
void matmul(const cd* a, const cd* b, cd* c, i64 m, i64 k, i64 n);

double max_abs_serial(std::span<const cd> v);
double max_abs(std::span<const cd> v);

double max_abs_diff_serial(std::span<const cd> a, std::span<const cd> b);
double max_abs_diff(std::span<const cd> a, std::span<const cd> b);

} // namespace qttdft::kernels
