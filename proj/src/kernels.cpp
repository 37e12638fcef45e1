#include "qttdft/kernels.hpp"

#include "qttdft/parallel.hpp"

#include <algorithm>
#include <cstring>

namespace qttdft::kernels {

namespace {

// One output row of C = A * B; shared by the serial and parallel paths so
// both produce bit-identical rows.
inline void matmul_row(const cd* a, const cd* b, cd* c, i64 i, i64 k, i64 n) {
    cd* crow = c + i * n;
    std::fill_n(crow, n, cd{0.0, 0.0});
    const cd* arow = a + i * k;
    for (i64 p = 0; p < k; ++p) {
        const cd aip = arow[p];
        if (aip == cd{0.0, 0.0})
            continue;
        const cd* brow = b + p * n;
        for (i64 j = 0; j < n; ++j)
            crow[j] += cmul(aip, brow[j]);
    }
}

} // namespace

void matmul_serial(const cd* a, const cd* b, cd* c, i64 m, i64 k, i64 n) {
    for (i64 i = 0; i < m; ++i)
        matmul_row(a, b, c, i, k, n);
}

void matmul(const cd* a, const cd* b, cd* c, i64 m, i64 k, i64 n) {
    if (!should_parallelize(m * k * n)) {
        matmul_serial(a, b, c, m, k, n);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (i64 i = 0; i < m; ++i)
        matmul_row(a, b, c, i, k, n);
#else
    matmul_serial(a, b, c, m, k, n);
#endif
}

double max_abs_serial(std::span<const cd> v) {
    double best = 0.0;
    for (const cd& z : v)
        best = std::max(best, std::abs(z));
    return best;
}

double max_abs(std::span<const cd> v) {
    if (!should_parallelize(static_cast<i64>(v.size())))
        return max_abs_serial(v);
    double best = 0.0;
    const i64 size = static_cast<i64>(v.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : best) num_threads(thread_count())
#endif
    for (i64 i = 0; i < size; ++i)
        best = std::max(best, std::abs(v[static_cast<size_t>(i)]));
    return best;
}

double max_abs_diff_serial(std::span<const cd> a, std::span<const cd> b) {
    double best = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        best = std::max(best, std::abs(a[i] - b[i]));
    return best;
}

double max_abs_diff(std::span<const cd> a, std::span<const cd> b) {
    if (!should_parallelize(static_cast<i64>(a.size())))
        return max_abs_diff_serial(a, b);
    double best = 0.0;
    const i64 size = static_cast<i64>(a.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : best) num_threads(thread_count())
#endif
    for (i64 i = 0; i < size; ++i)
        best = std::max(best, std::abs(a[static_cast<size_t>(i)] - b[static_cast<size_t>(i)]));
    return best;
}

} // namespace qttdft::kernels
