#include "qttdft/dft_oracle.hpp"

#include "qttdft/cheb.hpp"
#include "qttdft/svd.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qttdft {

namespace {
constexpr double kPi = std::numbers::pi_v<double>;
}

ComplexTensor dense_dft(int n, int d) {
    if (n < 1 || d < 2)
        throw std::invalid_argument("dense_dft: need n >= 1 and d >= 2");
    i64 dim = 1;
    for (int k = 0; k < n; ++k) {
        dim *= d;
        if (dim > 4096)
            throw std::invalid_argument("dense_dft: d^n exceeds the 4096 guard");
    }
    ComplexTensor out({dim, dim});
    for (i64 s = 0; s < dim; ++s)
        for (i64 t = 0; t < dim; ++t)
            out.at({s, t}) =
                std::polar(1.0, -2.0 * kPi * static_cast<double>((s * t) % dim) / dim);
    return out;
}

std::vector<cd> fft(std::span<const cd> v) {
    const size_t len = v.size();
    if (len == 0 || (len & (len - 1)) != 0)
        throw std::invalid_argument("fft: length must be a power of two");
    std::vector<cd> a(v.begin(), v.end());

    // bit reversal
    for (size_t i = 1, j = 0; i < len; ++i) {
        size_t bit = len >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    for (size_t span = 2; span <= len; span <<= 1) {
        const double angle = -2.0 * kPi / static_cast<double>(span);
        const cd step = std::polar(1.0, angle);
        for (size_t start = 0; start < len; start += span) {
            cd w{1.0, 0.0};
            for (size_t k = 0; k < span / 2; ++k) {
                const cd even = a[start + k];
                const cd odd = a[start + k + span / 2] * w;
                a[start + k] = even + odd;
                a[start + k + span / 2] = even - odd;
                w *= step;
            }
        }
    }
    return a;
}

BlockReport block_identity_check(int n, int l, int K) {
    if (n < 1 || n > 6)
        throw std::invalid_argument("block_identity_check: n must be in [1, 6]");
    if (l < 0 || l > n)
        throw std::invalid_argument("block_identity_check: level must be in [0, n]");

    const ComplexTensor full = dense_dft(n, 2);
    const i64 block_rows = i64{1} << (n - l); // and the row-factor DFT size
    const i64 block_cols = i64{1} << l;       // and the column-factor DFT size
    const ComplexTensor row_dft = dense_dft(n - l == 0 ? 1 : n - l, 2);
    const ComplexTensor col_dft = dense_dft(l == 0 ? 1 : l, 2);

    BlockReport report;
    report.n = n;
    report.l = l;
    report.rank_threshold = ek_bound(K);

    auto block_entry = [&](i64 i, i64 j, i64 p, i64 q) {
        return full.at({i * block_rows + p, j * block_cols + q});
    };
    auto row_phase = [&](i64 j, i64 p) {
        // column j of the 2^{n-l}-point DFT; scalar 1 in the degenerate level
        return (n - l == 0) ? cd{1.0, 0.0} : row_dft.at({p, j});
    };
    auto col_phase = [&](i64 i, i64 q) { return (l == 0) ? cd{1.0, 0.0} : col_dft.at({q, i}); };

    const i64 grid_rows = i64{1} << l;
    const i64 grid_cols = i64{1} << (n - l);
    for (i64 i = 0; i < grid_rows; ++i) {
        for (i64 j = 0; j < grid_cols; ++j) {
            ComplexTensor block({block_rows, block_cols});
            double residual = 0.0;
            for (i64 p = 0; p < block_rows; ++p) {
                for (i64 q = 0; q < block_cols; ++q) {
                    const cd actual = block_entry(i, j, p, q);
                    const cd predicted = row_phase(j, p) * block_entry(0, 0, p, q) * col_phase(i, q);
                    residual = std::max(residual, std::abs(actual - predicted));
                    block.at({p, q}) = actual;
                }
            }
            report.max_identity_residual = std::max(report.max_identity_residual, residual);

            const SvdResult f = svd_truncate(block, std::min(block_rows, block_cols));
            int rank = 0;
            for (double s : f.s)
                if (s > report.rank_threshold)
                    ++rank;
            report.block_ranks.push_back(rank);
            report.max_rank = std::max(report.max_rank, rank);
            // spectral norm of the tail beyond rank K+1 is the next singular value
            const i64 keep = K + 1;
            if (static_cast<i64>(f.s.size()) > keep)
                report.max_spectral_tail =
                    std::max(report.max_spectral_tail, f.s[static_cast<size_t>(keep)]);
        }
    }
    return report;
}

} // namespace qttdft
