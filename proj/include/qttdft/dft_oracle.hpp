#pragma once

#include "qttdft/complex_tensor.hpp"

#include <vector>

namespace qttdft {

/// Dense DFT matrix F[s][t] = e^{-2 pi i s t / d^n} (guard d^n <= 4096).
ComplexTensor dense_dft(int n, int d = 2);

/// Radix-2 FFT, same sign convention e^{-2 pi i s t / N}. Length must be a
/// power of two.
std::vector<cd> fft(std::span<const cd> v);

/// Dyadic block structure of the 2^n x 2^n DFT at level l: a 2^l x 2^{n-l}
/// grid of blocks, each of size 2^{n-l} x 2^l.
struct BlockReport {
    int n = 0;
    int l = 0;
    /// Max over all blocks of the entrywise residual |F_ij - D_j F_00 D_i|,
    /// where D_i is diagonal from column i of the 2^l-point DFT and D_j
    /// diagonal from column j of the 2^{n-l}-point DFT.
    double max_identity_residual = 0.0;
    /// Numerical rank of each block at the supplied threshold, row-major
    /// over the (i, j) grid.
    std::vector<int> block_ranks;
    int max_rank = 0;
    double rank_threshold = 0.0;
    /// Largest spectral mass beyond rank K+1 over all blocks:
    /// max over blocks of sigma_{K+2}.
    double max_spectral_tail = 0.0;
};

/// Verify the complementary low-rank block identity F_ij = D_j F_00 D_i at
/// level l and report per-block numerical ranks at threshold ek_bound(K).
BlockReport block_identity_check(int n, int l, int K = 8);

} // namespace qttdft
