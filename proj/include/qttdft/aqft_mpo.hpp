#pragma once

#include "qttdft/qft_mpo.hpp"

namespace qttdft {

/// Approximate QFT setup: n qubits at level b in {0,...,n-1}, with the
/// uniform grid u^b = b / 2^b on [0, 1) that replaces the Chebyshev nodes.
struct AqftParams {
    int n = 0;
    int b = 0;
    std::vector<double> u_nodes; // size 2^b

    i64 rank() const { return static_cast<i64>(u_nodes.size()); }
};

AqftParams make_aqft_params(int n, int b);

/// AQFT entry: the DFT phase with all exponent terms k - l > b discarded
/// (the l > k terms are exact identities and are dropped too).
cd aqft_entry(const AqftParams& p, std::span<const int> sigma, std::span<const int> tau);

/// Internal AQFT core chi^a((sigma+u^b)/2) e^{-pi i (sigma+u^b) tau} of
/// shape (2^b, 2, 2, 2^b); each (b, sigma, tau) column has exactly one
/// nonzero left-bond slot, selected by the half-open indicator bins
/// [u^a, u^{a+1}).
ComplexTensor build_aqft_core(int b);

/// Exact rank-2^b MPO of the level-b AQFT. Leftmost core
/// e^{-pi i (sigma+u^b) tau}, rightmost core chi^a(sigma/2) e^{-pi i sigma tau}.
Mpo assemble_aqft_mpo(int n, int b);

/// pi n 2^{-b}.
double aqft_error_bound(int n, int b);

} // namespace qttdft
