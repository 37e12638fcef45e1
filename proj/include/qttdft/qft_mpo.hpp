#pragma once

#include "qttdft/cheb.hpp"
#include "qttdft/complex_tensor.hpp"
#include "qttdft/digits.hpp"

#include <span>
#include <string>

namespace qttdft {

enum class MpoKind { Chebyshev, Aqft };

const char* to_string(MpoKind kind);

/// Matrix product operator: n cores of shape (left bond, sigma, tau, right
/// bond) with unit boundary bonds. `param` is K for the Chebyshev
/// construction (bond K+1) and b for the AQFT (bond 2^b).
struct Mpo {
    int n = 0;
    int d = 2;
    MpoKind kind = MpoKind::Chebyshev;
    int param = 0;
    std::vector<ComplexTensor> cores;

    /// Internal bond dimension (1 for n == 1).
    i64 bond_dimension() const;
};

void validate_mpo(const Mpo& m);

/// DFT tensor entry e^{-(2/d) pi i Sum d^{-k} d^{l} sigma_k tau_l} with the
/// l > k terms dropped (each contributes a full turn) and the rest summed in
/// double precision; sigma is the MSB-first output string, tau the LSB-first
/// input string.
cd dft_entry(int n, int d, std::span<const int> sigma, std::span<const int> tau);

/// Binary fraction 0.tau_m ... tau_1 built from the first m digits:
/// y_{<=m} = Sum_{l=1}^{m} d^{l-m-1} tau_l, in [0, 1).
double y_lower_fraction(std::span<const int> tau, int m, int d);

/// x_{>m} = Sum_{k=m+1}^{n} d^{m-k} sigma_k, in [0, 1).
double x_upper_fraction(std::span<const int> sigma, int m, int d);

/// Internal core A^{ab}(sigma,tau) = P^a((sigma+c^b)/d) e^{-(2/d) pi i (sigma+c^b) tau},
/// shape (K+1, d, d, K+1) with index order (left bond a, sigma, tau, right bond b).
ComplexTensor build_internal_core(int K, int d);

/// Leftmost core, the one-site tensor e^{-(2/d) pi i (sigma+c^b) tau} with a
/// single dangling right bond; equals the internal core summed over its left
/// bond. Shape (1, d, d, K+1).
ComplexTensor build_left_core(int K, int d);

/// Rightmost core A^{a0}: the internal core with right bond fixed at the
/// leftmost node c^0 = 0. Shape (K+1, d, d, 1).
ComplexTensor build_right_core(int K, int d);

/// Closed-form rank-(K+1) MPO approximating the d^n-point DFT. Exact for
/// n = 1 (single phase core); n = 2 uses only the boundary cores.
Mpo assemble_qft_mpo(int n, int K, int d = 2);

/// Single entry of the MPO: product of the selected bond matrices, left to
/// right. Cost O(n r^2).
cd mpo_entry(const Mpo& m, std::span<const int> sigma, std::span<const int> tau);

/// Dense d^n x d^n matrix M[s][t] of the MPO (size guard d^{2n} <= 2^24).
ComplexTensor mpo_to_dense(const Mpo& m);

/// Entrywise error bound of the Chebyshev MPO,
/// (Lambda^{n-1} - 1)/(Lambda - 1) * E_K, together with the cruder
/// (n-1) Lambda^{n-2} E_K form. n = 1 is exact (0).
struct ErrorBound {
    double value = 0.0;
    double crude = 0.0;
};

ErrorBound theorem_error_bound(int n, int K);

/// Same bound with Lambda and E_K replaced by measured estimates
/// (lebesgue_constant / empirical_ek on the default probe grids).
ErrorBound theorem_error_bound_empirical(int n, int K,
                                         int probes = kDefaultProbes,
                                         int lebesgue_probes = 100000);

/// Rank-(K+1) factorization of the m-th unfolding matrix T_m:
/// R[s_m, t_m, a] = F(sigma_{1:m}, tau_{1:m}) e^{-2 pi i y_{<=m} c^a}   (this is F_m)
/// L[a, s', t'] = P^a(x_{>m}) F(sigma_{m+1:n}, tau_{m+1:n})
/// so that Sum_a R L matches T_m entrywise within ek_bound(K).
struct UnfoldingFactors {
    int m = 0;
    ComplexTensor R; // (2^m, 2^m, K+1)
    ComplexTensor L; // (K+1, 2^{n-m}, 2^{n-m})
};

UnfoldingFactors build_unfolding_factors(int n, int m, int K);

} // namespace qttdft
