#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qttdft {

using cd = std::complex<double>;

/// e^{-2 pi i x y}, the phase family the whole construction interpolates.
struct TargetFunction {
    double y = 0.0;
    cd operator()(double x) const;
};

/// The K+1 Chebyshev-Lobatto nodes c^a = (1 - cos(pi a / K)) / 2 on [0, 1],
/// plus the barycentric weights of the Lagrange cardinal functions on them.
/// Nodes are exactly symmetric: nodes[a] + nodes[K-a] == 1.
struct ChebGrid {
    int K = 0;
    std::vector<double> nodes;   // size K+1, strictly increasing, 0 and 1 at the ends
    std::vector<double> weights; // second-kind barycentric weights
};

ChebGrid make_grid(int K); // K >= 1

/// Cardinal function P^alpha(x): degree-K Lagrange polynomial with
/// P^alpha(c^beta) = delta_{alpha,beta}. Barycentric evaluation; exact node
/// hits short-circuit to the delta value.
double cardinal_eval(const ChebGrid& g, int alpha, double x);

/// All K+1 cardinal values at x in one pass.
void cardinal_all(const ChebGrid& g, double x, std::span<double> out);

/// Sum_alpha samples[alpha] * P^alpha(x).
cd interpolate(const ChebGrid& g, std::span<const cd> samples, double x);

/// Max over a uniform probe grid on [0,1] of Sum_alpha |P^alpha(x)|:
/// a lower estimate of the Lebesgue constant.
double lebesgue_constant(const ChebGrid& g, int probe_points);

/// 1 + (2/pi) ln(K+1), natural logarithm.
double lebesgue_bound(int K);

/// 4 (pi/2)^{K+1} e^K K^{-K} / (K - pi/2). Requires K >= 2 (the formula has
/// a pole at K = pi/2); K <= 1 is a domain error.
double ek_bound(int K);

/// Max over uniform x,y probe grids on [0,1] of the interpolation error
/// |f_y(x) - interp f_y(x)| for f_y(x) = e^{-2 pi i x y}. A lower estimate
/// of the worst-case error E_K.
double empirical_ek(const ChebGrid& g, int x_probes, int y_probes);

inline constexpr int kDefaultProbes = 513;

} // namespace qttdft
