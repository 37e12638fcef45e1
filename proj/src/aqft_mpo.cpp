#include "qttdft/aqft_mpo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qttdft {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

cd qubit_phase(double units) { return std::polar(1.0, -kPi * units); }

/// Indicator bin index: chi^a(x) = 1 iff x in [a/2^b, (a+1)/2^b).
int chi_index(double x, int b) { return static_cast<int>(std::floor(x * std::ldexp(1.0, b))); }

} // namespace

AqftParams make_aqft_params(int n, int b) {
    if (n < 1)
        throw std::invalid_argument("make_aqft_params: n must be >= 1");
    if (b < 0 || b > n - 1)
        throw std::invalid_argument("make_aqft_params: b must be in {0,...,n-1}");
    AqftParams p;
    p.n = n;
    p.b = b;
    const i64 r = i64{1} << b;
    p.u_nodes.resize(static_cast<size_t>(r));
    for (i64 beta = 0; beta < r; ++beta)
        p.u_nodes[static_cast<size_t>(beta)] = static_cast<double>(beta) / static_cast<double>(r);
    return p;
}

cd aqft_entry(const AqftParams& p, std::span<const int> sigma, std::span<const int> tau) {
    if (static_cast<int>(sigma.size()) != p.n || static_cast<int>(tau.size()) != p.n)
        throw std::invalid_argument("aqft_entry: digit strings must have length n");
    validate_digits(sigma, 2, "aqft_entry sigma");
    validate_digits(tau, 2, "aqft_entry tau");

    // kept terms: max(1, k-b) <= l <= k, i.e. the windowed fraction
    // 0.tau_k tau_{k-1} ... tau_{k-b}; the l > k terms are full turns.
    double turns = 0.0;
    for (int k = 1; k <= p.n; ++k) {
        if (sigma[static_cast<size_t>(k - 1)] == 0)
            continue;
        double window = 0.0;
        const int l_min = std::max(1, k - p.b);
        for (int l = l_min; l <= k; ++l)
            window += std::ldexp(static_cast<double>(tau[static_cast<size_t>(l - 1)]), l - k - 1);
        turns += window;
    }
    return std::polar(1.0, -2.0 * kPi * turns);
}

ComplexTensor build_aqft_core(int b) {
    if (b < 0)
        throw std::invalid_argument("build_aqft_core: b must be >= 0");
    const i64 r = i64{1} << b;
    ComplexTensor core({r, 2, 2, r});
    for (i64 beta = 0; beta < r; ++beta) {
        const double u = static_cast<double>(beta) / static_cast<double>(r);
        for (int sigma = 0; sigma < 2; ++sigma) {
            const int alpha = chi_index((sigma + u) / 2.0, b);
            for (int tau = 0; tau < 2; ++tau)
                core.at({alpha, sigma, tau, beta}) = qubit_phase((sigma + u) * tau);
        }
    }
    return core;
}

Mpo assemble_aqft_mpo(int n, int b) {
    const AqftParams p = make_aqft_params(n, b);
    const i64 r = p.rank();

    Mpo m;
    m.n = n;
    m.d = 2;
    m.kind = MpoKind::Aqft;
    m.param = b;

    if (n == 1) {
        ComplexTensor core({1, 2, 2, 1});
        for (int sigma = 0; sigma < 2; ++sigma)
            for (int tau = 0; tau < 2; ++tau)
                core.at({0, sigma, tau, 0}) = qubit_phase(static_cast<double>(sigma) * tau);
        m.cores.push_back(std::move(core));
        return m;
    }

    ComplexTensor left({1, 2, 2, r});
    for (int sigma = 0; sigma < 2; ++sigma)
        for (int tau = 0; tau < 2; ++tau)
            for (i64 beta = 0; beta < r; ++beta)
                left.at({0, sigma, tau, beta}) =
                    qubit_phase((sigma + p.u_nodes[static_cast<size_t>(beta)]) * tau);
    m.cores.push_back(std::move(left));

    if (n > 2) {
        const ComplexTensor internal = build_aqft_core(b);
        for (int k = 0; k < n - 2; ++k)
            m.cores.push_back(internal);
    }

    ComplexTensor right({r, 2, 2, 1});
    for (int sigma = 0; sigma < 2; ++sigma) {
        const int alpha = chi_index(sigma / 2.0, b);
        for (int tau = 0; tau < 2; ++tau)
            right.at({alpha, sigma, tau, 0}) = qubit_phase(static_cast<double>(sigma) * tau);
    }
    m.cores.push_back(std::move(right));
    return m;
}

double aqft_error_bound(int n, int b) {
    if (n < 1)
        throw std::invalid_argument("aqft_error_bound: n must be >= 1");
    if (b < 0)
        throw std::invalid_argument("aqft_error_bound: b must be >= 0");
    return kPi * n * std::ldexp(1.0, -b);
}

} // namespace qttdft
