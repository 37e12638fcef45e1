#include "qttdft/qft_mpo.hpp"

#include "qttdft/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qttdft {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

cd dft_phase(double units, int d) {
    // e^{-(2/d) pi i units}
    return std::polar(1.0, -2.0 * kPi * units / d);
}

void check_site_args(int n, int d) {
    if (n < 1)
        throw std::invalid_argument("site count must be >= 1");
    if (d < 2)
        throw std::invalid_argument("qudit dimension must be >= 2");
}

} // namespace

const char* to_string(MpoKind kind) {
    return kind == MpoKind::Chebyshev ? "chebyshev" : "aqft";
}

i64 Mpo::bond_dimension() const {
    if (cores.size() <= 1)
        return 1;
    return cores.front().shape[3];
}

void validate_mpo(const Mpo& m) {
    if (static_cast<int>(m.cores.size()) != m.n)
        throw std::invalid_argument("Mpo: core count must equal n");
    i64 left = 1;
    for (int k = 0; k < m.n; ++k) {
        const ComplexTensor& c = m.cores[static_cast<size_t>(k)];
        if (c.rank() != 4)
            throw std::invalid_argument("Mpo: cores must have 4 indices");
        if (c.shape[1] != m.d || c.shape[2] != m.d)
            throw std::invalid_argument("Mpo: physical extents must equal d");
        if (c.shape[0] != left)
            throw std::invalid_argument("Mpo: adjacent bond extents must match");
        left = c.shape[3];
    }
    if (left != 1)
        throw std::invalid_argument("Mpo: boundary bonds must have extent 1");
}

cd dft_entry(int n, int d, std::span<const int> sigma, std::span<const int> tau) {
    check_site_args(n, d);
    if (static_cast<int>(sigma.size()) != n || static_cast<int>(tau.size()) != n)
        throw std::invalid_argument("dft_entry: digit strings must have length n");
    validate_digits(sigma, d, "dft_entry sigma");
    validate_digits(tau, d, "dft_entry tau");

    // Sum_{l <= k} d^{l-k-1} sigma_k tau_l; the l > k terms are full turns.
    // t_frac accumulates 0.tau_k ... tau_1 in base d.
    double turns = 0.0;
    double t_frac = 0.0;
    for (int k = 0; k < n; ++k) {
        t_frac = (t_frac + tau[static_cast<size_t>(k)]) / d;
        turns += sigma[static_cast<size_t>(k)] * t_frac;
    }
    return std::polar(1.0, -2.0 * kPi * turns);
}

double y_lower_fraction(std::span<const int> tau, int m, int d) {
    if (m < 1 || m > static_cast<int>(tau.size()))
        throw std::invalid_argument("y_lower_fraction: invalid m");
    double frac = 0.0;
    for (int l = 0; l < m; ++l)
        frac = (frac + tau[static_cast<size_t>(l)]) / d;
    return frac;
}

double x_upper_fraction(std::span<const int> sigma, int m, int d) {
    const int n = static_cast<int>(sigma.size());
    if (m < 0 || m >= n)
        throw std::invalid_argument("x_upper_fraction: invalid m");
    double frac = 0.0;
    for (int k = n - 1; k >= m; --k)
        frac = (frac + sigma[static_cast<size_t>(k)]) / d;
    return frac;
}

ComplexTensor build_internal_core(int K, int d) {
    if (K < 1)
        throw std::invalid_argument("build_internal_core: K must be >= 1");
    if (d < 2)
        throw std::invalid_argument("build_internal_core: d must be >= 2");
    const ChebGrid g = make_grid(K);
    const i64 r = K + 1;
    ComplexTensor core({r, d, d, r});
    std::vector<double> cardinals(static_cast<size_t>(r));
    for (int sigma = 0; sigma < d; ++sigma) {
        for (i64 beta = 0; beta < r; ++beta) {
            const double arg = (sigma + g.nodes[static_cast<size_t>(beta)]) / d;
            cardinal_all(g, arg, cardinals);
            for (int tau = 0; tau < d; ++tau) {
                const cd phase =
                    dft_phase((sigma + g.nodes[static_cast<size_t>(beta)]) * tau, d);
                for (i64 alpha = 0; alpha < r; ++alpha)
                    core.at({alpha, sigma, tau, beta}) =
                        cardinals[static_cast<size_t>(alpha)] * phase;
            }
        }
    }
    return core;
}

ComplexTensor build_left_core(int K, int d) {
    if (K < 1)
        throw std::invalid_argument("build_left_core: K must be >= 1");
    if (d < 2)
        throw std::invalid_argument("build_left_core: d must be >= 2");
    const ChebGrid g = make_grid(K);
    const i64 r = K + 1;
    ComplexTensor core({1, d, d, r});
    for (int sigma = 0; sigma < d; ++sigma)
        for (int tau = 0; tau < d; ++tau)
            for (i64 beta = 0; beta < r; ++beta)
                core.at({0, sigma, tau, beta}) =
                    dft_phase((sigma + g.nodes[static_cast<size_t>(beta)]) * tau, d);
    return core;
}

ComplexTensor build_right_core(int K, int d) {
    const ComplexTensor internal = build_internal_core(K, d);
    const i64 r = K + 1;
    ComplexTensor core({r, d, d, 1});
    for (i64 alpha = 0; alpha < r; ++alpha)
        for (int sigma = 0; sigma < d; ++sigma)
            for (int tau = 0; tau < d; ++tau)
                core.at({alpha, sigma, tau, 0}) = internal.at({alpha, sigma, tau, 0});
    return core;
}

Mpo assemble_qft_mpo(int n, int K, int d) {
    check_site_args(n, d);
    Mpo m;
    m.n = n;
    m.d = d;
    m.kind = MpoKind::Chebyshev;
    m.param = K;
    if (n == 1) {
        // single site: the d x d phase matrix, exact
        ComplexTensor core({1, d, d, 1});
        for (int sigma = 0; sigma < d; ++sigma)
            for (int tau = 0; tau < d; ++tau)
                core.at({0, sigma, tau, 0}) = dft_phase(static_cast<double>(sigma) * tau, d);
        m.cores.push_back(std::move(core));
        return m;
    }
    if (K < 1)
        throw std::invalid_argument("assemble_qft_mpo: K must be >= 1 for n >= 2");
    m.cores.push_back(build_left_core(K, d));
    if (n > 2) {
        const ComplexTensor internal = build_internal_core(K, d);
        for (int k = 0; k < n - 2; ++k)
            m.cores.push_back(internal);
    }
    m.cores.push_back(build_right_core(K, d));
    return m;
}

cd mpo_entry(const Mpo& m, std::span<const int> sigma, std::span<const int> tau) {
    if (static_cast<int>(sigma.size()) != m.n || static_cast<int>(tau.size()) != m.n)
        throw std::invalid_argument("mpo_entry: digit strings must have length n");
    validate_digits(sigma, m.d, "mpo_entry sigma");
    validate_digits(tau, m.d, "mpo_entry tau");

    std::vector<cd> vec{cd{1.0, 0.0}};
    std::vector<cd> next;
    for (int k = 0; k < m.n; ++k) {
        const ComplexTensor& core = m.cores[static_cast<size_t>(k)];
        const i64 rl = core.shape[0];
        const i64 rr = core.shape[3];
        const i64 base = (static_cast<i64>(sigma[static_cast<size_t>(k)]) * m.d +
                          tau[static_cast<size_t>(k)]) *
                         rr;
        next.assign(static_cast<size_t>(rr), cd{0.0, 0.0});
        for (i64 a = 0; a < rl; ++a) {
            const cd va = vec[static_cast<size_t>(a)];
            if (va == cd{0.0, 0.0})
                continue;
            const cd* slice = core.data.data() + (a * m.d * m.d) * rr + base;
            for (i64 b = 0; b < rr; ++b)
                next[static_cast<size_t>(b)] += kernels::cmul(va, slice[b]);
        }
        vec.swap(next);
    }
    return vec[0];
}

ComplexTensor mpo_to_dense(const Mpo& m) {
    validate_mpo(m);
    i64 entries = 1;
    for (int k = 0; k < 2 * m.n; ++k) {
        entries *= m.d;
        if (entries > (i64{1} << 24))
            throw std::invalid_argument("mpo_to_dense: d^{2n} exceeds the 2^24 entry guard");
    }

    // grow left to right over interleaved indices (sigma_1, tau_1, ..., sigma_k, tau_k)
    ComplexTensor acc({1, 1});
    acc.data[0] = cd{1.0, 0.0};
    for (int k = 0; k < m.n; ++k) {
        const ComplexTensor& core = m.cores[static_cast<size_t>(k)];
        const i64 rows = acc.shape[0];
        const i64 rl = core.shape[0];
        const i64 cols = m.d * static_cast<i64>(m.d) * core.shape[3];
        ComplexTensor next({rows, cols});
        kernels::matmul(acc.data.data(), core.data.data(), next.data.data(), rows, rl, cols);
        acc = reshape(next, {rows * m.d * m.d, core.shape[3]});
    }

    // remap interleaved digits to (s, t)
    i64 dim = 1;
    for (int k = 0; k < m.n; ++k)
        dim *= m.d;
    ComplexTensor out({dim, dim});
    std::vector<int> sigma(static_cast<size_t>(m.n)), tau(static_cast<size_t>(m.n));
    for (i64 flat = 0; flat < entries; ++flat) {
        i64 rem = flat;
        for (int k = m.n - 1; k >= 0; --k) {
            tau[static_cast<size_t>(k)] = static_cast<int>(rem % m.d);
            rem /= m.d;
            sigma[static_cast<size_t>(k)] = static_cast<int>(rem % m.d);
            rem /= m.d;
        }
        i64 s = 0, t = 0;
        for (int k = 0; k < m.n; ++k)
            s = s * m.d + sigma[static_cast<size_t>(k)];
        for (int k = m.n - 1; k >= 0; --k)
            t = t * m.d + tau[static_cast<size_t>(k)];
        out.at({s, t}) = acc.data[static_cast<size_t>(flat)];
    }
    return out;
}

ErrorBound theorem_error_bound(int n, int K) {
    if (n < 1)
        throw std::invalid_argument("theorem_error_bound: n must be >= 1");
    if (n == 1)
        return {0.0, 0.0};
    const double lambda = lebesgue_bound(K);
    const double ek = ek_bound(K);
    ErrorBound out;
    out.value = (std::pow(lambda, n - 1) - 1.0) / (lambda - 1.0) * ek;
    out.crude = (n - 1) * std::pow(lambda, n - 2) * ek;
    return out;
}

ErrorBound theorem_error_bound_empirical(int n, int K, int probes, int lebesgue_probes) {
    if (n < 1)
        throw std::invalid_argument("theorem_error_bound: n must be >= 1");
    if (n == 1)
        return {0.0, 0.0};
    const ChebGrid g = make_grid(K);
    const double lambda = lebesgue_constant(g, lebesgue_probes);
    const double ek = empirical_ek(g, probes, probes);
    ErrorBound out;
    if (lambda == 1.0) {
        out.value = (n - 1) * ek;
        out.crude = out.value;
        return out;
    }
    out.value = (std::pow(lambda, n - 1) - 1.0) / (lambda - 1.0) * ek;
    out.crude = (n - 1) * std::pow(lambda, n - 2) * ek;
    return out;
}

UnfoldingFactors build_unfolding_factors(int n, int m, int K) {
    if (n < 2)
        throw std::invalid_argument("build_unfolding_factors: n must be >= 2");
    if (m < 1 || m >= n)
        throw std::invalid_argument("build_unfolding_factors: m must satisfy 1 <= m < n");
    if (K < 2)
        throw std::invalid_argument("build_unfolding_factors: K must be >= 2");

    const ChebGrid g = make_grid(K);
    const i64 r = K + 1;
    const int d = 2;
    const i64 rows = i64{1} << m;
    const i64 cols = i64{1} << (n - m);

    UnfoldingFactors out;
    out.m = m;
    out.R = ComplexTensor({rows, rows, r});
    out.L = ComplexTensor({r, cols, cols});

    std::vector<int> sig(static_cast<size_t>(m)), tav(static_cast<size_t>(m));
    for (i64 si = 0; si < rows; ++si) {
        for (int k = 0; k < m; ++k)
            sig[static_cast<size_t>(k)] = static_cast<int>((si >> (m - 1 - k)) & 1);
        for (i64 ti = 0; ti < rows; ++ti) {
            for (int k = 0; k < m; ++k)
                tav[static_cast<size_t>(k)] = static_cast<int>((ti >> (m - 1 - k)) & 1);
            const cd head = dft_entry(m, d, sig, tav);
            const double y = y_lower_fraction(tav, m, d);
            for (i64 a = 0; a < r; ++a)
                out.R.at({si, ti, a}) =
                    head * std::polar(1.0, -2.0 * kPi * y * g.nodes[static_cast<size_t>(a)]);
        }
    }

    std::vector<int> sig2(static_cast<size_t>(n - m)), tav2(static_cast<size_t>(n - m));
    std::vector<double> cardinals(static_cast<size_t>(r));
    for (i64 si = 0; si < cols; ++si) {
        for (int k = 0; k < n - m; ++k)
            sig2[static_cast<size_t>(k)] = static_cast<int>((si >> (n - m - 1 - k)) & 1);
        const double x = x_upper_fraction(sig2, 0, d); // 0.sigma_{m+1}sigma_{m+2}...
        cardinal_all(g, x, cardinals);
        for (i64 ti = 0; ti < cols; ++ti) {
            for (int k = 0; k < n - m; ++k)
                tav2[static_cast<size_t>(k)] = static_cast<int>((ti >> (n - m - 1 - k)) & 1);
            const cd tail = dft_entry(n - m, d, sig2, tav2);
            for (i64 a = 0; a < r; ++a)
                out.L.at({a, si, ti}) = cardinals[static_cast<size_t>(a)] * tail;
        }
    }
    return out;
}

} // namespace qttdft
