#include "qttdft/cheb.hpp"

#include "qttdft/parallel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qttdft {

namespace {
constexpr double kPi = std::numbers::pi_v<double>;
}

cd TargetFunction::operator()(double x) const { return std::polar(1.0, -2.0 * kPi * x * y); }

ChebGrid make_grid(int K) {
    if (K < 1)
        throw std::invalid_argument("make_grid: K must be >= 1");
    ChebGrid g;
    g.K = K;
    g.nodes.resize(static_cast<size_t>(K) + 1);
    // (1 - cos(pi a / K)) / 2 == sin^2(pi a / (2K)); fill the lower half and
    // mirror so that c^a + c^{K-a} == 1 holds exactly.
    for (int a = 0; 2 * a <= K; ++a) {
        const double s = std::sin(kPi * a / (2.0 * K));
        g.nodes[static_cast<size_t>(a)] = s * s;
    }
    if (K % 2 == 0)
        g.nodes[static_cast<size_t>(K / 2)] = 0.5;
    for (int a = K / 2 + 1; a <= K; ++a)
        g.nodes[static_cast<size_t>(a)] = 1.0 - g.nodes[static_cast<size_t>(K - a)];

    g.weights.resize(static_cast<size_t>(K) + 1);
    for (int a = 0; a <= K; ++a) {
        double w = (a % 2 == 0) ? 1.0 : -1.0;
        if (a == 0 || a == K)
            w *= 0.5;
        g.weights[static_cast<size_t>(a)] = w;
    }
    return g;
}

double cardinal_eval(const ChebGrid& g, int alpha, double x) {
    if (alpha < 0 || alpha > g.K)
        throw std::out_of_range("cardinal_eval: alpha out of range");
    for (int b = 0; b <= g.K; ++b)
        if (x == g.nodes[static_cast<size_t>(b)])
            return b == alpha ? 1.0 : 0.0;
    double num = 0.0, den = 0.0;
    for (int b = 0; b <= g.K; ++b) {
        const double q = g.weights[static_cast<size_t>(b)] / (x - g.nodes[static_cast<size_t>(b)]);
        den += q;
        if (b == alpha)
            num = q;
    }
    return num / den;
}

void cardinal_all(const ChebGrid& g, double x, std::span<double> out) {
    if (static_cast<int>(out.size()) != g.K + 1)
        throw std::invalid_argument("cardinal_all: output span must have K+1 entries");
    for (int b = 0; b <= g.K; ++b) {
        if (x == g.nodes[static_cast<size_t>(b)]) {
            for (int a = 0; a <= g.K; ++a)
                out[static_cast<size_t>(a)] = (a == b) ? 1.0 : 0.0;
            return;
        }
    }
    double den = 0.0;
    for (int b = 0; b <= g.K; ++b) {
        const double q = g.weights[static_cast<size_t>(b)] / (x - g.nodes[static_cast<size_t>(b)]);
        out[static_cast<size_t>(b)] = q;
        den += q;
    }
    for (int b = 0; b <= g.K; ++b)
        out[static_cast<size_t>(b)] /= den;
}

cd interpolate(const ChebGrid& g, std::span<const cd> samples, double x) {
    if (static_cast<int>(samples.size()) != g.K + 1)
        throw std::invalid_argument("interpolate: expected K+1 samples");
    for (int b = 0; b <= g.K; ++b)
        if (x == g.nodes[static_cast<size_t>(b)])
            return samples[static_cast<size_t>(b)];
    cd num{0.0, 0.0};
    double den = 0.0;
    for (int b = 0; b <= g.K; ++b) {
        const double q = g.weights[static_cast<size_t>(b)] / (x - g.nodes[static_cast<size_t>(b)]);
        num += q * samples[static_cast<size_t>(b)];
        den += q;
    }
    return num / den;
}

double lebesgue_constant(const ChebGrid& g, int probe_points) {
    if (probe_points < 2)
        throw std::invalid_argument("lebesgue_constant: need at least 2 probe points");
    double best = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : best) num_threads(thread_count())
#endif
    for (int i = 0; i < probe_points; ++i) {
        const double x = static_cast<double>(i) / (probe_points - 1);
        bool at_node = false;
        for (int b = 0; b <= g.K; ++b)
            if (x == g.nodes[static_cast<size_t>(b)])
                at_node = true;
        if (at_node) {
            best = std::max(best, 1.0);
            continue;
        }
        double num = 0.0, den = 0.0;
        for (int b = 0; b <= g.K; ++b) {
            const double q =
                g.weights[static_cast<size_t>(b)] / (x - g.nodes[static_cast<size_t>(b)]);
            num += std::abs(q);
            den += q;
        }
        best = std::max(best, num / std::abs(den));
    }
    return best;
}

double lebesgue_bound(int K) {
    if (K < 1)
        throw std::invalid_argument("lebesgue_bound: K must be >= 1");
    return 1.0 + (2.0 / kPi) * std::log(static_cast<double>(K) + 1.0);
}

double ek_bound(int K) {
    if (K < 2)
        throw std::domain_error("ek_bound: formula requires K >= 2 (pole at K = pi/2)");
    const double k = static_cast<double>(K);
    const double log_num =
        std::log(4.0) + (k + 1.0) * std::log(kPi / 2.0) + k - k * std::log(k);
    return std::exp(log_num) / (k - kPi / 2.0);
}

double empirical_ek(const ChebGrid& g, int x_probes, int y_probes) {
    if (x_probes < 2 || y_probes < 2)
        throw std::invalid_argument("empirical_ek: need at least 2 probes per axis");
    double best = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : best) num_threads(thread_count())
#endif
    for (int yi = 0; yi < y_probes; ++yi) {
        const double y = static_cast<double>(yi) / (y_probes - 1);
        const TargetFunction f{y};
        std::vector<cd> samples(static_cast<size_t>(g.K) + 1);
        for (int a = 0; a <= g.K; ++a)
            samples[static_cast<size_t>(a)] = f(g.nodes[static_cast<size_t>(a)]);
        for (int xi = 0; xi < x_probes; ++xi) {
            const double x = static_cast<double>(xi) / (x_probes - 1);
            best = std::max(best, std::abs(f(x) - interpolate(g, samples, x)));
        }
    }
    return best;
}

} // namespace qttdft
