#include "qttdft/verify.hpp"

#include "qttdft/dft_oracle.hpp"
#include "qttdft/kernels.hpp"
#include "qttdft/parallel.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qttdft {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;
constexpr i64 kExhaustiveGuard = i64{1} << 24;

double elapsed_ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

i64 int_pow(i64 base, int exp) {
    i64 out = 1;
    for (int i = 0; i < exp; ++i)
        out *= base;
    return out;
}

// Splits the MPO at h = n/2 into dense half environments:
//   left  (d^{2h} x r)       rows over interleaved (sigma_1, tau_1, ..., sigma_h, tau_h)
//   right (r x d^{2(n-h)})   columns over the remaining interleaved digits
struct MpoEnvironments {
    int h = 0;
    i64 rank = 1;
    i64 left_rows = 1;
    i64 right_cols = 1;
    std::vector<cd> left;
    std::vector<cd> right;
};

MpoEnvironments build_environments(const Mpo& m) {
    validate_mpo(m);
    MpoEnvironments env;
    env.h = m.n / 2;
    if (env.h == 0)
        env.h = m.n > 1 ? 1 : 0;

    ComplexTensor acc({1, 1});
    acc.data[0] = cd{1.0, 0.0};
    for (int k = 0; k < env.h; ++k) {
        const ComplexTensor& core = m.cores[static_cast<size_t>(k)];
        const i64 rows = acc.shape[0];
        const i64 cols = m.d * static_cast<i64>(m.d) * core.shape[3];
        ComplexTensor next({rows, cols});
        kernels::matmul(acc.data.data(), core.data.data(), next.data.data(), rows, core.shape[0],
                        cols);
        acc = reshape(next, {rows * m.d * m.d, core.shape[3]});
    }
    env.left_rows = acc.shape[0];
    env.rank = acc.shape[1];
    env.left = std::move(acc.data);

    ComplexTensor racc({1, 1});
    racc.data[0] = cd{1.0, 0.0};
    for (int k = m.n - 1; k >= env.h; --k) {
        const ComplexTensor& core = m.cores[static_cast<size_t>(k)];
        const i64 cols = racc.shape[1];
        const i64 rows = core.shape[0] * m.d * m.d;
        ComplexTensor next({rows, cols});
        kernels::matmul(core.data.data(), racc.data.data(), next.data.data(), rows, core.shape[3],
                        cols);
        // (rl, sigma, tau, oldcols) read as (rl, d^2 * oldcols)
        racc = reshape(next, {core.shape[0], m.d * static_cast<i64>(m.d) * cols});
    }
    env.right_cols = racc.shape[1];
    env.right = std::move(racc.data);
    return env;
}

void decode_interleaved(i64 index, int sites, int d, int* sigma, int* tau) {
    for (int k = sites - 1; k >= 0; --k) {
        tau[k] = static_cast<int>(index % d);
        index /= d;
        sigma[k] = static_cast<int>(index % d);
        index /= d;
    }
}

cd dft_product_phase(i64 s, i64 t, i64 dim) {
    return std::polar(1.0, -2.0 * kPi * static_cast<double>((s * t) % dim) / dim);
}

// Max entrywise |mpo - reference| streamed over all entries; reference is
// called with the full digit strings and the (s, t) integer pair.
template <typename Ref>
double exhaustive_max_error(const Mpo& m, Ref&& reference) {
    const i64 entries = int_pow(m.d, 2 * m.n);
    if (entries > kExhaustiveGuard)
        throw std::invalid_argument(
            "exhaustive verification needs d^{2n} <= 2^24 entries; use sampling instead");

    if (m.n == 1) {
        double best = 0.0;
        int sigma = 0, tau = 0;
        for (sigma = 0; sigma < m.d; ++sigma)
            for (tau = 0; tau < m.d; ++tau) {
                const std::span<const int> sg(&sigma, 1), tv(&tau, 1);
                best = std::max(best, std::abs(mpo_entry(m, sg, tv) - reference(sg, tv, sigma, tau)));
            }
        return best;
    }

    const MpoEnvironments env = build_environments(m);
    const int tail_sites = m.n - env.h;
    double best = 0.0;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : best) num_threads(thread_count())
#endif
    for (i64 i = 0; i < env.left_rows; ++i) {
        std::vector<int> sigma(static_cast<size_t>(m.n)), tau(static_cast<size_t>(m.n));
        decode_interleaved(i, env.h, m.d, sigma.data(), tau.data());
        std::vector<cd> row(static_cast<size_t>(env.right_cols), cd{0.0, 0.0});
        const cd* lrow = env.left.data() + i * env.rank;
        for (i64 a = 0; a < env.rank; ++a) {
            const cd la = lrow[a];
            if (la == cd{0.0, 0.0})
                continue;
            const cd* rrow = env.right.data() + a * env.right_cols;
            for (i64 j = 0; j < env.right_cols; ++j)
                row[static_cast<size_t>(j)] += kernels::cmul(la, rrow[j]);
        }
        for (i64 j = 0; j < env.right_cols; ++j) {
            decode_interleaved(j, tail_sites, m.d, sigma.data() + env.h, tau.data() + env.h);
            i64 s = 0, t = 0;
            for (int k = 0; k < m.n; ++k)
                s = s * m.d + sigma[static_cast<size_t>(k)];
            for (int k = m.n - 1; k >= 0; --k)
                t = t * m.d + tau[static_cast<size_t>(k)];
            const cd ref = reference(std::span<const int>(sigma), std::span<const int>(tau), s, t);
            best = std::max(best, std::abs(row[static_cast<size_t>(j)] - ref));
        }
    }
    return best;
}

} // namespace

double exhaustive_mpo_vs_dft_error(const Mpo& m) {
    const i64 dim = int_pow(m.d, m.n);
    return exhaustive_max_error(
        m, [dim](std::span<const int>, std::span<const int>, i64 s, i64 t) {
            return dft_product_phase(s, t, dim);
        });
}

double sampled_mpo_vs_dft_error(const Mpo& m, std::int64_t samples, std::uint64_t seed) {
    validate_mpo(m);
    if (samples < 1)
        throw std::invalid_argument("sampled_mpo_vs_dft_error: need at least one sample");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> digit(0, m.d - 1);

    // below 2^26 the integer product phase is exact in double precision
    const bool small = 2 * m.n * std::log2(static_cast<double>(m.d)) <= 26.0;
    const i64 dim = small ? int_pow(m.d, m.n) : 0;

    std::vector<int> sigma(static_cast<size_t>(m.n)), tau(static_cast<size_t>(m.n));
    double best = 0.0;
    for (i64 it = 0; it < samples; ++it) {
        for (int k = 0; k < m.n; ++k) {
            sigma[static_cast<size_t>(k)] = digit(rng);
            tau[static_cast<size_t>(k)] = digit(rng);
        }
        cd ref;
        if (small) {
            i64 s = 0, t = 0;
            for (int k = 0; k < m.n; ++k)
                s = s * m.d + sigma[static_cast<size_t>(k)];
            for (int k = m.n - 1; k >= 0; --k)
                t = t * m.d + tau[static_cast<size_t>(k)];
            ref = dft_product_phase(s, t, dim);
        } else {
            ref = dft_entry(m.n, m.d, sigma, tau);
        }
        best = std::max(best, std::abs(mpo_entry(m, sigma, tau) - ref));
    }
    return best;
}

double exhaustive_aqft_exactness_error(const Mpo& m) {
    if (m.kind != MpoKind::Aqft)
        throw std::invalid_argument("exhaustive_aqft_exactness_error: expected an AQFT MPO");
    const AqftParams p = make_aqft_params(m.n, m.param);
    return exhaustive_max_error(
        m, [&p](std::span<const int> sigma, std::span<const int> tau, i64, i64) {
            return aqft_entry(p, sigma, tau);
        });
}

double exhaustive_aqft_vs_dft_error(int n, int b) {
    const AqftParams p = make_aqft_params(n, b);
    const i64 entries = int_pow(2, 2 * n);
    if (entries > kExhaustiveGuard)
        throw std::invalid_argument("exhaustive_aqft_vs_dft_error: 2^{2n} exceeds 2^24");
    const i64 dim = int_pow(2, n);
    double best = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : best) num_threads(thread_count())
#endif
    for (i64 s = 0; s < dim; ++s) {
        std::vector<int> sigma(static_cast<size_t>(n)), tau(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k)
            sigma[static_cast<size_t>(k)] = static_cast<int>((s >> (n - 1 - k)) & 1);
        for (i64 t = 0; t < dim; ++t) {
            for (int k = 0; k < n; ++k)
                tau[static_cast<size_t>(k)] = static_cast<int>((t >> k) & 1);
            best = std::max(best,
                            std::abs(aqft_entry(p, sigma, tau) - dft_product_phase(s, t, dim)));
        }
    }
    return best;
}

std::string report_to_json(const RunReport& r) {
    nlohmann::json j;
    j["command"] = r.command;
    j["n"] = r.n;
    j["d"] = r.d;
    j[r.param_name] = r.param;
    j["observed_max_error"] = r.observed_max_error;
    if (r.bound_applies)
        j["bound"] = r.bound;
    else
        j["bound"] = nullptr;
    j["elapsed_ms"] = r.elapsed_ms;
    j["oracle"] = r.oracle;
    j["pass"] = r.pass;
    if (!r.details.empty())
        j["details"] = r.details;
    return j.dump();
}

RunReport verify_entrywise(int n, int K, int d, std::int64_t samples, std::uint64_t seed) {
    if (n < 2 || K < 2)
        throw std::invalid_argument("verify entrywise: need n >= 2 and K >= 2");
    const auto start = std::chrono::steady_clock::now();
    const Mpo m = assemble_qft_mpo(n, K, d);
    RunReport r;
    r.command = "verify --mode entrywise";
    r.n = n;
    r.d = d;
    r.param_name = "K";
    r.param = K;
    if (samples > 0) {
        r.observed_max_error = sampled_mpo_vs_dft_error(m, samples, seed);
        r.oracle = "dft product phase (sampled)";
        r.details["samples"] = static_cast<double>(samples);
    } else {
        r.observed_max_error = exhaustive_mpo_vs_dft_error(m);
        r.oracle = "dft product phase (exhaustive)";
    }
    r.bound = theorem_error_bound(n, K).value;
    r.pass = r.observed_max_error <= r.bound;
    r.elapsed_ms = elapsed_ms_since(start);
    return r;
}

RunReport verify_unfolding(int n, int K) {
    if (n < 2 || n > 12 || K < 2)
        throw std::invalid_argument("verify unfolding: need 2 <= n <= 12 and K >= 2");
    const auto start = std::chrono::steady_clock::now();
    RunReport r;
    r.command = "verify --mode unfolding";
    r.n = n;
    r.d = 2;
    r.param_name = "K";
    r.param = K;
    r.bound = ek_bound(K);
    r.oracle = "full enumeration of T_m";

    const i64 dim = int_pow(2, n);
    for (int m = 1; m < n; ++m) {
        const UnfoldingFactors f = build_unfolding_factors(n, m, K);
        const i64 rows = f.R.shape[0];
        const i64 cols = f.L.shape[1];
        const i64 rank = f.R.shape[2];
        double worst = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : worst) num_threads(thread_count())
#endif
        for (i64 sh = 0; sh < rows; ++sh) {
            for (i64 th = 0; th < rows; ++th) {
                for (i64 st = 0; st < cols; ++st) {
                    for (i64 tt = 0; tt < cols; ++tt) {
                        cd approx{0.0, 0.0};
                        for (i64 a = 0; a < rank; ++a)
                            approx += f.R.at({sh, th, a}) * f.L.at({a, st, tt});
                        // reassemble (s, t): sigma blocks are MSB first,
                        // tau blocks LSB first within the full strings
                        const i64 s = sh * cols + st;
                        i64 t = 0;
                        for (int k = n - m - 1; k >= 0; --k)
                            t = t * 2 + ((tt >> (n - m - 1 - k)) & 1);
                        for (int k = m - 1; k >= 0; --k)
                            t = t * 2 + ((th >> (m - 1 - k)) & 1);
                        worst = std::max(worst,
                                         std::abs(approx - dft_product_phase(s, t, dim)));
                    }
                }
            }
        }
        r.details["m=" + std::to_string(m)] = worst;
        r.observed_max_error = std::max(r.observed_max_error, worst);
    }
    r.pass = r.observed_max_error <= r.bound;
    r.elapsed_ms = elapsed_ms_since(start);
    return r;
}

RunReport verify_aqft_exact(int n, int b) {
    const auto start = std::chrono::steady_clock::now();
    const Mpo m = assemble_aqft_mpo(n, b);
    RunReport r;
    r.command = "verify --mode aqft-exact";
    r.n = n;
    r.d = 2;
    r.param_name = "b";
    r.param = b;
    r.observed_max_error = exhaustive_aqft_exactness_error(m);
    r.bound = 1e-13;
    r.oracle = "aqft entry formula (exhaustive)";
    r.pass = r.observed_max_error <= r.bound;
    r.elapsed_ms = elapsed_ms_since(start);
    return r;
}

RunReport verify_aqft_error(int n, int b) {
    const auto start = std::chrono::steady_clock::now();
    RunReport r;
    r.command = "verify --mode aqft-error";
    r.n = n;
    r.d = 2;
    r.param_name = "b";
    r.param = b;
    r.observed_max_error = exhaustive_aqft_vs_dft_error(n, b);
    r.bound = aqft_error_bound(n, b);
    r.oracle = "dft product phase (exhaustive)";
    r.pass = r.observed_max_error <= r.bound;
    r.elapsed_ms = elapsed_ms_since(start);
    return r;
}

RunReport verify_blocks(int n, int K) {
    const auto start = std::chrono::steady_clock::now();
    RunReport r;
    r.command = "verify --mode blocks";
    r.n = n;
    r.d = 2;
    r.param_name = "K";
    r.param = K;
    r.bound = 1e-11;
    r.oracle = "dense block construction";
    for (int l = 0; l <= n; ++l) {
        const BlockReport block = block_identity_check(n, l, K);
        r.details["l=" + std::to_string(l)] = block.max_identity_residual;
        r.details["max_rank_l=" + std::to_string(l)] = block.max_rank;
        r.observed_max_error = std::max(r.observed_max_error, block.max_identity_residual);
    }
    r.pass = r.observed_max_error <= r.bound;
    r.elapsed_ms = elapsed_ms_since(start);
    return r;
}

RunReport verify_interp(int K, int probes) {
    const auto start = std::chrono::steady_clock::now();
    RunReport r;
    r.command = "verify --mode interp";
    r.n = 0;
    r.d = 2;
    r.param_name = "K";
    r.param = K;
    const ChebGrid g = make_grid(K);
    r.observed_max_error = empirical_ek(g, probes, probes);
    r.bound = ek_bound(K);
    r.oracle = "direct evaluation of f_y";
    r.details["probes"] = probes;
    r.pass = r.observed_max_error <= r.bound;
    r.elapsed_ms = elapsed_ms_since(start);
    return r;
}

TableRow compute_table_row(int n, int param, bool aqft, std::int64_t samples,
                           std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    TableRow row;
    row.param = param;
    const Mpo m = aqft ? assemble_aqft_mpo(n, param) : assemble_qft_mpo(n, param, 2);
    const i64 entries = int_pow(2, 2 * n);
    if (samples > 0 || entries > kExhaustiveGuard)
        row.observed_max_error =
            sampled_mpo_vs_dft_error(m, samples > 0 ? samples : 100000, seed);
    else
        row.observed_max_error = exhaustive_mpo_vs_dft_error(m);
    if (aqft) {
        row.bound = aqft_error_bound(n, param);
    } else {
        if (param >= 2) {
            row.bound = theorem_error_bound(n, param).value;
            row.ek = ek_bound(param);
        }
        row.lebesgue = lebesgue_bound(param);
    }
    row.elapsed_ms = elapsed_ms_since(start);
    return row;
}

} // namespace qttdft
