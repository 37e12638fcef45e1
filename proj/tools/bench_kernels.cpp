// Compares the serial reference kernels against the OpenMP-parallel ones:
// complex GEMM, max-abs reductions, and the exhaustive entrywise MPO sweep.
// Prints a CSV table with timings and the observed serial/parallel deviation.

#include "qttdft/kernels.hpp"
#include "qttdft/parallel.hpp"
#include "qttdft/qft_mpo.hpp"
#include "qttdft/verify.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <vector>

namespace {

using qttdft::cd;
using qttdft::i64;

double time_ms(const auto& fn, int reps) {
    // one warmup, then best of reps
    fn();
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        best = std::min(best, ms);
    }
    return best;
}

std::vector<cd> random_matrix(i64 rows, i64 cols, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cd> out(static_cast<size_t>(rows * cols));
    for (cd& z : out)
        z = cd{dist(rng), dist(rng)};
    return out;
}

} // namespace

int main() {
    std::mt19937_64 rng(7);
    std::cout << "kernel,size,serial_ms,parallel_ms,speedup,max_abs_dev\n";

    for (i64 n : {128, 256, 384, 512}) {
        const std::vector<cd> a = random_matrix(n, n, rng);
        const std::vector<cd> b = random_matrix(n, n, rng);
        std::vector<cd> c_serial(static_cast<size_t>(n * n));
        std::vector<cd> c_parallel(static_cast<size_t>(n * n));
        const double serial = time_ms(
            [&] { qttdft::kernels::matmul_serial(a.data(), b.data(), c_serial.data(), n, n, n); },
            3);
        const double parallel = time_ms(
            [&] { qttdft::kernels::matmul(a.data(), b.data(), c_parallel.data(), n, n, n); }, 3);
        const double dev = qttdft::kernels::max_abs_diff_serial(c_serial, c_parallel);
        std::cout << "matmul," << n << "x" << n << "," << serial << "," << parallel << ","
                  << serial / parallel << "," << dev << "\n";
    }

    {
        const std::vector<cd> v = random_matrix(1 << 22, 1, rng);
        const double serial = time_ms([&] { (void)qttdft::kernels::max_abs_serial(v); }, 5);
        const double parallel = time_ms([&] { (void)qttdft::kernels::max_abs(v); }, 5);
        const double dev =
            std::abs(qttdft::kernels::max_abs_serial(v) - qttdft::kernels::max_abs(v));
        std::cout << "max_abs," << v.size() << "," << serial << "," << parallel << ","
                  << serial / parallel << "," << dev << "\n";
    }

    {
        // exhaustive entrywise verification sweep, 1 thread vs the default
        const qttdft::Mpo m = qttdft::assemble_qft_mpo(10, 12);
        setenv("QTTDFT_THREADS", "1", 1);
        double serial_observed = 0.0;
        const double serial =
            time_ms([&] { serial_observed = qttdft::exhaustive_mpo_vs_dft_error(m); }, 3);
        unsetenv("QTTDFT_THREADS");
        double observed = 0.0;
        const double parallel =
            time_ms([&] { observed = qttdft::exhaustive_mpo_vs_dft_error(m); }, 3);
        std::cout << "entry_sweep_n10_K12,2^20," << serial << "," << parallel << ","
                  << serial / parallel << "," << std::abs(observed - serial_observed) << "\n";
    }

    std::cout << "threads," << qttdft::thread_count() << ",,,,\n";
    return 0;
}
