#pragma once

#include "qttdft/aqft_mpo.hpp"
#include "qttdft/qft_mpo.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace qttdft {

/// Outcome of one verification run; pass == (observed <= bound) whenever a
/// bound applies.
struct RunReport {
    std::string command;
    int n = 0;
    int d = 2;
    std::string param_name = "K"; // "K" or "b"
    int param = 0;
    double observed_max_error = 0.0;
    double bound = 0.0;
    bool bound_applies = true;
    double elapsed_ms = 0.0;
    std::string oracle;
    bool pass = false;
    std::map<std::string, double> details;
};

std::string report_to_json(const RunReport& r);

/// Max entrywise |mpo - reference DFT| over all d^{2n} entries (streamed,
/// never materialized; guard d^{2n} <= 2^24). The reference phase comes from
/// the integer product s*t mod d^n.
double exhaustive_mpo_vs_dft_error(const Mpo& m);

/// Same comparison on `samples` seeded random (sigma, tau) pairs.
double sampled_mpo_vs_dft_error(const Mpo& m, std::int64_t samples, std::uint64_t seed);

/// Max entrywise |dense(mpo) - aqft_entry| (exactness of the AQFT MPO).
double exhaustive_aqft_exactness_error(const Mpo& m);

/// Max entrywise |aqft_entry - dft_entry| over all entries.
double exhaustive_aqft_vs_dft_error(int n, int b);

// verify subcommand drivers
RunReport verify_entrywise(int n, int K, int d, std::int64_t samples, std::uint64_t seed);
RunReport verify_unfolding(int n, int K);
RunReport verify_aqft_exact(int n, int b);
RunReport verify_aqft_error(int n, int b);
RunReport verify_blocks(int n, int K);      // all levels 0..n
RunReport verify_interp(int K, int probes); // empirical_ek vs ek_bound

struct TableRow {
    int param = 0; // K or b
    double observed_max_error = 0.0;
    double bound = 0.0;            // theorem bound or pi n 2^{-b}
    double ek = 0.0;               // 0 when unavailable (K < 2) or AQFT
    double lebesgue = 0.0;         // 0 for AQFT rows
    double elapsed_ms = 0.0;
};

TableRow compute_table_row(int n, int param, bool aqft, std::int64_t samples,
                           std::uint64_t seed);

} // namespace qttdft
