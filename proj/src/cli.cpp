#include "qttdft/cli.hpp"

#include "qttdft/aqft_mpo.hpp"
#include "qttdft/mps.hpp"
#include "qttdft/parallel.hpp"
#include "qttdft/qft_mpo.hpp"
#include "qttdft/serialize.hpp"
#include "qttdft/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace qttdft::cli {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

std::string shortest(double x) { return nlohmann::json(x).dump(); }

struct RankRange {
    int begin = 0;
    int end = 0;
    int step = 1;
};

RankRange parse_range(const std::string& text) {
    RankRange r;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> r.begin >> c1 >> r.end >> c2 >> r.step) || c1 != ':' || c2 != ':' || !is.eof())
        throw CLI::ValidationError("--ranks", "expected A:B:STEP");
    if (r.step < 1)
        throw CLI::ValidationError("--ranks", "STEP must be >= 1");
    if (r.begin > r.end)
        throw CLI::ValidationError("--ranks", "empty range (A > B)");
    return r;
}

int cmd_build(int n, std::optional<int> rank, std::optional<int> aqft_b, int d,
              const std::string& out_path) {
    Mpo m;
    if (rank) {
        m = assemble_qft_mpo(n, *rank, d);
    } else {
        if (d != 2)
            throw std::invalid_argument("the AQFT construction is qubit-only (--qudit 2)");
        m = assemble_aqft_mpo(n, *aqft_b);
    }
    save_mpo(m, out_path);
    std::cout << "wrote " << out_path << " (kind=" << to_string(m.kind) << ", n=" << m.n
              << ", d=" << m.d << ", " << (m.kind == MpoKind::Chebyshev ? "K=" : "b=") << m.param
              << ")\n";
    std::cout << "bond_dimension: " << m.bond_dimension() << "\n";
    if (m.kind == MpoKind::Aqft) {
        std::cout << "aqft_error_bound: " << shortest(aqft_error_bound(n, m.param)) << "\n";
    } else if (n == 1) {
        std::cout << "entrywise_error_bound: 0 (single site is exact)\n";
    } else if (m.param >= 2) {
        std::cout << "entrywise_error_bound: " << shortest(theorem_error_bound(n, m.param).value)
                  << "\n";
    } else {
        std::cout << "entrywise_error_bound: unavailable (K < 2)\n";
    }
    return kExitPass;
}

int cmd_apply(const std::string& mpo_path, const std::string& input_path,
              const std::string& out_path, double tol, bool normalize) {
    const Mpo op = load_mpo(mpo_path);
    const VectorFile input = load_vector(input_path);

    Mps state;
    if (const DenseVector* dense = std::get_if<DenseVector>(&input)) {
        if (dense->n != op.n)
            throw std::invalid_argument("apply: site-count mismatch (operator n=" +
                                        std::to_string(op.n) + ", input n=" +
                                        std::to_string(dense->n) + ")");
        if (dense->d != op.d)
            throw std::invalid_argument("apply: qudit dimension mismatch");
        if (dense->order != SignificanceOrder::LsbFirst)
            throw std::invalid_argument(
                "apply: dense input must be declared LSB_FIRST (tau convention)");
        state = dense_to_mps(dense->data, dense->d, SignificanceOrder::LsbFirst, tol);
    } else {
        state = std::get<Mps>(input);
        if (state.n != op.n)
            throw std::invalid_argument("apply: site-count mismatch");
    }

    Mps result = apply_mpo(op, state, tol);
    if (normalize) {
        const double scale = 1.0 / std::sqrt(std::pow(static_cast<double>(op.d), op.n));
        for (cd& z : result.cores.front().data)
            z *= scale;
    }

    i64 length = 1;
    bool fits = true;
    for (int k = 0; k < op.n; ++k) {
        length *= op.d;
        if (length > (i64{1} << 20)) {
            fits = false;
            break;
        }
    }
    if (fits) {
        DenseVector out;
        out.n = result.n;
        out.d = result.d;
        out.order = result.order;
        out.data = mps_to_dense(result);
        save_vector(out, out_path);
        std::cout << "wrote " << out_path << " (dense, n=" << out.n
                  << ", order=" << to_string(out.order) << ")\n";
    } else {
        save_vector(result, out_path);
        std::cout << "wrote " << out_path << " (mps, n=" << result.n
                  << ", order=" << to_string(result.order)
                  << ", max_bond=" << result.max_bond() << ")\n";
    }
    return kExitPass;
}

int cmd_verify(const std::string& mode, int n, int rank, int b, int d, std::int64_t samples,
               std::uint64_t seed, int probes, const std::string& echo) {
    RunReport report;
    if (mode == "entrywise") {
        report = verify_entrywise(n, rank, d, samples, seed);
    } else if (mode == "unfolding") {
        report = verify_unfolding(n, rank);
    } else if (mode == "aqft-exact") {
        report = verify_aqft_exact(n, b);
    } else if (mode == "aqft-error") {
        report = verify_aqft_error(n, b);
    } else if (mode == "blocks") {
        report = verify_blocks(n, rank);
    } else if (mode == "interp") {
        report = verify_interp(rank, probes);
    } else {
        throw std::invalid_argument("unknown verify mode: " + mode);
    }
    report.command = echo;
    std::cout << report_to_json(report) << "\n";
    return report.pass ? kExitPass : kExitVerifyFail;
}

int cmd_table(int n, const std::string& ranges, bool aqft, const std::string& out_path,
              std::int64_t samples, std::uint64_t seed) {
    const RankRange range = parse_range(ranges);

    std::ostringstream csv;
    csv << "k_or_b,observed_max_error,bound,ek_bound,lebesgue_bound,elapsed_ms\n";
    for (int p = range.begin; p <= range.end; p += range.step) {
        if (aqft && p > n - 1) {
            std::cerr << "table: skipping b=" << p << " (requires b <= n-1)\n";
            continue;
        }
        if (!aqft && p < 1) {
            std::cerr << "table: skipping K=" << p << " (requires K >= 1)\n";
            continue;
        }
        const TableRow row = compute_table_row(n, p, aqft, samples, seed);
        csv << row.param << "," << shortest(row.observed_max_error) << ",";
        if (row.bound > 0.0)
            csv << shortest(row.bound);
        csv << ",";
        if (row.ek > 0.0)
            csv << shortest(row.ek);
        csv << ",";
        if (row.lebesgue > 0.0)
            csv << shortest(row.lebesgue);
        csv << "," << shortest(row.elapsed_ms) << "\n";
    }

    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + out_path);
        out << csv.str();
        std::cout << "wrote " << out_path << "\n";
    }
    return kExitPass;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Closed-form DFT/QFT matrix product operators on quantized tensor trains",
                 "qttdft"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "construct an MPO and write it to a file");
    int build_n = 0, build_d = 2;
    std::optional<int> build_rank, build_b;
    std::string build_out;
    build->add_option("--n", build_n, "site count")->required();
    auto* rank_opt = build->add_option("--rank", build_rank, "Chebyshev grid parameter K");
    auto* aqft_opt = build->add_option("--aqft-b", build_b, "AQFT approximation level b");
    rank_opt->excludes(aqft_opt);
    build->add_option("--qudit", build_d, "qudit dimension (default 2)");
    build->add_option("--out", build_out, "output path")->required();

    // apply
    auto* apply = app.add_subcommand("apply", "apply a stored MPO to a vector file");
    std::string apply_mpo_path, apply_in, apply_out;
    double apply_tol = 1e-10;
    bool apply_normalize = false;
    apply->add_option("--mpo", apply_mpo_path)->required();
    apply->add_option("--input", apply_in)->required();
    apply->add_option("--out", apply_out)->required();
    apply->add_option("--tol", apply_tol, "quantization/rounding tolerance (default 1e-10)");
    apply->add_flag("--normalize", apply_normalize, "post-scale by 1/sqrt(N)");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite, print a JSON report");
    std::string verify_mode;
    int verify_n = 0, verify_rank = 8, verify_b = 0, verify_d = 2, verify_probes = 513;
    std::int64_t verify_samples = 0;
    std::uint64_t verify_seed = 0;
    verify->add_option("--mode", verify_mode,
                       "entrywise|unfolding|aqft-exact|aqft-error|blocks|interp")
        ->required();
    verify->add_option("--n", verify_n);
    verify->add_option("--rank", verify_rank, "Chebyshev grid parameter K");
    verify->add_option("--b", verify_b, "AQFT level");
    verify->add_option("--qudit", verify_d);
    verify->add_option("--samples", verify_samples, "sample count for large n (0 = exhaustive)");
    verify->add_option("--seed", verify_seed, "PRNG seed (default 0)");
    verify->add_option("--probes", verify_probes, "probe grid size for interp mode");

    // table
    auto* table = app.add_subcommand("table", "error/bound sweep as CSV");
    int table_n = 0;
    std::string table_ranks, table_format = "csv", table_out;
    bool table_aqft = false;
    std::int64_t table_samples = 0;
    std::uint64_t table_seed = 0;
    table->add_option("--n", table_n)->required();
    table->add_option("--ranks", table_ranks, "A:B:STEP inclusive sweep")->required();
    table->add_flag("--aqft", table_aqft, "sweep AQFT level b instead of K");
    table->add_option("--format", table_format)->check(CLI::IsMember({"csv"}));
    table->add_option("--out", table_out, "output file (default stdout)");
    table->add_option("--samples", table_samples);
    table->add_option("--seed", table_seed);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (build->parsed()) {
            if (build_rank.has_value() == build_b.has_value())
                throw std::invalid_argument("build: exactly one of --rank or --aqft-b is required");
            return cmd_build(build_n, build_rank, build_b, build_d, build_out);
        }
        if (apply->parsed())
            return cmd_apply(apply_mpo_path, apply_in, apply_out, apply_tol, apply_normalize);
        if (verify->parsed()) {
            std::string echo;
            for (const std::string& a : args)
                echo += (echo.empty() ? "" : " ") + a;
            return cmd_verify(verify_mode, verify_n, verify_rank, verify_b, verify_d,
                              verify_samples, verify_seed, verify_probes, echo);
        }
        if (table->parsed())
            return cmd_table(table_n, table_ranks, table_aqft, table_out, table_samples,
                             table_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args);
}

} // namespace qttdft::cli
