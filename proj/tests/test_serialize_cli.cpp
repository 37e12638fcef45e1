#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qttdft/aqft_mpo.hpp"
#include "qttdft/cli.hpp"
#include "qttdft/dft_oracle.hpp"
#include "qttdft/mps.hpp"
#include "qttdft/serialize.hpp"

#include <json.hpp>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

using namespace qttdft;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qttdft-tests";
    fs::create_directories(dir);
    return dir / name;
}

bool bit_identical(std::span<const cd> a, std::span<const cd> b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(cd)) == 0;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// captures stdout of a CLI invocation
struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    CliResult r;
    r.code = cli::run(args);
    std::cout.rdbuf(old);
    r.out = captured.str();
    return r;
}

} // namespace

TEST_CASE("MPO files round-trip bit-exactly") {
    for (const Mpo& m : {assemble_qft_mpo(5, 6), assemble_aqft_mpo(4, 2)}) {
        const std::string text = mpo_to_json(m);
        const Mpo back = mpo_from_json(text);
        REQUIRE(back.n == m.n);
        REQUIRE(back.d == m.d);
        CHECK(back.kind == m.kind);
        CHECK(back.param == m.param);
        for (int k = 0; k < m.n; ++k) {
            REQUIRE(back.cores[static_cast<size_t>(k)].shape ==
                    m.cores[static_cast<size_t>(k)].shape);
            CHECK(bit_identical(back.cores[static_cast<size_t>(k)].data,
                                m.cores[static_cast<size_t>(k)].data));
        }
        // and the serialized text itself is reproducible
        CHECK(mpo_to_json(back) == text);
    }
}

TEST_CASE("vector and MPS files round-trip bit-exactly") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseVector dense;
    dense.n = 4;
    dense.d = 2;
    dense.order = SignificanceOrder::LsbFirst;
    dense.data.resize(16);
    for (cd& z : dense.data)
        z = cd{dist(rng), dist(rng)};

    const VectorFile round = vector_from_json(vector_to_json(dense));
    const DenseVector& back = std::get<DenseVector>(round);
    CHECK(back.order == dense.order);
    CHECK(bit_identical(back.data, dense.data));

    const Mps mps = dense_to_mps(dense.data, 2, SignificanceOrder::LsbFirst, 1e-10);
    const VectorFile round2 = vector_from_json(vector_to_json(mps));
    const Mps& back2 = std::get<Mps>(round2);
    REQUIRE(back2.n == mps.n);
    CHECK(back2.order == mps.order);
    for (int k = 0; k < mps.n; ++k)
        CHECK(bit_identical(back2.cores[static_cast<size_t>(k)].data,
                            mps.cores[static_cast<size_t>(k)].data));
}

TEST_CASE("malformed files are rejected") {
    CHECK_THROWS(mpo_from_json("{\"format\":\"something-else\"}"));
    CHECK_THROWS(vector_from_json("{\"format\":\"qtt-vec-v1\",\"n\":2,\"d\":2,"
                                  "\"order\":\"LSB_FIRST\",\"data\":[[1,0]]}"));
    CHECK_THROWS(vector_from_json("not json at all"));
}

TEST_CASE("build writes the documented core shapes") {
    const fs::path path = temp_file("build16.mpo.json");
    const CliResult r = run_cli({"build", "--n", "16", "--rank", "12", "--out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("bond_dimension: 13") != std::string::npos);
    const Mpo m = load_mpo(path.string());
    CHECK(m.cores[7].shape == std::vector<i64>{13, 2, 2, 13});

    const fs::path apath = temp_file("build8.aqft.mpo.json");
    const CliResult ra =
        run_cli({"build", "--n", "8", "--aqft-b", "3", "--out", apath.string()});
    REQUIRE(ra.code == 0);
    const Mpo am = load_mpo(apath.string());
    CHECK(am.cores[4].shape == std::vector<i64>{8, 2, 2, 8});
}

TEST_CASE("build rejects contradictory flags") {
    const fs::path path = temp_file("never.mpo.json");
    CHECK(run_cli({"build", "--n", "4", "--rank", "4", "--aqft-b", "2", "--out",
                   path.string()})
              .code == 2);
    CHECK(run_cli({"build", "--n", "4", "--out", path.string()}).code == 2);
}

TEST_CASE("apply runs the one-site identity check") {
    const fs::path mpo_path = temp_file("n1.mpo.json");
    REQUIRE(run_cli({"build", "--n", "1", "--rank", "1", "--out", mpo_path.string()}).code == 0);

    DenseVector in;
    in.n = 1;
    in.d = 2;
    in.order = SignificanceOrder::LsbFirst;
    in.data = {cd{0.25, 0.5}, cd{-1.0, 2.0}};
    const fs::path in_path = temp_file("n1.vec.json");
    save_vector(in, in_path.string());

    const fs::path out_path = temp_file("n1.out.json");
    REQUIRE(run_cli({"apply", "--mpo", mpo_path.string(), "--input", in_path.string(), "--out",
                     out_path.string(), "--tol", "0"})
                .code == 0);
    const DenseVector out = std::get<DenseVector>(load_vector(out_path.string()));
    CHECK(std::abs(out.data[0] - (in.data[0] + in.data[1])) < 1e-14);
    CHECK(std::abs(out.data[1] - (in.data[0] - in.data[1])) < 1e-14);
    CHECK(out.order == SignificanceOrder::MsbFirst);
}

TEST_CASE("apply transforms the delta and plane-wave inputs") {
    const fs::path mpo_path = temp_file("n8k12.mpo.json");
    REQUIRE(run_cli({"build", "--n", "8", "--rank", "12", "--out", mpo_path.string()}).code == 0);

    const i64 N = 256;
    DenseVector delta;
    delta.n = 8;
    delta.d = 2;
    delta.order = SignificanceOrder::LsbFirst;
    delta.data.assign(static_cast<size_t>(N), cd{0.0, 0.0});
    delta.data[0] = cd{1.0, 0.0};
    const fs::path delta_path = temp_file("delta.vec.json");
    save_vector(delta, delta_path.string());
    const fs::path delta_out = temp_file("delta.out.json");
    REQUIRE(run_cli({"apply", "--mpo", mpo_path.string(), "--input", delta_path.string(),
                     "--out", delta_out.string()})
                .code == 0);
    const DenseVector spectrum = std::get<DenseVector>(load_vector(delta_out.string()));
    for (const cd& z : spectrum.data)
        CHECK(std::abs(z - cd{1.0, 0.0}) <= 1e-4);

    DenseVector wave = delta;
    for (i64 t = 0; t < N; ++t)
        wave.data[static_cast<size_t>(t)] =
            std::polar(1.0, 2.0 * std::numbers::pi * 3.0 * t / N);
    const fs::path wave_path = temp_file("wave.vec.json");
    save_vector(wave, wave_path.string());
    const fs::path wave_out = temp_file("wave.out.json");
    REQUIRE(run_cli({"apply", "--mpo", mpo_path.string(), "--input", wave_path.string(),
                     "--out", wave_out.string()})
                .code == 0);
    const DenseVector got = std::get<DenseVector>(load_vector(wave_out.string()));
    const std::vector<cd> want = fft(wave.data);
    for (i64 s = 0; s < N; ++s)
        CHECK(std::abs(got.data[static_cast<size_t>(s)] - want[static_cast<size_t>(s)]) <=
              N * 1e-4);
}

TEST_CASE("apply accepts quantized MPS input files") {
    const fs::path mpo_path = temp_file("n6.mpo.json");
    REQUIRE(run_cli({"build", "--n", "6", "--rank", "8", "--out", mpo_path.string()}).code == 0);

    std::vector<cd> v(64);
    for (i64 t = 0; t < 64; ++t)
        v[static_cast<size_t>(t)] = std::polar(1.0, 2.0 * std::numbers::pi * 5.0 * t / 64.0);
    const Mps state = dense_to_mps(v, 2, SignificanceOrder::LsbFirst, 1e-12);
    const fs::path in_path = temp_file("n6.mps.json");
    save_vector(state, in_path.string());

    const fs::path out_path = temp_file("n6.out.json");
    REQUIRE(run_cli({"apply", "--mpo", mpo_path.string(), "--input", in_path.string(), "--out",
                     out_path.string()})
                .code == 0);
    const DenseVector got = std::get<DenseVector>(load_vector(out_path.string()));
    const std::vector<cd> want = fft(v);
    for (i64 s = 0; s < 64; ++s)
        CHECK(std::abs(got.data[static_cast<size_t>(s)] - want[static_cast<size_t>(s)]) <= 0.1);

    // an MSB-first MPS input is a convention error
    Mps wrong = state;
    wrong.order = SignificanceOrder::MsbFirst;
    const fs::path bad_path = temp_file("n6.bad.mps.json");
    save_vector(wrong, bad_path.string());
    CHECK(run_cli({"apply", "--mpo", mpo_path.string(), "--input", bad_path.string(), "--out",
                   out_path.string()})
              .code == 2);
}

TEST_CASE("apply --normalize post-scales by 1/sqrt(N)") {
    const fs::path mpo_path = temp_file("norm1.mpo.json");
    REQUIRE(run_cli({"build", "--n", "1", "--rank", "1", "--out", mpo_path.string()}).code == 0);
    DenseVector in;
    in.n = 1;
    in.d = 2;
    in.order = SignificanceOrder::LsbFirst;
    in.data = {cd{1.0, 0.0}, cd{0.0, 0.0}};
    const fs::path in_path = temp_file("norm1.vec.json");
    save_vector(in, in_path.string());
    const fs::path out_path = temp_file("norm1.out.json");
    REQUIRE(run_cli({"apply", "--mpo", mpo_path.string(), "--input", in_path.string(), "--out",
                     out_path.string(), "--normalize"})
                .code == 0);
    const DenseVector out = std::get<DenseVector>(load_vector(out_path.string()));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(out.data[0] - cd{inv_sqrt2, 0.0}) < 1e-14);
    CHECK(std::abs(out.data[1] - cd{inv_sqrt2, 0.0}) < 1e-14);
}

TEST_CASE("apply rejects convention and site mismatches") {
    const fs::path mpo_path = temp_file("n4.mpo.json");
    REQUIRE(run_cli({"build", "--n", "4", "--rank", "4", "--out", mpo_path.string()}).code == 0);

    DenseVector wrong_order;
    wrong_order.n = 4;
    wrong_order.d = 2;
    wrong_order.order = SignificanceOrder::MsbFirst;
    wrong_order.data.assign(16, cd{1.0, 0.0});
    const fs::path p1 = temp_file("wrong_order.vec.json");
    save_vector(wrong_order, p1.string());
    const fs::path out = temp_file("unused.out.json");
    CHECK(run_cli({"apply", "--mpo", mpo_path.string(), "--input", p1.string(), "--out",
                   out.string()})
              .code == 2);

    DenseVector wrong_sites = wrong_order;
    wrong_sites.order = SignificanceOrder::LsbFirst;
    wrong_sites.n = 3;
    wrong_sites.data.assign(8, cd{1.0, 0.0});
    const fs::path p2 = temp_file("wrong_sites.vec.json");
    save_vector(wrong_sites, p2.string());
    CHECK(run_cli({"apply", "--mpo", mpo_path.string(), "--input", p2.string(), "--out",
                   out.string()})
              .code == 2);
}

TEST_CASE("verify subcommands emit JSON reports with correct pass flags") {
    const CliResult entry = run_cli({"verify", "--mode", "entrywise", "--n", "8", "--rank", "8"});
    CHECK(entry.code == 0);
    const auto j = nlohmann::json::parse(entry.out);
    CHECK(j.at("pass").get<bool>());
    CHECK(j.at("observed_max_error").get<double>() <= 2.0982913931875443);
    CHECK(j.at("K").get<int>() == 8);

    const CliResult aqft = run_cli({"verify", "--mode", "aqft-exact", "--n", "6", "--b", "3"});
    CHECK(aqft.code == 0);
    CHECK(nlohmann::json::parse(aqft.out).at("observed_max_error").get<double>() <= 1e-13);

    const CliResult unfold =
        run_cli({"verify", "--mode", "unfolding", "--n", "6", "--rank", "8"});
    CHECK(unfold.code == 0);
    const auto ju = nlohmann::json::parse(unfold.out);
    for (int m = 1; m <= 5; ++m)
        CHECK(ju.at("details").at("m=" + std::to_string(m)).get<double>() <= 6.44e-3);

    const CliResult blocks = run_cli({"verify", "--mode", "blocks", "--n", "5", "--rank", "8"});
    CHECK(blocks.code == 0);

    const CliResult interp =
        run_cli({"verify", "--mode", "interp", "--rank", "8", "--probes", "129"});
    CHECK(interp.code == 0);

    CHECK(run_cli({"verify", "--mode", "no-such-mode", "--n", "4"}).code == 2);
    // infeasible exhaustive request without --samples
    CHECK(run_cli({"verify", "--mode", "entrywise", "--n", "14", "--rank", "4"}).code == 2);
}

TEST_CASE("verify reports are deterministic given identical flags") {
    const std::vector<std::string> flags{"verify", "--mode",    "entrywise", "--n", "10",
                                         "--rank", "6",         "--samples", "2000",
                                         "--seed", "3"};
    const CliResult a = run_cli(flags);
    const CliResult b = run_cli(flags);
    // elapsed_ms differs between runs; compare everything else
    auto scrub = [](const std::string& text) {
        auto j = nlohmann::json::parse(text);
        j.erase("elapsed_ms");
        return j.dump();
    };
    CHECK(scrub(a.out) == scrub(b.out));
}

TEST_CASE("table emits one CSV row per K with decreasing observed error") {
    const CliResult r = run_cli({"table", "--n", "8", "--ranks", "4:16:4"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "k_or_b,observed_max_error,bound,ek_bound,lebesgue_bound,elapsed_ms");
    double previous = 1e300;
    int rows = 0;
    for (std::string line; std::getline(lines, line);) {
        if (line.empty())
            continue;
        ++rows;
        std::istringstream cells(line);
        std::string k, observed;
        std::getline(cells, k, ',');
        std::getline(cells, observed, ',');
        const double value = std::stod(observed);
        CHECK(value < previous);
        previous = value;
    }
    CHECK(rows == 4);
}

TEST_CASE("AQFT table rows decay roughly like 2^{-b}") {
    const CliResult r = run_cli({"table", "--n", "8", "--ranks", "2:8:2", "--aqft"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    std::vector<double> observed;
    for (std::string line; std::getline(lines, line);) {
        if (line.empty())
            continue;
        std::istringstream cells(line);
        std::string b, value;
        std::getline(cells, b, ',');
        std::getline(cells, value, ',');
        observed.push_back(std::stod(value));
    }
    REQUIRE(observed.size() == 3); // b = 8 exceeds n-1 and is skipped
    CHECK(observed[1] < observed[0]);
    CHECK(observed[2] < observed[1]);
}

TEST_CASE("table rejects an empty range") {
    CHECK(run_cli({"table", "--n", "8", "--ranks", "16:4:4"}).code == 2);
    CHECK(run_cli({"table", "--n", "8", "--ranks", "nonsense"}).code == 2);
}

TEST_CASE("CLI file outputs are byte-stable across runs") {
    const fs::path p1 = temp_file("stable1.mpo.json");
    const fs::path p2 = temp_file("stable2.mpo.json");
    REQUIRE(run_cli({"build", "--n", "6", "--rank", "9", "--out", p1.string()}).code == 0);
    REQUIRE(run_cli({"build", "--n", "6", "--rank", "9", "--out", p2.string()}).code == 0);
    CHECK(slurp(p1) == slurp(p2));
}
