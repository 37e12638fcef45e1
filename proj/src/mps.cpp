#include "qttdft/mps.hpp"

#include "qttdft/kernels.hpp"
#include "qttdft/svd.hpp"

#include <cmath>
#include <stdexcept>

namespace qttdft {

namespace {

int infer_sites(i64 length, int d) {
    int n = 0;
    i64 cap = 1;
    while (cap < length) {
        cap *= d;
        ++n;
    }
    if (cap != length || n < 1)
        throw std::invalid_argument("quantization: vector length must be a positive power of d");
    return n;
}

// Right-to-left orthogonalization followed by a left-to-right truncating
// sweep with a per-bond budget of tol * ||w|| / sqrt(n-1).
void tt_round(Mps& m, double tol) {
    const int n = m.n;
    if (n < 2)
        return;

    for (int k = n - 1; k >= 1; --k) {
        ComplexTensor& core = m.cores[static_cast<size_t>(k)];
        const i64 rl = core.shape[0];
        const i64 d = core.shape[1];
        const i64 rr = core.shape[2];
        // row-orthonormal factor via SVD: A = (U S) V
        const SvdResult f = svd_truncate(reshape(core, {rl, d * rr}), std::min(rl, d * rr));
        ComplexTensor carry({rl, f.rank()});
        for (i64 i = 0; i < rl; ++i)
            for (i64 j = 0; j < f.rank(); ++j)
                carry.data[static_cast<size_t>(i * f.rank() + j)] =
                    f.u.data[static_cast<size_t>(i * f.rank() + j)] * f.s[static_cast<size_t>(j)];
        core = reshape(f.v, {f.rank(), d, rr});
        ComplexTensor& prev = m.cores[static_cast<size_t>(k - 1)];
        prev = contract(prev, carry, {{2, 0}});
    }

    const double norm = frobenius_norm(m.cores[0]);
    const double budget = tol * norm / std::sqrt(static_cast<double>(n - 1));
    for (int k = 0; k < n - 1; ++k) {
        ComplexTensor& core = m.cores[static_cast<size_t>(k)];
        const i64 rl = core.shape[0];
        const i64 d = core.shape[1];
        const i64 rr = core.shape[2];
        const SvdResult f = svd_truncate_abs(reshape(core, {rl * d, rr}), budget);
        core = reshape(f.u, {rl, d, f.rank()});
        ComplexTensor carry({f.rank(), rr});
        for (i64 i = 0; i < f.rank(); ++i)
            for (i64 j = 0; j < rr; ++j)
                carry.data[static_cast<size_t>(i * rr + j)] =
                    f.s[static_cast<size_t>(i)] * f.v.data[static_cast<size_t>(i * rr + j)];
        ComplexTensor& next = m.cores[static_cast<size_t>(k + 1)];
        next = contract(carry, next, {{1, 0}});
    }
}

} // namespace

i64 Mps::max_bond() const {
    i64 best = 1;
    for (const ComplexTensor& c : cores)
        best = std::max(best, c.shape[2]);
    return best;
}

void validate_mps(const Mps& m) {
    if (static_cast<int>(m.cores.size()) != m.n)
        throw std::invalid_argument("Mps: core count must equal n");
    i64 left = 1;
    for (int k = 0; k < m.n; ++k) {
        const ComplexTensor& c = m.cores[static_cast<size_t>(k)];
        if (c.rank() != 3)
            throw std::invalid_argument("Mps: cores must have 3 indices");
        if (c.shape[1] != m.d)
            throw std::invalid_argument("Mps: physical extent must equal d");
        if (c.shape[0] != left)
            throw std::invalid_argument("Mps: adjacent bond extents must match");
        left = c.shape[2];
    }
    if (left != 1)
        throw std::invalid_argument("Mps: boundary bonds must have extent 1");
}

Mps dense_to_mps(std::span<const cd> v, int d, SignificanceOrder order, double tol) {
    if (d < 2)
        throw std::invalid_argument("dense_to_mps: d must be >= 2");
    if (tol < 0.0)
        throw std::invalid_argument("dense_to_mps: tol must be nonnegative");
    const i64 length = static_cast<i64>(v.size());
    const int n = infer_sites(length, d);

    // site-major layout: site 1 is the slowest index. Under LSB_FIRST the
    // vector index t has site 1 as its least significant digit, so the
    // dense data enters digit-reversed.
    std::vector<cd> w(v.begin(), v.end());
    if (order == SignificanceOrder::LsbFirst)
        for (i64 i = 0; i < length; ++i)
            w[static_cast<size_t>(i)] = v[static_cast<size_t>(digit_reverse(i, n, d))];

    Mps out;
    out.n = n;
    out.d = d;
    out.order = order;

    if (n == 1) {
        out.cores.push_back(ComplexTensor({1, d, 1}, std::move(w)));
        return out;
    }

    double norm_sq = 0.0;
    for (const cd& z : w)
        norm_sq += std::norm(z);
    const double budget = tol * std::sqrt(norm_sq) / std::sqrt(static_cast<double>(n - 1));

    ComplexTensor cur({d, length / d}, std::move(w));
    i64 left = 1;
    for (int k = 0; k < n - 1; ++k) {
        const SvdResult f = svd_truncate_abs(cur, budget);
        out.cores.push_back(reshape(f.u, {left, d, f.rank()}));
        left = f.rank();
        const i64 rest = f.v.shape[1];
        ComplexTensor sv({left, rest});
        for (i64 i = 0; i < left; ++i)
            for (i64 j = 0; j < rest; ++j)
                sv.data[static_cast<size_t>(i * rest + j)] =
                    f.s[static_cast<size_t>(i)] * f.v.data[static_cast<size_t>(i * rest + j)];
        cur = (k + 1 < n - 1) ? reshape(sv, {left * d, rest / d}) : std::move(sv);
    }
    out.cores.push_back(reshape(cur, {left, d, 1}));
    validate_mps(out);
    return out;
}

std::vector<cd> mps_to_dense(const Mps& m) {
    validate_mps(m);
    i64 length = 1;
    for (int k = 0; k < m.n; ++k) {
        length *= m.d;
        if (length > (i64{1} << 24))
            throw std::invalid_argument("mps_to_dense: d^n exceeds the 2^24 entry guard");
    }

    ComplexTensor acc({1, 1});
    acc.data[0] = cd{1.0, 0.0};
    for (int k = 0; k < m.n; ++k) {
        const ComplexTensor& core = m.cores[static_cast<size_t>(k)];
        const i64 rows = acc.shape[0];
        const i64 rl = core.shape[0];
        const i64 cols = core.shape[1] * core.shape[2];
        ComplexTensor next({rows, cols});
        kernels::matmul(acc.data.data(), core.data.data(), next.data.data(), rows, rl, cols);
        acc = reshape(next, {rows * m.d, core.shape[2]});
    }

    std::vector<cd> out(static_cast<size_t>(length));
    if (m.order == SignificanceOrder::MsbFirst) {
        out.assign(acc.data.begin(), acc.data.end());
    } else {
        for (i64 i = 0; i < length; ++i)
            out[static_cast<size_t>(digit_reverse(i, m.n, m.d))] = acc.data[static_cast<size_t>(i)];
    }
    return out;
}

Mps apply_mpo(const Mpo& op, const Mps& v, double tol) {
    validate_mpo(op);
    validate_mps(v);
    if (op.n != v.n)
        throw std::invalid_argument("apply_mpo: site count mismatch");
    if (op.d != v.d)
        throw std::invalid_argument("apply_mpo: qudit dimension mismatch");
    if (v.order != SignificanceOrder::LsbFirst)
        throw std::invalid_argument(
            "apply_mpo: input must be LSB_FIRST (tau convention); the operator maps it to an "
            "MSB_FIRST (sigma convention) output");
    if (tol < 0.0)
        throw std::invalid_argument("apply_mpo: tol must be nonnegative");

    Mps out;
    out.n = op.n;
    out.d = op.d;
    out.order = SignificanceOrder::MsbFirst;
    out.cores.reserve(static_cast<size_t>(op.n));
    const std::vector<int> perm{0, 3, 1, 2, 4};
    for (int k = 0; k < op.n; ++k) {
        const ComplexTensor& oc = op.cores[static_cast<size_t>(k)];
        const ComplexTensor& vc = v.cores[static_cast<size_t>(k)];
        // (oa, sigma, ob, va, vb) -> (oa, va, sigma, ob, vb) -> merged bonds
        ComplexTensor merged = transpose(contract(oc, vc, {{2, 1}}), perm);
        out.cores.push_back(reshape(merged, {oc.shape[0] * vc.shape[0], op.d,
                                             oc.shape[3] * vc.shape[2]}));
    }
    if (tol > 0.0)
        tt_round(out, tol);
    validate_mps(out);
    return out;
}

std::vector<cd> digit_reversal_permutation(std::span<const cd> v, int d) {
    const i64 length = static_cast<i64>(v.size());
    const int n = infer_sites(length, d);
    std::vector<cd> out(v.size());
    for (i64 i = 0; i < length; ++i)
        out[static_cast<size_t>(digit_reverse(i, n, d))] = v[static_cast<size_t>(i)];
    return out;
}

} // namespace qttdft
