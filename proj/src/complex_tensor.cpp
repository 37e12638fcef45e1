#include "qttdft/complex_tensor.hpp"

#include "qttdft/kernels.hpp"
#include "qttdft/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qttdft {

namespace {

void check_shape(std::span<const i64> shape) {
    for (i64 e : shape)
        if (e < 1)
            throw std::invalid_argument("ComplexTensor: all extents must be >= 1");
}

std::string axes_to_string(std::pair<int, int> p) {
    std::ostringstream os;
    os << "(" << p.first << "," << p.second << ")";
    return os.str();
}

} // namespace

ComplexTensor::ComplexTensor(std::vector<i64> shape_) : shape(std::move(shape_)) {
    check_shape(shape);
    data.assign(static_cast<size_t>(shape_product(shape)), cd{0.0, 0.0});
}

ComplexTensor::ComplexTensor(std::vector<i64> shape_, std::vector<cd> data_)
    : shape(std::move(shape_)), data(std::move(data_)) {
    check_shape(shape);
    if (shape_product(shape) != static_cast<i64>(data.size()))
        throw std::invalid_argument("ComplexTensor: data length does not match shape product");
}

std::vector<i64> ComplexTensor::strides() const {
    std::vector<i64> st(shape.size());
    i64 acc = 1;
    for (int i = rank() - 1; i >= 0; --i) {
        st[static_cast<size_t>(i)] = acc;
        acc *= shape[static_cast<size_t>(i)];
    }
    return st;
}

i64 ComplexTensor::flat_index(std::span<const i64> idx) const {
    if (static_cast<int>(idx.size()) != rank())
        throw std::invalid_argument("ComplexTensor: index rank mismatch");
    i64 flat = 0;
    for (int i = 0; i < rank(); ++i) {
        const i64 v = idx[static_cast<size_t>(i)];
        if (v < 0 || v >= shape[static_cast<size_t>(i)])
            throw std::out_of_range("ComplexTensor: index out of range");
        flat = flat * shape[static_cast<size_t>(i)] + v;
    }
    return flat;
}

i64 shape_product(std::span<const i64> shape) {
    i64 acc = 1;
    for (i64 e : shape)
        acc *= e;
    return acc;
}

ComplexTensor reshape(const ComplexTensor& t, std::vector<i64> shape) {
    check_shape(shape);
    if (shape_product(shape) != t.size())
        throw std::invalid_argument("reshape: total size must be preserved");
    ComplexTensor out;
    out.shape = std::move(shape);
    out.data = t.data;
    return out;
}

ComplexTensor transpose(const ComplexTensor& t, std::span<const int> perm) {
    const int r = t.rank();
    if (static_cast<int>(perm.size()) != r)
        throw std::invalid_argument("transpose: permutation rank mismatch");
    std::vector<bool> seen(static_cast<size_t>(r), false);
    for (int p : perm) {
        if (p < 0 || p >= r || seen[static_cast<size_t>(p)])
            throw std::invalid_argument("transpose: not a valid permutation");
        seen[static_cast<size_t>(p)] = true;
    }

    std::vector<i64> out_shape(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i)
        out_shape[static_cast<size_t>(i)] = t.shape[static_cast<size_t>(perm[static_cast<size_t>(i)])];

    ComplexTensor out(out_shape);
    const std::vector<i64> in_strides = t.strides();
    // stride of output axis i in the input layout
    std::vector<i64> gather(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i)
        gather[static_cast<size_t>(i)] = in_strides[static_cast<size_t>(perm[static_cast<size_t>(i)])];

    const i64 total = out.size();
    const std::vector<i64> out_strides = out.strides();
    auto copy_range = [&](i64 begin, i64 end) {
        std::vector<i64> idx(static_cast<size_t>(r), 0);
        i64 src = 0;
        for (int i = 0; i < r; ++i) {
            idx[static_cast<size_t>(i)] =
                (begin / out_strides[static_cast<size_t>(i)]) % out_shape[static_cast<size_t>(i)];
            src += idx[static_cast<size_t>(i)] * gather[static_cast<size_t>(i)];
        }
        for (i64 flat = begin; flat < end; ++flat) {
            out.data[static_cast<size_t>(flat)] = t.data[static_cast<size_t>(src)];
            // odometer increment
            for (int i = r - 1; i >= 0; --i) {
                src += gather[static_cast<size_t>(i)];
                if (++idx[static_cast<size_t>(i)] < out_shape[static_cast<size_t>(i)])
                    break;
                src -= gather[static_cast<size_t>(i)] * out_shape[static_cast<size_t>(i)];
                idx[static_cast<size_t>(i)] = 0;
            }
        }
    };

    if (should_parallelize(total)) {
#ifdef _OPENMP
        const int nt = thread_count();
#pragma omp parallel for schedule(static) num_threads(nt)
        for (int chunk = 0; chunk < nt; ++chunk) {
            const i64 begin = total * chunk / nt;
            const i64 end = total * (chunk + 1) / nt;
            if (begin < end)
                copy_range(begin, end);
        }
#else
        copy_range(0, total);
#endif
    } else {
        copy_range(0, total);
    }
    return out;
}

ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                       std::span<const std::pair<int, int>> axes) {
    const int ra = a.rank();
    const int rb = b.rank();
    std::vector<bool> used_a(static_cast<size_t>(ra), false);
    std::vector<bool> used_b(static_cast<size_t>(rb), false);
    for (const auto& [ia, ib] : axes) {
        if (ia < 0 || ia >= ra || ib < 0 || ib >= rb)
            throw std::invalid_argument("contract: axis pair " + axes_to_string({ia, ib}) +
                                        " out of range");
        if (used_a[static_cast<size_t>(ia)] || used_b[static_cast<size_t>(ib)])
            throw std::invalid_argument("contract: axis repeated in pair " +
                                        axes_to_string({ia, ib}));
        if (a.shape[static_cast<size_t>(ia)] != b.shape[static_cast<size_t>(ib)])
            throw std::invalid_argument("contract: extent mismatch at axis pair " +
                                        axes_to_string({ia, ib}));
        used_a[static_cast<size_t>(ia)] = true;
        used_b[static_cast<size_t>(ib)] = true;
    }

    // surviving axes of a, then contracted axes of a in pair order
    std::vector<int> perm_a;
    for (int i = 0; i < ra; ++i)
        if (!used_a[static_cast<size_t>(i)])
            perm_a.push_back(i);
    const size_t keep_a = perm_a.size();
    for (const auto& [ia, ib] : axes)
        perm_a.push_back(ia);

    // contracted axes of b in the same order, then surviving axes of b
    std::vector<int> perm_b;
    for (const auto& [ia, ib] : axes)
        perm_b.push_back(ib);
    for (int i = 0; i < rb; ++i)
        if (!used_b[static_cast<size_t>(i)])
            perm_b.push_back(i);

    const ComplexTensor at = transpose(a, perm_a);
    const ComplexTensor bt = transpose(b, perm_b);

    i64 m = 1, k = 1, n = 1;
    std::vector<i64> out_shape;
    for (size_t i = 0; i < keep_a; ++i) {
        m *= at.shape[i];
        out_shape.push_back(at.shape[i]);
    }
    for (size_t i = keep_a; i < at.shape.size(); ++i)
        k *= at.shape[i];
    for (size_t i = axes.size(); i < bt.shape.size(); ++i) {
        n *= bt.shape[i];
        out_shape.push_back(bt.shape[i]);
    }
    if (out_shape.empty())
        out_shape.push_back(1); // scalar result kept as a 1-tensor

    ComplexTensor out(out_shape);
    kernels::matmul(at.data.data(), bt.data.data(), out.data.data(), m, k, n);
    return out;
}

ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                       std::initializer_list<std::pair<int, int>> axes) {
    return contract(a, b, std::span<const std::pair<int, int>>(axes.begin(), axes.size()));
}

ComplexTensor unfold(const ComplexTensor& t, int m, std::span<const int> perm) {
    if (t.rank() % 2 != 0)
        throw std::invalid_argument("unfold: tensor rank must be even (site pairs)");
    const int n_sites = t.rank() / 2;
    if (m <= 0 || m >= n_sites)
        throw std::invalid_argument("unfold: split must satisfy 0 < m < n");
    const ComplexTensor p = transpose(t, perm);
    i64 rows = 1;
    for (int i = 0; i < 2 * m; ++i)
        rows *= p.shape[static_cast<size_t>(i)];
    return reshape(p, {rows, p.size() / rows});
}

double max_abs(const ComplexTensor& t) { return kernels::max_abs(t.data); }

double frobenius_norm(const ComplexTensor& t) {
    double acc = 0.0;
    for (const cd& z : t.data)
        acc += std::norm(z);
    return std::sqrt(acc);
}

std::vector<int> identity_permutation(int rank) {
    std::vector<int> p(static_cast<size_t>(rank));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
    std::vector<int> inv(perm.size());
    for (size_t i = 0; i < perm.size(); ++i)
        inv[static_cast<size_t>(perm[i])] = static_cast<int>(i);
    return inv;
}

} // namespace qttdft
