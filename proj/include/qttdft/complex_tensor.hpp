#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace qttdft {

using cd = std::complex<double>;
using i64 = std::int64_t;

/// Dense multi-dimensional array of complex doubles, flat row-major storage
/// (last index fastest). The universal carrier for cores, unfoldings and
/// dense vectors.
struct ComplexTensor {
    std::vector<i64> shape;
    std::vector<cd> data;

    ComplexTensor() = default;
    explicit ComplexTensor(std::vector<i64> shape_);
    ComplexTensor(std::vector<i64> shape_, std::vector<cd> data_);

    int rank() const { return static_cast<int>(shape.size()); }
    i64 size() const { return static_cast<i64>(data.size()); }

    /// Row-major strides (stride of the last index is 1).
    std::vector<i64> strides() const;

    i64 flat_index(std::span<const i64> idx) const;

    cd& at(std::span<const i64> idx) { return data[flat_index(idx)]; }
    const cd& at(std::span<const i64> idx) const { return data[flat_index(idx)]; }

    cd& at(std::initializer_list<i64> idx) { return at(std::span<const i64>(idx.begin(), idx.size())); }
    const cd& at(std::initializer_list<i64> idx) const {
        return at(std::span<const i64>(idx.begin(), idx.size()));
    }
};

i64 shape_product(std::span<const i64> shape);

/// Reinterpret with a new shape of equal total size. Pure metadata change.
ComplexTensor reshape(const ComplexTensor& t, std::vector<i64> shape);

/// Axis permutation: result index i reads from input index perm[i].
ComplexTensor transpose(const ComplexTensor& t, std::span<const int> perm);

/// Pairwise tensor contraction over the given (axis-in-a, axis-in-b) pairs.
/// Result carries the surviving indices of a (in order) then of b. Realized
/// as permute-reshape-matmul.
ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                       std::span<const std::pair<int, int>> axes);
ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                       std::initializer_list<std::pair<int, int>> axes);

/// Site-pair matricization of an even-rank tensor whose indices come in
/// (sigma_k, tau_k) pairs: permute by `perm`, then group the first m pairs
/// (2m indices) as rows and the rest as columns. With the identity
/// permutation on an interleaved DFT tensor this is the m-th unfolding T_m.
ComplexTensor unfold(const ComplexTensor& t, int m, std::span<const int> perm);

/// Largest entry modulus (tensor infinity norm).
double max_abs(const ComplexTensor& t);

double frobenius_norm(const ComplexTensor& t);

std::vector<int> identity_permutation(int rank);
std::vector<int> inverse_permutation(std::span<const int> perm);

} // namespace qttdft
