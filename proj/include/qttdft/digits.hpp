#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qttdft {

using i64 = std::int64_t;

/// Which end of the digit string site 1 carries. The DFT tensor index maps
/// are s = Sum d^{n-k} sigma_k (MSB first) and t = Sum d^{k-1} tau_k (LSB
/// first); keeping the two conventions explicit is what makes the MPO
/// low-rank bookkeeping honest.
enum class SignificanceOrder { LsbFirst, MsbFirst };

const char* to_string(SignificanceOrder order);

/// Length-n digit string over {0,...,d-1}, digits[k] belonging to site k+1.
struct BitString {
    std::vector<int> digits;
    int d = 2;
    SignificanceOrder order = SignificanceOrder::MsbFirst;

    int n() const { return static_cast<int>(digits.size()); }
};

BitString index_to_digits(i64 value, int n, int d, SignificanceOrder order);
i64 digits_to_index(const BitString& bits);

/// Digit-reversal of value in base d with n digits (maps between the two
/// significance conventions on dense vector indices).
i64 digit_reverse(i64 value, int n, int d);

void validate_digits(std::span<const int> digits, int d, const char* what);

} // namespace qttdft
