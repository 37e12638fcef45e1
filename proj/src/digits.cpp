#include "qttdft/digits.hpp"

#include <stdexcept>
#include <string>

namespace qttdft {

const char* to_string(SignificanceOrder order) {
    return order == SignificanceOrder::LsbFirst ? "LSB_FIRST" : "MSB_FIRST";
}

BitString index_to_digits(i64 value, int n, int d, SignificanceOrder order) {
    if (n < 1)
        throw std::invalid_argument("index_to_digits: n must be >= 1");
    if (d < 2)
        throw std::invalid_argument("index_to_digits: d must be >= 2");
    i64 capacity = 1;
    for (int k = 0; k < n; ++k)
        capacity *= d;
    if (value < 0 || value >= capacity)
        throw std::out_of_range("index_to_digits: value " + std::to_string(value) +
                                " outside [0, d^n)");
    BitString out;
    out.d = d;
    out.order = order;
    out.digits.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const int digit = static_cast<int>(value % d);
        value /= d;
        // LSB first: site 1 carries the least significant digit
        const int site = (order == SignificanceOrder::LsbFirst) ? k : n - 1 - k;
        out.digits[static_cast<size_t>(site)] = digit;
    }
    return out;
}

i64 digits_to_index(const BitString& bits) {
    validate_digits(bits.digits, bits.d, "digits_to_index");
    const int n = bits.n();
    i64 value = 0;
    if (bits.order == SignificanceOrder::LsbFirst) {
        for (int k = n - 1; k >= 0; --k)
            value = value * bits.d + bits.digits[static_cast<size_t>(k)];
    } else {
        for (int k = 0; k < n; ++k)
            value = value * bits.d + bits.digits[static_cast<size_t>(k)];
    }
    return value;
}

i64 digit_reverse(i64 value, int n, int d) {
    i64 out = 0;
    for (int k = 0; k < n; ++k) {
        out = out * d + value % d;
        value /= d;
    }
    return out;
}

void validate_digits(std::span<const int> digits, int d, const char* what) {
    for (int v : digits)
        if (v < 0 || v >= d)
            throw std::out_of_range(std::string(what) + ": digit out of range for base " +
                                    std::to_string(d));
}

} // namespace qttdft
