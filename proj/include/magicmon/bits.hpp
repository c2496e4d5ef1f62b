#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace magicmon {

inline int parity64(uint64_t v) { return std::popcount(v) & 1; }

// In-place Walsh-Hadamard transform with the unnormalized kernel
// [[1,1],[1,-1]] applied once per index bit. data.size() must be a
// power of two.
template <typename T>
void fwht_inplace(std::span<T> data) {
    const std::size_t n = data.size();
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t i = 0; i < n; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                T a = data[j];
                T b = data[j + len];
                data[j] = a + b;
                data[j + len] = a - b;
            }
        }
    }
}

template <typename T>
void fwht_inplace(std::vector<T>& data) {
    fwht_inplace(std::span<T>(data));
}

// Bit i of `bits` rendered at string position i (qubit 0 first).
inline std::string bits_to_string(uint64_t bits, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if ((bits >> i) & 1) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

inline uint64_t string_to_bits(const std::string& s) {
    uint64_t bits = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '1') bits |= uint64_t{1} << i;
    return bits;
}

inline std::complex<double> i_power(int e) {
    switch (((e % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

} // namespace magicmon
