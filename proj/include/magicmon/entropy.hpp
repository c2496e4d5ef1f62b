#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace magicmon {

// Probability weights below this are treated as numerical zeros when
// counting support (alpha = 0).
inline constexpr double kSupportThreshold = 1e-12;

// Renyi entropy of a probability vector, in nats. alpha = 1 is the
// Shannon limit with 0 ln 0 := 0; alpha = infinity is -ln max p.
// Tiny negative weights from floating-point cancellation are clamped.
inline double renyi_entropy(std::span<const double> probs, double alpha) {
    if (alpha == 1.0) {
        double s = 0.0;
        for (double p : probs)
            if (p > 0.0) s -= p * std::log(p);
        return s;
    }
    if (std::isinf(alpha)) {
        double m = 0.0;
        for (double p : probs)
            if (p > m) m = p;
        return -std::log(m);
    }
    if (alpha == 0.0) {
        std::size_t support = 0;
        for (double p : probs)
            if (p > kSupportThreshold) ++support;
        return std::log(static_cast<double>(support));
    }
    double s = 0.0;
    for (double p : probs)
        if (p > 0.0) s += std::pow(p, alpha);
    return std::log(s) / (1.0 - alpha);
}

inline double renyi_entropy(const std::vector<double>& probs, double alpha) {
    return renyi_entropy(std::span<const double>(probs), alpha);
}

inline double binary_entropy(double p) {
    double s = 0.0;
    if (p > 0.0) s -= p * std::log(p);
    if (p < 1.0) s -= (1.0 - p) * std::log(1.0 - p);
    return s;
}

inline constexpr double nats_to_bits(double nats) { return nats / 0.693147180559945309417232121458; }

} // namespace magicmon
