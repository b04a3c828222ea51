#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>

namespace conjalg {

using Complex = std::complex<double>;

/// Default comparison tolerance for floating-point equality tests.
inline constexpr double kDefaultTolerance = 1e-9;

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double m = 0.0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    for (std::size_t i = n; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
    for (std::size_t i = n; i < b.size(); ++i) m = std::max(m, std::abs(b[i]));
    return m;
}

} // namespace conjalg
