#pragma once

// Seeded generators for property checks. Doubles are built from raw mt19937_64
// bits so results do not depend on the standard library's distributions.

#include "conjalg/dynsys.hpp"
#include "conjalg/mobius.hpp"
#include "conjalg/numeric.hpp"
#include "conjalg/skewpoly.hpp"

#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace conjalg {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

class Rng {
public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        // Rejection sampling keeps the draw unbiased.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do v = engine_();
        while (v >= limit);
        return static_cast<std::size_t>(v % n);
    }

    bool coin() { return (engine_() >> 63) != 0; }

    Complex unimodular() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }

    /// Uniform in the disk of the given radius.
    Complex in_disk(double radius) {
        return std::polar(radius * std::sqrt(uniform()), uniform(0.0, 2.0 * std::numbers::pi));
    }

    Complex gaussian_like() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

private:
    std::mt19937_64 engine_;
};

inline FiniteDynSys random_system(Rng& rng, std::size_t n) {
    std::vector<Point> m(n);
    for (auto& v : m) v = rng.index(n);
    return FiniteDynSys(std::move(m));
}

inline ConjugacyWitness random_permutation(Rng& rng, std::size_t n) {
    auto w = ConjugacyWitness::identity(n);
    for (std::size_t i = n; i > 1; --i) std::swap(w.bijection[i - 1], w.bijection[rng.index(i)]);
    return w;
}

inline CoefFn random_coef(Rng& rng, std::size_t n) {
    CoefFn f(n);
    for (auto& v : f) v = rng.gaussian_like();
    return f;
}

/// Degree exactly `degree` (top coefficient nonzero with probability one).
inline SkewPoly random_poly(Rng& rng, const FiniteDynSys& sys, std::size_t degree) {
    std::vector<CoefFn> c;
    for (std::size_t k = 0; k <= degree; ++k) c.push_back(random_coef(rng, sys.size()));
    return SkewPoly(sys, std::move(c));
}

/// A system with a point x satisfying eta(x) != x and eta(eta(x)) = eta(x).
inline std::pair<FiniteDynSys, Point> random_pencil_system(Rng& rng, std::size_t n) {
    if (n < 2) n = 2;
    std::vector<Point> m(n);
    for (auto& v : m) v = rng.index(n);
    const Point x = rng.index(n);
    Point y = rng.index(n - 1);
    if (y >= x) ++y;
    m[y] = y;
    m[x] = y;
    return {FiniteDynSys(std::move(m)), x};
}

/// gamma = R o phi_p: a uniformly parameterized disk automorphism.
inline MobiusMap random_disk_automorphism(Rng& rng, double max_center = 0.8) {
    return compose(MobiusMap::dilation(rng.unimodular()), MobiusMap::disk_automorphism(rng.in_disk(max_center)));
}

/// Elliptic disk self-map with interior fixed point p: phi_p^{-1} o (lambda z / (1 - kappa z)) o phi_p.
/// For automorphisms |lambda| = 1 and kappa = 0; otherwise |lambda| + |kappa| < 1.
inline MobiusMap random_elliptic(Rng& rng, bool automorphism, double max_center = 0.8) {
    const Complex p = rng.in_disk(max_center);
    Complex lambda, kappa;
    if (automorphism) {
        lambda = rng.unimodular();
    } else {
        const double lm = rng.uniform(0.05, 0.95);
        lambda = std::polar(lm, rng.uniform(0.0, 2.0 * std::numbers::pi));
        kappa = std::polar(rng.uniform(0.0, 0.99 * (1.0 - lm)), rng.uniform(0.0, 2.0 * std::numbers::pi));
    }
    const MobiusMap core{lambda, 0.0, -kappa, 1.0};
    const auto phi = MobiusMap::disk_automorphism(p);
    return conjugate_by(phi.inverse(), core);
}

} // namespace conjalg
