#pragma once

// Skew polynomial algebra P(X, eta) over a finite system: finite sums sum_k f_k U^k
// multiplied under the covariance relation U f = (f o eta) U.

#include "conjalg/dynsys.hpp"
#include "conjalg/error.hpp"
#include "conjalg/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace conjalg {

/// Values of a coefficient function f : X -> C, indexed by point.
using CoefFn = std::vector<Complex>;

namespace detail {

/// Coefficient convolution shared by every skew polynomial flavour:
///   (pq)_n = sum_{k=0}^{n} p_k * (q_{n-k} o eta^(k)).
/// `compose(g, k)` must return g o eta^(k); `mul` and `add` act pointwise.
template <class Coef, class Compose, class Mul, class Add>
std::vector<Coef> skew_convolution(const std::vector<Coef>& p, const std::vector<Coef>& q,
                                   Compose&& compose, Mul&& mul, Add&& add) {
    std::vector<Coef> out;
    if (p.empty() || q.empty()) return out;
    out.reserve(p.size() + q.size() - 1);
    for (std::size_t n = 0; n + 2 <= p.size() + q.size(); ++n) {
        const std::size_t k_lo = n >= q.size() ? n - q.size() + 1 : 0;
        const std::size_t k_hi = std::min(n, p.size() - 1);
        Coef acc = mul(p[k_lo], compose(q[n - k_lo], k_lo));
        for (std::size_t k = k_lo + 1; k <= k_hi; ++k)
            acc = add(std::move(acc), mul(p[k], compose(q[n - k], k)));
        out.push_back(std::move(acc));
    }
    return out;
}

} // namespace detail

/// f o eta^(k) for a finite system.
inline CoefFn compose(const CoefFn& f, const FiniteDynSys& sys, std::size_t k = 1) {
    CoefFn out(f.size());
    for (Point x = 0; x < f.size(); ++x) out[x] = f[sys.iterate(x, k)];
    return out;
}

inline bool is_zero(const CoefFn& f) {
    for (const auto& v : f) {
        if (v != Complex{}) return false;
    }
    return true;
}

class SkewPoly {
public:
    explicit SkewPoly(FiniteDynSys sys) : sys_(std::move(sys)) {}

    SkewPoly(FiniteDynSys sys, std::vector<CoefFn> coeffs)
        : sys_(std::move(sys)), coeffs_(std::move(coeffs)) {
        for (const auto& c : coeffs_) {
            if (c.size() != sys_.size())
                throw Error(ErrorCode::InvalidArgument,
                            "coefficient length " + std::to_string(c.size()) +
                                " does not match system size " + std::to_string(sys_.size()));
        }
        normalize();
    }

    static SkewPoly constant(const FiniteDynSys& sys, CoefFn f) {
        return SkewPoly(sys, {std::move(f)});
    }

    static SkewPoly one(const FiniteDynSys& sys) {
        return constant(sys, CoefFn(sys.size(), Complex{1.0}));
    }

    /// f U^k.
    static SkewPoly monomial(const FiniteDynSys& sys, CoefFn f, std::size_t k) {
        std::vector<CoefFn> c(k + 1, CoefFn(sys.size()));
        c[k] = std::move(f);
        return SkewPoly(sys, std::move(c));
    }

    /// The generator U (constant coefficient 1 in degree one).
    static SkewPoly shift(const FiniteDynSys& sys) {
        return monomial(sys, CoefFn(sys.size(), Complex{1.0}), 1);
    }

    const FiniteDynSys& system() const noexcept { return sys_; }
    const std::vector<CoefFn>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// -1 for the zero polynomial.
    std::ptrdiff_t degree() const noexcept { return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1; }

    friend bool operator==(const SkewPoly&, const SkewPoly&) = default;

private:
    void normalize() {
        while (!coeffs_.empty() && conjalg::is_zero(coeffs_.back())) coeffs_.pop_back();
    }

    FiniteDynSys sys_;
    std::vector<CoefFn> coeffs_;
};

namespace detail {

inline void require_same_system(const SkewPoly& p, const SkewPoly& q) {
    if (p.system() != q.system())
        throw Error(ErrorCode::SystemMismatch, "polynomials live over different systems");
}

} // namespace detail

inline SkewPoly skew_add(const SkewPoly& p, const SkewPoly& q) {
    detail::require_same_system(p, q);
    const auto& a = p.coeffs();
    const auto& b = q.coeffs();
    std::vector<CoefFn> out(std::max(a.size(), b.size()), CoefFn(p.system().size()));
    for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t x = 0; x < a[k].size(); ++x) out[k][x] += a[k][x];
    for (std::size_t k = 0; k < b.size(); ++k)
        for (std::size_t x = 0; x < b[k].size(); ++x) out[k][x] += b[k][x];
    return SkewPoly(p.system(), std::move(out));
}

inline SkewPoly skew_scale(Complex c, const SkewPoly& p) {
    auto coeffs = p.coeffs();
    for (auto& f : coeffs)
        for (auto& v : f) v *= c;
    return SkewPoly(p.system(), std::move(coeffs));
}

inline SkewPoly skew_mul(const SkewPoly& p, const SkewPoly& q) {
    detail::require_same_system(p, q);
    const auto& sys = p.system();
    auto coeffs = detail::skew_convolution(
        p.coeffs(), q.coeffs(),
        [&sys](const CoefFn& g, std::size_t k) { return compose(g, sys, k); },
        [](const CoefFn& f, const CoefFn& g) {
            CoefFn out(f.size());
            for (std::size_t x = 0; x < f.size(); ++x) out[x] = f[x] * g[x];
            return out;
        },
        [](CoefFn acc, const CoefFn& g) {
            for (std::size_t x = 0; x < acc.size(); ++x) acc[x] += g[x];
            return acc;
        });
    return SkewPoly(sys, std::move(coeffs));
}

/// p^n by repeated multiplication; p^0 is the unit.
inline SkewPoly skew_pow(const SkewPoly& p, std::size_t n) {
    SkewPoly out = SkewPoly::one(p.system());
    for (std::size_t i = 0; i < n; ++i) out = skew_mul(out, p);
    return out;
}

/// E_n(p); the zero function when n exceeds the degree.
inline CoefFn coefficient(const SkewPoly& p, std::size_t n) {
    if (n < p.coeffs().size()) return p.coeffs()[n];
    return CoefFn(p.system().size());
}

/// sum_k max_x |f_k(x)|.
inline double l1_norm(const SkewPoly& p) {
    double total = 0.0;
    for (const auto& f : p.coeffs()) {
        double m = 0.0;
        for (const auto& v : f) m = std::max(m, std::abs(v));
        total += m;
    }
    return total;
}

/// Max coefficient deviation; polynomials over different systems are never close.
inline double max_deviation(const SkewPoly& p, const SkewPoly& q) {
    detail::require_same_system(p, q);
    double m = 0.0;
    const std::size_t len = std::max(p.coeffs().size(), q.coeffs().size());
    for (std::size_t k = 0; k < len; ++k) {
        const auto a = coefficient(p, k);
        const auto b = coefficient(q, k);
        m = std::max(m, max_abs_diff(a, b));
    }
    return m;
}

inline bool approx_equal(const SkewPoly& p, const SkewPoly& q, double tol = kDefaultTolerance) {
    return p.system() == q.system() && max_deviation(p, q) <= tol;
}

/// Moves p along a conjugacy sigma : (X1, eta1) -> (X2, eta2); every coefficient
/// becomes f o sigma^{-1}. The induced map is an algebra isomorphism.
inline SkewPoly transport(const SkewPoly& p, const ConjugacyWitness& w, const FiniteDynSys& target) {
    if (!is_witness(w, p.system(), target))
        throw Error(ErrorCode::InvalidWitness, "witness does not conjugate the polynomial's system to the target");
    std::vector<CoefFn> coeffs;
    coeffs.reserve(p.coeffs().size());
    for (const auto& f : p.coeffs()) {
        CoefFn g(f.size());
        for (Point x = 0; x < f.size(); ++x) g[w(x)] = f[x];
        coeffs.push_back(std::move(g));
    }
    return SkewPoly(target, std::move(coeffs));
}

} // namespace conjalg
