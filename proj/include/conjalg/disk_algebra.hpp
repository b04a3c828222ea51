#pragma once

// Skew polynomials over the disk algebra with a Mobius self-map eta. Coefficients
// are analytic functions evaluated on first-order jets (value, derivative), which is
// all the 2x2 nest representations at a fixed point can see.

#include "conjalg/mobius.hpp"
#include "conjalg/numeric.hpp"
#include "conjalg/skewpoly.hpp"

#include <functional>
#include <memory>
#include <utility>
#include <vector>

namespace conjalg {

/// First-order jet f + f' dz.
struct Jet {
    Complex value{};
    Complex deriv{};

    static Jet variable(Complex z) { return {z, 1.0}; }
    static Jet constant(Complex c) { return {c, 0.0}; }

    friend Jet operator+(Jet l, Jet r) { return {l.value + r.value, l.deriv + r.deriv}; }
    friend Jet operator-(Jet l, Jet r) { return {l.value - r.value, l.deriv - r.deriv}; }
    friend Jet operator*(Jet l, Jet r) {
        return {l.value * r.value, l.deriv * r.value + l.value * r.deriv};
    }
    friend Jet operator/(Jet l, Jet r) {
        return {l.value / r.value, (l.deriv * r.value - l.value * r.deriv) / (r.value * r.value)};
    }
    friend Jet operator+(Jet l, Complex c) { return {l.value + c, l.deriv}; }
    friend Jet operator+(Complex c, Jet r) { return r + c; }
    friend Jet operator*(Complex c, Jet r) { return {c * r.value, c * r.deriv}; }
    friend Jet operator*(Jet l, Complex c) { return c * l; }
};

/// An analytic coefficient function on the disk, shared immutably.
class DiskCoefFn {
public:
    using Fn = std::function<Jet(Jet)>;

    explicit DiskCoefFn(Fn fn) : fn_(std::make_shared<const Fn>(std::move(fn))) {}

    static DiskCoefFn constant(Complex c) {
        return DiskCoefFn([c](Jet) { return Jet::constant(c); });
    }
    static DiskCoefFn identity() {
        return DiskCoefFn([](Jet z) { return z; });
    }
    /// sum_k coeffs[k] z^k.
    static DiskCoefFn polynomial(std::vector<Complex> coeffs) {
        return DiskCoefFn([c = std::move(coeffs)](Jet z) {
            Jet acc{};
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
            return acc;
        });
    }

    Jet operator()(Jet z) const { return (*fn_)(z); }
    Complex operator()(Complex z) const { return (*fn_)(Jet::variable(z)).value; }
    Complex derivative(Complex z) const { return (*fn_)(Jet::variable(z)).deriv; }

private:
    std::shared_ptr<const Fn> fn_;
};

class DiskSkewPoly {
public:
    DiskSkewPoly(MobiusMap eta, std::vector<DiskCoefFn> coeffs)
        : eta_(std::move(eta)), coeffs_(std::move(coeffs)) {}

    static DiskSkewPoly constant(const MobiusMap& eta, DiskCoefFn f) { return {eta, {std::move(f)}}; }
    static DiskSkewPoly shift(const MobiusMap& eta) {
        return {eta, {DiskCoefFn::constant(0.0), DiskCoefFn::constant(1.0)}};
    }

    const MobiusMap& map() const noexcept { return eta_; }
    const std::vector<DiskCoefFn>& coeffs() const noexcept { return coeffs_; }

private:
    MobiusMap eta_;
    std::vector<DiskCoefFn> coeffs_;
};

/// g o eta^(k).
inline DiskCoefFn compose(const DiskCoefFn& g, const MobiusMap& eta, std::size_t k) {
    if (k == 0) return g;
    return DiskCoefFn([g, eta, k](Jet z) {
        for (std::size_t i = 0; i < k; ++i) z = eta.apply(z);
        return g(z);
    });
}

inline DiskSkewPoly skew_mul(const DiskSkewPoly& p, const DiskSkewPoly& q) {
    if (!p.map().approx_equal(q.map(), 0.0))
        throw Error(ErrorCode::SystemMismatch, "disk polynomials over different maps");
    const auto& eta = p.map();
    auto coeffs = detail::skew_convolution(
        p.coeffs(), q.coeffs(),
        [&eta](const DiskCoefFn& g, std::size_t k) { return compose(g, eta, k); },
        [](const DiskCoefFn& f, const DiskCoefFn& g) {
            return DiskCoefFn([f, g](Jet z) { return f(z) * g(z); });
        },
        [](const DiskCoefFn& f, const DiskCoefFn& g) {
            return DiskCoefFn([f, g](Jet z) { return f(z) + g(z); });
        });
    return {eta, std::move(coeffs)};
}

} // namespace conjalg
