#pragma once

// Fractional linear maps z -> (az + b)/(cz + d), stored with determinant 1.

#include "conjalg/error.hpp"
#include "conjalg/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

namespace conjalg {

class MobiusMap {
public:
    /// Normalizes to ad - bc = 1. Of the two square roots the representative with
    /// nonnegative real trace is kept (ties: nonnegative imaginary trace, then the
    /// first nonzero entry with positive real part).
    MobiusMap(Complex a, Complex b, Complex c, Complex d) {
        const Complex det = a * d - b * c;
        const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
        if (!(scale > 0.0) || std::abs(det) <= 1e-14 * scale * scale)
            throw Error(ErrorCode::Singular, "Mobius matrix is singular");
        const Complex s = std::sqrt(det);
        m_ = {a / s, b / s, c / s, d / s};
        if (negative_representative()) {
            for (auto& v : m_) v = -v;
            negated_ = !negated_;
        }
    }

    static MobiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
    /// z -> c z.
    static MobiusMap dilation(Complex lambda) { return {lambda, 0.0, 0.0, 1.0}; }
    /// z -> c z with |c| = 1.
    static MobiusMap rotation(Complex c) {
        if (std::abs(std::abs(c) - 1.0) > kDefaultTolerance)
            throw Error(ErrorCode::InvalidArgument, "rotation parameter must be unimodular");
        return dilation(c);
    }
    /// phi_p(z) = (z - p)/(1 - conj(p) z), the disk automorphism sending p to 0.
    static MobiusMap disk_automorphism(Complex p) {
        if (std::abs(p) >= 1.0)
            throw Error(ErrorCode::InvalidArgument, "automorphism center must lie in the open disk");
        return {1.0, -p, -std::conj(p), 1.0};
    }
    /// z -> (z - t)/(1 - t z) for real t: the hyperbolic pair of the closing remark.
    static MobiusMap real_translation(double t) { return {1.0, -t, -t, 1.0}; }
    static MobiusMap remark_eta1() { return real_translation(0.5); }
    static MobiusMap remark_eta2() { return real_translation(0.25); }
    /// w = (z - 1)/(z + 1): disk onto the left half plane, 1 -> 0, -1 -> infinity.
    static MobiusMap cayley() { return {1.0, -1.0, 1.0, 1.0}; }
    /// w = i(1 + z)/(1 - z): disk onto the upper half plane, 1 -> infinity, -1 -> 0.
    static MobiusMap cayley_upper() { return {Complex{0, 1}, Complex{0, 1}, -1.0, 1.0}; }

    Complex a() const noexcept { return m_[0]; }
    Complex b() const noexcept { return m_[1]; }
    Complex c() const noexcept { return m_[2]; }
    Complex d() const noexcept { return m_[3]; }
    Complex trace() const noexcept { return m_[0] + m_[3]; }
    /// Whether normalization flipped the sign of the determinant-one representative.
    bool negated() const noexcept { return negated_; }

    bool has_pole_at(Complex z) const {
        const Complex den = c() * z + d();
        return std::abs(den) <= 1e-15 * (std::abs(c() * z) + std::abs(d()));
    }

    Complex operator()(Complex z) const {
        if (has_pole_at(z)) throw Error(ErrorCode::Pole, "evaluation at the pole of the map");
        return (a() * z + b()) / (c() * z + d());
    }

    /// Generic evaluation for any field-like scalar (used with jets).
    template <class T>
    T apply(const T& z) const {
        return (a() * z + b()) / (c() * z + d());
    }

    Complex derivative(Complex z) const {
        if (has_pole_at(z)) throw Error(ErrorCode::Pole, "derivative at the pole of the map");
        const Complex den = c() * z + d();
        return 1.0 / (den * den);
    }

    MobiusMap inverse() const { return {d(), -b(), -c(), a()}; }

    /// Projective equality: same map up to the sign of the normalized matrix.
    bool approx_equal(const MobiusMap& o, double tol = kDefaultTolerance) const {
        double plus = 0.0, minus = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            plus = std::max(plus, std::abs(m_[i] - o.m_[i]));
            minus = std::max(minus, std::abs(m_[i] + o.m_[i]));
        }
        return std::min(plus, minus) <= tol;
    }

    bool is_identity(double tol = kDefaultTolerance) const { return approx_equal(identity(), tol); }

    friend std::ostream& operator<<(std::ostream& os, const MobiusMap& m) {
        return os << "[" << m.a() << ", " << m.b() << "; " << m.c() << ", " << m.d() << "]";
    }

private:
    bool negative_representative() const {
        const Complex t = trace();
        if (t.real() != 0.0) return t.real() < 0.0;
        if (t.imag() != 0.0) return t.imag() < 0.0;
        for (const auto& v : m_) {
            if (v.real() != 0.0) return v.real() < 0.0;
            if (v.imag() != 0.0) return v.imag() < 0.0;
        }
        return false;
    }

    std::array<Complex, 4> m_{};
    bool negated_ = false;
};

/// m1 o m2 (matrix product).
inline MobiusMap compose(const MobiusMap& m1, const MobiusMap& m2) {
    return {m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
            m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d()};
}

/// gamma o m o gamma^{-1}.
inline MobiusMap conjugate_by(const MobiusMap& gamma, const MobiusMap& m) {
    return compose(compose(gamma, m), gamma.inverse());
}

} // namespace conjalg
