#pragma once

// Concrete representations of the conjugacy algebra: truncated shift models on
// l^2 (norm and spectral-radius estimates) and the three families of 2x2 nest
// representations.

#include "conjalg/charspace.hpp"
#include "conjalg/disk_algebra.hpp"
#include "conjalg/dynsys.hpp"
#include "conjalg/error.hpp"
#include "conjalg/mobius.hpp"
#include "conjalg/numeric.hpp"
#include "conjalg/skewpoly.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace conjalg {

using Matrix = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr std::size_t kDefaultTruncation = 64;

/// Backward: generators pi_x(g) V_x with V_x the backward shift.
/// Forward: generators U_x pi_x(g) with U_x the forward shift; the image of the
/// conjugacy algebra is then the opposite algebra (rho(pq) = rho(q) rho(p)).
enum class Convention { Backward, Forward };

inline std::string_view to_string(Convention c) {
    return c == Convention::Backward ? "backward" : "forward";
}

struct TruncatedRep {
    FiniteDynSys system;
    Point base_point = 0;
    std::size_t trunc = kDefaultTruncation;
    Convention convention = Convention::Backward;

    TruncatedRep(FiniteDynSys sys, Point x, std::size_t n, Convention conv = Convention::Backward)
        : system(std::move(sys)), base_point(x), trunc(n), convention(conv) {
        if (trunc == 0) throw Error(ErrorCode::InvalidArgument, "truncation must be at least 1");
        if (base_point >= system.size())
            throw Error(ErrorCode::InvalidArgument, "base point out of range");
    }
};

struct RepImage {
    Matrix matrix;
    /// Set when the polynomial has terms of degree >= N, which the truncation drops entirely.
    bool truncation_warning = false;
};

inline RepImage rep_matrix(const TruncatedRep& rep, const SkewPoly& p) {
    if (p.system() != rep.system)
        throw Error(ErrorCode::SystemMismatch, "polynomial and representation use different systems");
    const std::size_t n = rep.trunc;
    RepImage out{Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)), false};

    // Orbit x, eta(x), ..., eta^(N-1)(x) gives the diagonal of pi_x(f).
    std::vector<Point> orbit(n);
    Point x = rep.base_point;
    for (std::size_t j = 0; j < n; ++j) {
        orbit[j] = x;
        x = rep.system(x);
    }

    const auto& coeffs = p.coeffs();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k >= n) {
            if (!is_zero(coeffs[k])) out.truncation_warning = true;
            continue;
        }
        // pi_x(f) V^k has entry f(eta^(j)(x)) at (j, j + k).
        for (std::size_t j = 0; j + k < n; ++j) {
            const auto r = static_cast<Eigen::Index>(j);
            const auto c = static_cast<Eigen::Index>(j + k);
            if (rep.convention == Convention::Backward)
                out.matrix(r, c) = coeffs[k][orbit[j]];
            else
                out.matrix(c, r) = coeffs[k][orbit[j]];
        }
    }
    return out;
}

/// Largest singular value.
inline double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

/// Max over base points of the operator norm of the N x N truncation: a lower
/// bound for the algebra norm, nondecreasing in N and in the point set.
inline double norm_estimate(const SkewPoly& p, std::size_t trunc, std::span<const Point> points,
                            Convention conv = Convention::Backward) {
    double best = 0.0;
    for (Point x : points) {
        const TruncatedRep rep(p.system(), x, trunc, conv);
        best = std::max(best, operator_norm(rep_matrix(rep, p).matrix));
    }
    return best;
}

inline std::vector<Point> all_points(const FiniteDynSys& sys) {
    std::vector<Point> pts(sys.size());
    for (Point x = 0; x < sys.size(); ++x) pts[x] = x;
    return pts;
}

struct SpectralRadiusReport {
    std::vector<double> power_norms; // power_norms[n-1] = max_x ||rep(a^n)||
    double estimate = 0.0;           // max_n power_norms[n-1]^(1/n)
};

/// Estimates lim ||a^n||^(1/n) from truncations of size max_power + 1, so that
/// every power up to max_power survives the truncation.
inline SpectralRadiusReport spectral_radius_estimate(const SkewPoly& a, std::span<const Point> points,
                                                     std::size_t max_power,
                                                     Convention conv = Convention::Backward) {
    SpectralRadiusReport out;
    SkewPoly power = SkewPoly::one(a.system());
    for (std::size_t n = 1; n <= max_power; ++n) {
        power = skew_mul(power, a);
        const double nrm = norm_estimate(power, max_power + 1, points, conv);
        out.power_norms.push_back(nrm);
        out.estimate = std::max(out.estimate, std::pow(nrm, 1.0 / static_cast<double>(n)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Nest representations onto the upper triangular 2x2 matrices.

/// rho(f) = diag(f(x), f(eta x)), rho(fU) = [[0, f(x)], [0, 0]], rho(fU^n) = 0 for n >= 2.
struct OffFixedRep {
    FiniteDynSys system;
    Point x;

    Mat2 apply(const SkewPoly& p) const {
        if (p.system() != system)
            throw Error(ErrorCode::SystemMismatch, "polynomial over a different system");
        const auto f0 = coefficient(p, 0);
        const auto f1 = coefficient(p, 1);
        Mat2 m;
        m << f0[x], f1[x], Complex{}, f0[system(x)];
        return m;
    }
};

/// pi_z with pi_z(f) = diag(f(x), f(eta x)) and pi_z(U) = [[0, z], [0, z]],
/// evaluated through the closed-form power series.
struct PencilRep {
    FiniteDynSys system;
    Point x;
    Complex z;
    double radius = 1.0;

    Mat2 apply(const SkewPoly& p) const {
        if (p.system() != system)
            throw Error(ErrorCode::SystemMismatch, "polynomial over a different system");
        const Point y = system(x);
        Complex upper{}, lower{};
        Complex zn{1.0};
        const auto& coeffs = p.coeffs();
        for (std::size_t n = 0; n < coeffs.size(); ++n) {
            if (n >= 1) upper += coeffs[n][x] * zn;
            lower += coeffs[n][y] * zn;
            zn *= z;
        }
        Mat2 m;
        m << coefficient(p, 0)[x], upper, Complex{}, lower;
        return m;
    }

    Mat2 shift_image() const {
        Mat2 m;
        m << Complex{}, z, Complex{}, z;
        return m;
    }
};

/// Continuous rep_{x,x} at an interior fixed point x of a disk map eta:
/// pi(f) = [[f(x), a f'(x)], [0, f(x)]], pi(U) = [[eta'(x) z, 0], [0, z]].
struct FixedDerivativeRep {
    MobiusMap eta;
    Complex x;
    Complex z;
    Complex a;
    Complex multiplier; // eta'(x)

    Mat2 coefficient_image(const DiskCoefFn& f) const {
        const Jet j = f(Jet::variable(x));
        Mat2 m;
        m << j.value, a * j.deriv, Complex{}, j.value;
        return m;
    }

    Mat2 shift_image() const {
        Mat2 m;
        m << multiplier * z, Complex{}, Complex{}, z;
        return m;
    }

    Mat2 apply(const DiskSkewPoly& p) const {
        if (!p.map().approx_equal(eta, 0.0))
            throw Error(ErrorCode::SystemMismatch, "polynomial over a different map");
        Mat2 out = Mat2::Zero();
        Mat2 u_pow = Mat2::Identity();
        const Mat2 u = shift_image();
        for (const auto& f : p.coeffs()) {
            out += coefficient_image(f) * u_pow;
            u_pow = u_pow * u;
        }
        return out;
    }
};

using NestRep = std::variant<OffFixedRep, PencilRep, FixedDerivativeRep>;

inline OffFixedRep build_offfixed(const FiniteDynSys& sys, Point x) {
    if (x >= sys.size()) throw Error(ErrorCode::InvalidArgument, "point out of range");
    if (sys.is_fixed(x))
        throw Error(ErrorCode::FixedPoint, "point " + std::to_string(x) + " is fixed");
    return {sys, x};
}

inline PencilRep build_pencil(const FiniteDynSys& sys, Point x, Complex z, double radius = 1.0) {
    if (x >= sys.size()) throw Error(ErrorCode::InvalidArgument, "point out of range");
    if (sys.is_fixed(x) || !sys.is_fixed(sys(x)))
        throw Error(ErrorCode::NotPreperiodic,
                    "pencils need eta(x) != x and eta(eta(x)) = eta(x) at x = " + std::to_string(x));
    if (!(std::abs(z) < radius))
        throw Error(ErrorCode::OnBoundary, "pencil parameter must satisfy |z| < r");
    return {sys, x, z, radius};
}

inline FixedDerivativeRep build_fixed_derivative(const MobiusMap& eta, Complex x, Complex z, Complex a,
                                                 double radius = 1.0, double tol = kDefaultTolerance) {
    if (!(std::abs(x) < 1.0))
        throw Error(ErrorCode::InvalidArgument, "fixed point must lie in the open disk");
    if (std::abs(eta(x) - x) > tol)
        throw Error(ErrorCode::NotFixedPoint, "x is not a fixed point of the map");
    if (a == Complex{}) throw Error(ErrorCode::InvalidArgument, "off-diagonal parameter a must be nonzero");
    if (!(std::abs(z) < radius))
        throw Error(ErrorCode::OnBoundary, "disc parameter must satisfy |z| < r");
    return {eta, x, z, a, eta.derivative(x)};
}

using DiskCharacter = BasicCharacter<Complex>;

/// sum_n E_n(p)(x) z^n at a fixed point x of the disk map.
inline Complex eval_character(const DiskCharacter& ch, const DiskSkewPoly& p) {
    std::vector<Complex> values;
    values.reserve(p.coeffs().size());
    for (const auto& f : p.coeffs()) values.push_back(f(ch.point));
    return power_series(values, ch.disc_param);
}

/// Diagonal compressions (theta_{pi,1}, theta_{pi,2}).
inline std::pair<Character, Character> extract_characters(const OffFixedRep& r) {
    return {Character{r.x, 0.0}, Character{r.system(r.x), 0.0}};
}

inline std::pair<Character, Character> extract_characters(const PencilRep& r) {
    return {Character{r.x, 0.0}, Character{r.system(r.x), r.z}};
}

inline std::pair<DiskCharacter, DiskCharacter> extract_characters(const FixedDerivativeRep& r) {
    return {DiskCharacter{r.x, r.multiplier * r.z}, DiskCharacter{r.x, r.z}};
}

} // namespace conjalg
