#pragma once

// Mobius self-maps of the closed unit disk: classification, normal forms, and the
// analytic conjugacy / semicrossed-product isomorphism decisions.

#include "conjalg/error.hpp"
#include "conjalg/mobius.hpp"
#include "conjalg/numeric.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace conjalg {

inline constexpr std::size_t kBoundaryProbes = 720;
inline constexpr std::size_t kInteriorProbes = 360;
inline constexpr double kWitnessTolerance = 1e-9;

/// Equally spaced points on the unit circle.
inline std::vector<Complex> boundary_probe(std::size_t count = kBoundaryProbes) {
    std::vector<Complex> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        out.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                          static_cast<double>(count)));
    return out;
}

/// Golden-angle spiral filling the disk of the given radius.
inline std::vector<Complex> disk_samples(std::size_t count, double radius = 0.95) {
    constexpr double golden = 2.399963229728653; // pi (3 - sqrt 5)
    std::vector<Complex> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double r = radius * std::sqrt((static_cast<double>(k) + 0.5) / static_cast<double>(count));
        out.push_back(std::polar(r, golden * static_cast<double>(k)));
    }
    return out;
}

inline std::vector<Complex> interior_probe(std::size_t count = kInteriorProbes) {
    return disk_samples(count, 0.99);
}

/// Max |m(z)| over the probe grid (boundary plus interior).
inline double probe_max_modulus(const MobiusMap& m) {
    double best = 0.0;
    for (auto z : boundary_probe()) best = std::max(best, std::abs(m(z)));
    for (auto z : interior_probe()) best = std::max(best, std::abs(m(z)));
    return best;
}

struct ImageDisk {
    Complex center;
    double radius;
};

/// Image of the closed unit disk; nullopt when the pole lies in the closed disk.
inline std::optional<ImageDisk> image_of_unit_disk(const MobiusMap& m) {
    const double dd = std::norm(m.d()) - std::norm(m.c());
    if (dd <= 1e-14 * (std::norm(m.d()) + std::norm(m.c()))) return std::nullopt;
    return ImageDisk{(m.b() * std::conj(m.d()) - m.a() * std::conj(m.c())) / dd, 1.0 / dd};
}

inline bool is_disk_self_map(const MobiusMap& m, double tol = kDefaultTolerance) {
    const auto img = image_of_unit_disk(m);
    return img && std::abs(img->center) + img->radius <= 1.0 + tol;
}

inline bool is_disk_automorphism(const MobiusMap& m, double tol = kDefaultTolerance) {
    const auto img = image_of_unit_disk(m);
    return img && std::abs(img->center) <= tol && std::abs(img->radius - 1.0) <= tol;
}

enum class DiskKind {
    Identity,
    EllipticAutomorphism,
    Parabolic,
    Hyperbolic,
    EllipticNonAutomorphism,
    NonEllipticNonAutomorphism,
};

inline std::string_view to_string(DiskKind k) {
    switch (k) {
    case DiskKind::Identity: return "Identity";
    case DiskKind::EllipticAutomorphism: return "EllipticAutomorphism";
    case DiskKind::Parabolic: return "Parabolic";
    case DiskKind::Hyperbolic: return "Hyperbolic";
    case DiskKind::EllipticNonAutomorphism: return "EllipticNonAutomorphism";
    case DiskKind::NonEllipticNonAutomorphism: return "NonElliptic-NonAutomorphism";
    }
    return "Unknown";
}

inline bool is_elliptic(DiskKind k) {
    return k == DiskKind::EllipticAutomorphism || k == DiskKind::EllipticNonAutomorphism;
}

enum class Location { Interior, Boundary, Exterior, Infinity };

inline std::string_view to_string(Location l) {
    switch (l) {
    case Location::Interior: return "interior";
    case Location::Boundary: return "boundary";
    case Location::Exterior: return "exterior";
    case Location::Infinity: return "infinity";
    }
    return "unknown";
}

struct FixedPoint {
    Complex z{};                // unused when location is Infinity
    Location location = Location::Exterior;
    Complex multiplier{};
};

struct DiskClassification {
    DiskKind kind = DiskKind::Identity;
    std::vector<FixedPoint> fixed_points;
    /// Index into fixed_points of the distinguished point: the interior one for
    /// elliptic maps, the attracting (Denjoy-Wolff) boundary point otherwise.
    std::optional<std::size_t> distinguished;
    Complex multiplier{1.0};

    const FixedPoint& distinguished_point() const { return fixed_points.at(distinguished.value()); }
};

namespace detail {

inline Location locate(Complex z, double tol) {
    const double r = std::abs(z);
    if (r < 1.0 - tol) return Location::Interior;
    if (r <= 1.0 + tol) return Location::Boundary;
    return Location::Exterior;
}

inline std::vector<FixedPoint> fixed_points(const MobiusMap& m, double tol) {
    const double scale = std::max({std::abs(m.a()), std::abs(m.b()), std::abs(m.c()), std::abs(m.d())});
    std::vector<FixedPoint> out;
    auto finite = [&](Complex z) {
        out.push_back({z, locate(z, tol), m.derivative(z)});
    };
    if (std::abs(m.c()) <= 1e-14 * scale) {
        out.push_back({Complex{}, Location::Infinity, m.d() / m.a()});
        if (std::abs(m.d() - m.a()) > 1e-14 * scale) finite(m.b() / (m.d() - m.a()));
        return out;
    }
    // c z^2 + (d - a) z - b = 0; discriminant (a + d)^2 - 4 for det 1.
    const Complex disc = m.trace() * m.trace() - 4.0;
    if (std::abs(disc) <= 1e-10) {
        finite((m.a() - m.d()) / (2.0 * m.c()));
        return out;
    }
    const Complex root = std::sqrt(disc);
    finite((m.a() - m.d() + root) / (2.0 * m.c()));
    finite((m.a() - m.d() - root) / (2.0 * m.c()));
    return out;
}

} // namespace detail

inline DiskClassification classify(const MobiusMap& m, double tol = kDefaultTolerance) {
    if (!is_disk_self_map(m, tol))
        throw Error(ErrorCode::NotDiskSelfMap, "map does not send the closed disk into itself");
    DiskClassification out;
    if (m.is_identity(tol)) {
        out.kind = DiskKind::Identity;
        return out;
    }
    out.fixed_points = detail::fixed_points(m, tol);
    const bool automorphism = is_disk_automorphism(m, tol);

    std::optional<std::size_t> interior;
    std::vector<std::size_t> boundary;
    for (std::size_t i = 0; i < out.fixed_points.size(); ++i) {
        if (out.fixed_points[i].location == Location::Interior) interior = i;
        if (out.fixed_points[i].location == Location::Boundary) boundary.push_back(i);
    }

    if (interior) {
        out.kind = automorphism ? DiskKind::EllipticAutomorphism : DiskKind::EllipticNonAutomorphism;
        out.distinguished = interior;
    } else if (boundary.empty()) {
        throw Error(ErrorCode::NotDecidable, "no fixed point located in the closed disk");
    } else {
        std::size_t best = boundary.front();
        for (auto i : boundary) {
            if (std::abs(out.fixed_points[i].multiplier) < std::abs(out.fixed_points[best].multiplier))
                best = i;
        }
        out.distinguished = best;
        if (!automorphism)
            out.kind = DiskKind::NonEllipticNonAutomorphism;
        else if (boundary.size() == 1)
            out.kind = DiskKind::Parabolic;
        else
            out.kind = DiskKind::Hyperbolic;
    }
    out.multiplier = out.distinguished_point().multiplier;
    return out;
}

struct NormalForm {
    DiskKind kind = DiskKind::Identity;
    /// Conjugating map taking the distinguished fixed point to 0 (elliptic, a disk
    /// automorphism) or to infinity in the upper half plane (non-elliptic).
    MobiusMap normalizer = MobiusMap::identity();
    /// normalizer o m o normalizer^{-1}.
    MobiusMap normalized = MobiusMap::identity();

    // Elliptic: normalized map is z -> lambda z / (1 - kappa z).
    Complex lambda{1.0};
    Complex kappa{};
    double kappa_modulus = 0.0;
    // Hyperbolic: multiplier at the attracting fixed point, in (0, 1).
    double dilation_ratio = 0.0;
    // Parabolic: sign of the half-plane translation w -> w + t.
    int translation_sign = 0;
    // Non-elliptic kinds: normalized map is w -> alpha w + beta on the upper half plane.
    double alpha = 1.0;
    Complex beta{};
    double beta_arg = 0.0; // meaningful when alpha == 1
};

inline NormalForm normal_form(const MobiusMap& m, double tol = kDefaultTolerance) {
    const auto cls = classify(m, tol);
    NormalForm nf;
    nf.kind = cls.kind;
    if (cls.kind == DiskKind::Identity) return nf;

    const auto& fp = cls.distinguished_point();
    if (is_elliptic(cls.kind)) {
        nf.normalizer = MobiusMap::disk_automorphism(fp.z);
        nf.normalized = conjugate_by(nf.normalizer, m);
        nf.lambda = nf.normalized.a() / nf.normalized.d();
        nf.kappa = -nf.normalized.c() / nf.normalized.d();
        nf.kappa_modulus = std::abs(nf.kappa);
        return nf;
    }

    // Rotate the Denjoy-Wolff point to 1, then send 1 to infinity in the upper half plane.
    nf.normalizer = compose(MobiusMap::cayley_upper(), MobiusMap::dilation(std::conj(fp.z)));
    nf.normalized = conjugate_by(nf.normalizer, m);
    nf.alpha = (nf.normalized.a() / nf.normalized.d()).real();
    nf.beta = nf.normalized.b() / nf.normalized.d();
    nf.beta_arg = std::arg(nf.beta);
    if (cls.kind == DiskKind::Hyperbolic) nf.dilation_ratio = std::abs(cls.multiplier);
    if (cls.kind == DiskKind::Parabolic) nf.translation_sign = nf.beta.real() > 0.0 ? 1 : -1;
    return nf;
}

inline bool same_class(const NormalForm& l, const NormalForm& r, double tol = kDefaultTolerance) {
    if (l.kind != r.kind) return false;
    switch (l.kind) {
    case DiskKind::Identity: return true;
    case DiskKind::EllipticAutomorphism:
    case DiskKind::EllipticNonAutomorphism:
        return std::abs(l.lambda - r.lambda) <= tol && std::abs(l.kappa_modulus - r.kappa_modulus) <= tol;
    case DiskKind::Hyperbolic: return std::abs(l.dilation_ratio - r.dilation_ratio) <= tol;
    case DiskKind::Parabolic: return l.translation_sign == r.translation_sign;
    case DiskKind::NonEllipticNonAutomorphism:
        if (std::abs(l.alpha - r.alpha) > tol * std::max(1.0, l.alpha)) return false;
        if (std::abs(l.alpha - 1.0) <= tol) return std::abs(l.beta_arg - r.beta_arg) <= tol;
        return true;
    }
    return false;
}

using PointMap = std::function<Complex(Complex)>;

/// max over samples of |gamma(m1(z)) - m2(gamma(z))|.
inline double verify_conjugacy_witness(const PointMap& gamma, const MobiusMap& m1, const MobiusMap& m2,
                                       std::span<const Complex> samples) {
    double worst = 0.0;
    for (auto z : samples) worst = std::max(worst, std::abs(gamma(m1(z)) - m2(gamma(z))));
    return worst;
}

inline double verify_conjugacy_witness(const MobiusMap& gamma, const MobiusMap& m1, const MobiusMap& m2,
                                       std::span<const Complex> samples) {
    return verify_conjugacy_witness(PointMap([gamma](Complex z) { return gamma(z); }), m1, m2, samples);
}

/// Probe grid used for Mobius witnesses: the boundary circle plus interior points.
inline std::vector<Complex> witness_probe() {
    auto pts = boundary_probe();
    const auto inner = interior_probe();
    pts.insert(pts.end(), inner.begin(), inner.end());
    return pts;
}

struct ConjugationWitnessMobius {
    MobiusMap gamma;
    double max_deviation = 0.0;
};

namespace detail {

inline MobiusMap elliptic_witness(const NormalForm& n1, const NormalForm& n2, double tol) {
    Complex rho{1.0};
    if (n1.kappa_modulus > tol) rho = n1.kappa / n2.kappa;
    rho /= std::abs(rho);
    return compose(n2.normalizer.inverse(), compose(MobiusMap::dilation(rho), n1.normalizer));
}

/// Real affine g(w) = s w + t with g o (alpha w + beta1) o g^{-1} = alpha w + beta2.
inline MobiusMap half_plane_witness(const NormalForm& n1, const NormalForm& n2, double tol) {
    double s = 1.0;
    double t = 0.0;
    const double alpha = n1.alpha;
    if (std::abs(alpha - 1.0) <= tol) {
        s = std::abs(n2.beta) / std::abs(n1.beta);
    } else {
        if (n1.beta.imag() > tol) s = n2.beta.imag() / n1.beta.imag();
        t = ((n2.beta - s * n1.beta) / (1.0 - alpha)).real();
    }
    const MobiusMap g{s, t, 0.0, 1.0};
    return compose(n2.normalizer.inverse(), compose(g, n1.normalizer));
}

} // namespace detail

/// Decides whether a disk automorphism gamma with gamma o m1 = m2 o gamma exists and
/// constructs one. Returned witnesses pass the probe-grid intertwining check.
inline std::optional<ConjugationWitnessMobius> analytically_conjugate(const MobiusMap& m1, const MobiusMap& m2,
                                                                      double tol = kDefaultTolerance) {
    const auto n1 = normal_form(m1, tol);
    const auto n2 = normal_form(m2, tol);
    if (!same_class(n1, n2, tol)) return std::nullopt;

    MobiusMap gamma = MobiusMap::identity();
    if (n1.kind == DiskKind::Identity)
        gamma = MobiusMap::identity();
    else if (is_elliptic(n1.kind))
        gamma = detail::elliptic_witness(n1, n2, tol);
    else
        gamma = detail::half_plane_witness(n1, n2, tol);

    if (!is_disk_automorphism(gamma, 1e-8)) return std::nullopt;
    const auto probe = witness_probe();
    const double dev = verify_conjugacy_witness(gamma, m1, m2, probe);
    if (!(dev <= kWitnessTolerance)) return std::nullopt;
    return ConjugationWitnessMobius{gamma, dev};
}

enum class IsoVerdict { Conjugate, InverseConjugate, NotIsomorphic };

inline std::string_view to_string(IsoVerdict v) {
    switch (v) {
    case IsoVerdict::Conjugate: return "Conjugate";
    case IsoVerdict::InverseConjugate: return "InverseConjugate";
    case IsoVerdict::NotIsomorphic: return "NotIsomorphic";
    }
    return "Unknown";
}

struct IsoResult {
    IsoVerdict verdict = IsoVerdict::NotIsomorphic;
    std::optional<ConjugationWitnessMobius> witness;
};

/// Isomorphism of the semicrossed products: conjugacy, or for elliptic automorphisms
/// also conjugacy of m2 to m1^{-1}.
inline IsoResult semicrossed_iso_verdict(const MobiusMap& m1, const MobiusMap& m2,
                                         double tol = kDefaultTolerance) {
    if (auto w = analytically_conjugate(m1, m2, tol)) return {IsoVerdict::Conjugate, std::move(w)};
    const auto k1 = classify(m1, tol).kind;
    const auto k2 = classify(m2, tol).kind;
    if (k1 == DiskKind::EllipticAutomorphism && k2 == DiskKind::EllipticAutomorphism) {
        if (auto w = analytically_conjugate(m1, m2.inverse(), tol))
            return {IsoVerdict::InverseConjugate, std::move(w)};
    }
    return {IsoVerdict::NotIsomorphic, std::nullopt};
}

/// Closed-form point maps accepted as witnesses.
namespace gamma_presets {

inline PointMap identity() {
    return [](Complex z) { return z; };
}
/// r e^{i theta} -> r^2 e^{i theta}.
inline PointMap square_radius() {
    return [](Complex z) { return z * std::abs(z); };
}
inline PointMap cayley() {
    return [m = MobiusMap::cayley()](Complex z) { return m(z); };
}

} // namespace gamma_presets

} // namespace conjalg
