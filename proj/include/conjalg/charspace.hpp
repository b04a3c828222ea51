#pragma once

// Characters theta_{x,z} of the conjugacy algebra of a finite system and the
// catalog of maximal analytic discs (one disc per fixed point).

#include "conjalg/dynsys.hpp"
#include "conjalg/error.hpp"
#include "conjalg/numeric.hpp"
#include "conjalg/skewpoly.hpp"

#include <vector>

namespace conjalg {

/// theta_{x,z}: p -> sum_n E_n(p)(x) z^n. PointT is a finite index or a disk point.
template <class PointT>
struct BasicCharacter {
    PointT point{};
    Complex disc_param{};

    friend bool operator==(const BasicCharacter&, const BasicCharacter&) = default;
};

using Character = BasicCharacter<Point>;

/// Horner evaluation of sum_n values[n] z^n.
inline Complex power_series(const std::vector<Complex>& values, Complex z) {
    Complex acc{};
    for (auto it = values.rbegin(); it != values.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline Character make_character(const FiniteDynSys& sys, Point x, Complex z) {
    if (x >= sys.size())
        throw Error(ErrorCode::InvalidArgument, "character point out of range");
    if (!sys.is_fixed(x) && z != Complex{})
        throw Error(ErrorCode::NotFixedPoint,
                    "point " + std::to_string(x) + " is not fixed, only z = 0 is allowed");
    return {x, z};
}

inline Complex eval_character(const Character& ch, const SkewPoly& p) {
    const auto& sys = p.system();
    if (ch.point >= sys.size())
        throw Error(ErrorCode::InvalidArgument, "character point out of range");
    if (!sys.is_fixed(ch.point) && ch.disc_param != Complex{})
        throw Error(ErrorCode::NotFixedPoint,
                    "point " + std::to_string(ch.point) + " is not fixed, only z = 0 is allowed");
    std::vector<Complex> values;
    values.reserve(p.coeffs().size());
    for (const auto& f : p.coeffs()) values.push_back(f[ch.point]);
    return power_series(values, ch.disc_param);
}

enum class CatalogKind { Point, Disc };

struct CatalogEntry {
    Point x{};
    CatalogKind kind = CatalogKind::Point;
    double radius = 0.0; // disc radius; zero for Point entries

    friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

struct CharacterCatalog {
    std::vector<CatalogEntry> entries; // indexed by point

    friend bool operator==(const CharacterCatalog&, const CharacterCatalog&) = default;
};

inline CharacterCatalog build_catalog(const FiniteDynSys& sys, double radius = 1.0) {
    if (!(radius > 0.0))
        throw Error(ErrorCode::InvalidArgument, "disc radius must be positive");
    CharacterCatalog cat;
    cat.entries.reserve(sys.size());
    for (Point x = 0; x < sys.size(); ++x) {
        if (sys.is_fixed(x))
            cat.entries.push_back({x, CatalogKind::Disc, radius});
        else
            cat.entries.push_back({x, CatalogKind::Point, 0.0});
    }
    return cat;
}

/// True iff w carries discs to discs (of the same radius) and points to points.
inline bool catalog_equal(const CharacterCatalog& a, const CharacterCatalog& b,
                          const ConjugacyWitness& w) {
    if (a.entries.size() != b.entries.size() || w.size() != a.entries.size() ||
        !w.is_permutation())
        return false;
    for (Point x = 0; x < a.entries.size(); ++x) {
        const auto& ea = a.entries[x];
        const auto& eb = b.entries[w(x)];
        if (ea.kind != eb.kind) return false;
        if (ea.kind == CatalogKind::Disc && ea.radius != eb.radius) return false;
    }
    return true;
}

} // namespace conjalg
