#pragma once

// Finite dynamical systems (X, eta) with X = {0, ..., n-1}: orbit structure,
// a complete conjugacy invariant, and witness construction.

#include "conjalg/error.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace conjalg {

using Point = std::size_t;

class FiniteDynSys {
public:
    explicit FiniteDynSys(std::vector<Point> map) : map_(std::move(map)) {
        if (map_.empty())
            throw Error(ErrorCode::InvalidSystem, "system must have at least one point");
        for (std::size_t i = 0; i < map_.size(); ++i) {
            if (map_[i] >= map_.size())
                throw Error(ErrorCode::InvalidSystem,
                            "map[" + std::to_string(i) + "] = " + std::to_string(map_[i]) +
                                " is out of range");
        }
    }

    static FiniteDynSys identity(std::size_t n) {
        std::vector<Point> m(n);
        std::iota(m.begin(), m.end(), Point{0});
        return FiniteDynSys(std::move(m));
    }

    std::size_t size() const noexcept { return map_.size(); }
    std::span<const Point> map() const noexcept { return map_; }

    Point operator()(Point x) const { return map_[x]; }

    /// k-fold composition eta^(k)(x).
    Point iterate(Point x, std::size_t k) const {
        for (std::size_t i = 0; i < k; ++i) x = map_[x];
        return x;
    }

    bool is_fixed(Point x) const { return map_[x] == x; }

    friend bool operator==(const FiniteDynSys&, const FiniteDynSys&) = default;

private:
    std::vector<Point> map_;
};

/// A bijection sigma with sigma(eta1(i)) = eta2(sigma(i)).
struct ConjugacyWitness {
    std::vector<Point> bijection;

    Point operator()(Point x) const { return bijection[x]; }

    std::size_t size() const noexcept { return bijection.size(); }

    bool is_permutation() const {
        std::vector<bool> seen(bijection.size(), false);
        for (Point p : bijection) {
            if (p >= bijection.size() || seen[p]) return false;
            seen[p] = true;
        }
        return true;
    }

    ConjugacyWitness inverse() const {
        std::vector<Point> inv(bijection.size());
        for (std::size_t i = 0; i < bijection.size(); ++i) inv[bijection[i]] = i;
        return {std::move(inv)};
    }

    static ConjugacyWitness identity(std::size_t n) {
        std::vector<Point> id(n);
        std::iota(id.begin(), id.end(), Point{0});
        return {std::move(id)};
    }

    friend bool operator==(const ConjugacyWitness&, const ConjugacyWitness&) = default;
};

/// Direct composition check of the witness relation.
inline bool is_witness(const ConjugacyWitness& w, const FiniteDynSys& a, const FiniteDynSys& b) {
    if (w.size() != a.size() || a.size() != b.size() || !w.is_permutation()) return false;
    for (Point i = 0; i < a.size(); ++i) {
        if (w(a(i)) != b(w(i))) return false;
    }
    return true;
}

/// Relabels sys by sigma: the result is sigma . eta . sigma^{-1}.
inline FiniteDynSys relabel(const FiniteDynSys& sys, const ConjugacyWitness& sigma) {
    if (sigma.size() != sys.size() || !sigma.is_permutation())
        throw Error(ErrorCode::InvalidWitness, "relabeling is not a permutation of the system");
    std::vector<Point> m(sys.size());
    for (Point i = 0; i < sys.size(); ++i) m[sigma(i)] = sigma(sys(i));
    return FiniteDynSys(std::move(m));
}

inline std::vector<Point> fixed_points(const FiniteDynSys& sys) {
    std::vector<Point> out;
    for (Point i = 0; i < sys.size(); ++i) {
        if (sys.is_fixed(i)) out.push_back(i);
    }
    return out;
}

struct OrbitStructure {
    /// Each cycle rotated to start at its smallest element; cycles sorted by that element.
    std::vector<std::vector<Point>> cycles;
    /// trees[c][j]: canonical encoding of the in-tree of pre-periodic points hanging off cycles[c][j].
    std::vector<std::vector<std::string>> trees;
};

namespace detail {

struct TreeData {
    std::vector<bool> on_cycle;
    std::vector<std::vector<Point>> children; // non-cycle preimages only
    std::vector<std::string> encoding;        // AHU encoding of the subtree at each point
};

inline std::vector<bool> cycle_points(const FiniteDynSys& sys) {
    const std::size_t n = sys.size();
    // 0 = unvisited, 1 = on current walk, 2 = finished
    std::vector<unsigned char> state(n, 0);
    std::vector<bool> on_cycle(n, false);
    std::vector<Point> walk;
    for (Point start = 0; start < n; ++start) {
        if (state[start] != 0) continue;
        walk.clear();
        Point x = start;
        while (state[x] == 0) {
            state[x] = 1;
            walk.push_back(x);
            x = sys(x);
        }
        if (state[x] == 1) {
            Point y = x;
            do {
                on_cycle[y] = true;
                y = sys(y);
            } while (y != x);
        }
        for (Point p : walk) state[p] = 2;
    }
    return on_cycle;
}

inline TreeData tree_data(const FiniteDynSys& sys) {
    const std::size_t n = sys.size();
    TreeData td;
    td.on_cycle = cycle_points(sys);
    td.children.assign(n, {});
    for (Point i = 0; i < n; ++i) {
        if (!td.on_cycle[i]) td.children[sys(i)].push_back(i);
    }

    // Depth from the cycle; encodings are built deepest-first so no recursion is needed.
    std::vector<std::size_t> depth(n, 0);
    std::vector<Point> order;
    order.reserve(n);
    for (Point i = 0; i < n; ++i) {
        if (td.on_cycle[i]) order.push_back(i);
    }
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (Point c : td.children[order[head]]) {
            depth[c] = depth[order[head]] + 1;
            order.push_back(c);
        }
    }

    td.encoding.assign(n, {});
    std::vector<std::string> parts;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Point v = *it;
        parts.clear();
        for (Point c : td.children[v]) parts.push_back(td.encoding[c]);
        std::sort(parts.begin(), parts.end());
        std::string enc = "(";
        for (const auto& s : parts) enc += s;
        enc += ")";
        td.encoding[v] = std::move(enc);
    }
    return td;
}

/// Index of the lexicographically least rotation of seq (first one on ties).
inline std::size_t least_rotation(const std::vector<std::string>& seq) {
    const std::size_t len = seq.size();
    std::size_t best = 0;
    for (std::size_t r = 1; r < len; ++r) {
        for (std::size_t k = 0; k < len; ++k) {
            const auto& lhs = seq[(r + k) % len];
            const auto& rhs = seq[(best + k) % len];
            if (lhs < rhs) {
                best = r;
                break;
            }
            if (rhs < lhs) break;
        }
    }
    return best;
}

struct CanonicalCycle {
    std::string key;
    std::vector<Point> points; // rotated so the least encoding sequence leads
};

inline std::vector<CanonicalCycle> canonical_cycles(const FiniteDynSys& sys, const TreeData& td) {
    std::vector<CanonicalCycle> out;
    std::vector<bool> seen(sys.size(), false);
    for (Point i = 0; i < sys.size(); ++i) {
        if (!td.on_cycle[i] || seen[i]) continue;
        std::vector<Point> cyc;
        Point x = i;
        do {
            seen[x] = true;
            cyc.push_back(x);
            x = sys(x);
        } while (x != i);

        std::vector<std::string> encs;
        encs.reserve(cyc.size());
        for (Point p : cyc) encs.push_back(td.encoding[p]);
        const std::size_t shift = least_rotation(encs);
        std::rotate(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(shift), cyc.end());

        std::string key = "C" + std::to_string(cyc.size()) + "[";
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            if (k) key += ",";
            key += td.encoding[cyc[k]];
        }
        key += "]";
        out.push_back({std::move(key), std::move(cyc)});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const CanonicalCycle& l, const CanonicalCycle& r) { return l.key < r.key; });
    return out;
}

} // namespace detail

inline OrbitStructure orbit_structure(const FiniteDynSys& sys) {
    const auto td = detail::tree_data(sys);
    OrbitStructure os;
    std::vector<bool> seen(sys.size(), false);
    for (Point i = 0; i < sys.size(); ++i) {
        if (!td.on_cycle[i] || seen[i]) continue;
        // i is the smallest point of its cycle because we scan in increasing order.
        std::vector<Point> cyc;
        std::vector<std::string> trees;
        Point x = i;
        do {
            seen[x] = true;
            cyc.push_back(x);
            trees.push_back(td.encoding[x]);
            x = sys(x);
        } while (x != i);
        os.cycles.push_back(std::move(cyc));
        os.trees.push_back(std::move(trees));
    }
    return os;
}

/// Complete conjugacy invariant: sorted multiset of cycle keys, each key being the
/// cycle length plus the least rotation of its rooted-tree encodings.
inline std::string canonical_form(const FiniteDynSys& sys) {
    const auto td = detail::tree_data(sys);
    const auto cycles = detail::canonical_cycles(sys, td);
    std::string out = "n" + std::to_string(sys.size()) + ":";
    for (const auto& c : cycles) out += c.key;
    return out;
}

inline std::optional<ConjugacyWitness> are_conjugate(const FiniteDynSys& a, const FiniteDynSys& b) {
    if (a.size() != b.size()) return std::nullopt;
    const auto ta = detail::tree_data(a);
    const auto tb = detail::tree_data(b);
    const auto ca = detail::canonical_cycles(a, ta);
    const auto cb = detail::canonical_cycles(b, tb);
    if (ca.size() != cb.size()) return std::nullopt;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (ca[i].key != cb[i].key) return std::nullopt;
    }

    std::vector<Point> sigma(a.size(), a.size());
    std::vector<std::pair<Point, Point>> stack;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        for (std::size_t k = 0; k < ca[i].points.size(); ++k)
            stack.emplace_back(ca[i].points[k], cb[i].points[k]);
    }
    // Matched points have equal encodings, so sorted children pair up one to one.
    auto by_encoding = [](const detail::TreeData& td) {
        return [&td](Point l, Point r) { return td.encoding[l] < td.encoding[r]; };
    };
    while (!stack.empty()) {
        const auto [u, v] = stack.back();
        stack.pop_back();
        sigma[u] = v;
        auto cu = ta.children[u];
        auto cv = tb.children[v];
        std::sort(cu.begin(), cu.end(), by_encoding(ta));
        std::sort(cv.begin(), cv.end(), by_encoding(tb));
        for (std::size_t k = 0; k < cu.size(); ++k) stack.emplace_back(cu[k], cv[k]);
    }
    return ConjugacyWitness{std::move(sigma)};
}

inline constexpr std::size_t kBruteForceLimit = 9;

/// Exhaustive search over all bijections. Oracle scale only.
inline std::optional<ConjugacyWitness> brute_force_conjugate(const FiniteDynSys& a,
                                                             const FiniteDynSys& b) {
    if (a.size() != b.size()) return std::nullopt;
    if (a.size() > kBruteForceLimit)
        throw Error(ErrorCode::OracleBound, "brute force search refused for n = " +
                                                std::to_string(a.size()) + " > " +
                                                std::to_string(kBruteForceLimit));
    auto w = ConjugacyWitness::identity(a.size());
    do {
        if (is_witness(w, a, b)) return w;
    } while (std::next_permutation(w.bijection.begin(), w.bijection.end()));
    return std::nullopt;
}

} // namespace conjalg
