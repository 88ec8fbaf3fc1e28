#include "toric/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace toric {

namespace detail {

namespace {

struct Facet {
    std::vector<std::size_t> verts;  // sorted
    LatticePoint normal;
    Integer offset;
};

Integer dot(const LatticePoint& a, const LatticePoint& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
    return s;
}

// Normal of the hyperplane through k points of Z^k, via signed maximal
// minors of the difference vectors.
LatticePoint hyperplane_normal(std::span<const LatticePoint> pts, const std::vector<std::size_t>& verts, std::size_t k) {
    LatticePoint normal(k);
    const LatticePoint& origin = pts[verts[0]];
    for (std::size_t j = 0; j < k; ++j) {
        IntegerMatrix minor(k - 1, k - 1);
        for (std::size_t r = 1; r < k; ++r) {
            LatticePoint v = pts[verts[r]] - origin;
            for (std::size_t c = 0, cc = 0; c < k; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = v[c];
            }
        }
        Integer d = determinant(minor);
        normal[j] = (j % 2 == 0) ? d : Integer(-d);
    }
    return normal;
}

Facet make_facet(std::span<const LatticePoint> pts, std::vector<std::size_t> verts, std::size_t k,
                 const LatticePoint& interior_sum, const Integer& interior_weight) {
    std::sort(verts.begin(), verts.end());
    Facet f{std::move(verts), {}, {}};
    f.normal = hyperplane_normal(pts, f.verts, k);
    f.offset = dot(f.normal, pts[f.verts[0]]);
    if (dot(f.normal, interior_sum) > f.offset * interior_weight) {
        f.normal = Integer(-1) * f.normal;
        f.offset = -f.offset;
    }
    return f;
}

}  // namespace

PlacingTriangulation placing_triangulation(std::span<const LatticePoint> pts, std::size_t k) {
    PlacingTriangulation out;
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });

    // Initial simplex: first affinely independent points in lexicographic order.
    std::vector<std::size_t> simplex{order[0]};
    std::vector<LatticePoint> diffs;
    std::vector<bool> used(pts.size(), false);
    used[order[0]] = true;
    for (std::size_t idx = 1; idx < order.size() && simplex.size() < k + 1; ++idx) {
        diffs.push_back(pts[order[idx]] - pts[order[0]]);
        if (span_rank(k, diffs) == simplex.size()) {
            simplex.push_back(order[idx]);
            used[order[idx]] = true;
        } else {
            diffs.pop_back();
        }
    }
    if (simplex.size() != k + 1) throw std::invalid_argument("placing triangulation needs a full-dimensional configuration");

    LatticePoint interior_sum(k);
    for (std::size_t v : simplex) interior_sum += pts[v];
    const Integer weight = static_cast<unsigned long>(k + 1);

    out.simplices.push_back(simplex);
    std::vector<Facet> boundary;
    for (std::size_t drop = 0; drop <= k; ++drop) {
        std::vector<std::size_t> verts;
        for (std::size_t i = 0; i <= k; ++i)
            if (i != drop) verts.push_back(simplex[i]);
        boundary.push_back(make_facet(pts, std::move(verts), k, interior_sum, weight));
    }

    for (std::size_t idx : order) {
        if (used[idx]) continue;
        const LatticePoint& p = pts[idx];
        std::vector<std::size_t> visible;
        for (std::size_t f = 0; f < boundary.size(); ++f)
            if (dot(boundary[f].normal, p) > boundary[f].offset) visible.push_back(f);
        if (visible.empty()) continue;

        std::map<std::vector<std::size_t>, int> ridges;
        for (std::size_t f : visible) {
            auto cell = boundary[f].verts;
            cell.push_back(idx);
            out.simplices.push_back(std::move(cell));
            const auto& verts = boundary[f].verts;
            for (std::size_t drop = 0; drop < verts.size(); ++drop) {
                std::vector<std::size_t> ridge;
                for (std::size_t i = 0; i < verts.size(); ++i)
                    if (i != drop) ridge.push_back(verts[i]);
                ++ridges[ridge];
            }
        }
        std::vector<bool> gone(boundary.size(), false);
        for (std::size_t f : visible) gone[f] = true;
        std::vector<Facet> next;
        next.reserve(boundary.size() + ridges.size());
        for (std::size_t f = 0; f < boundary.size(); ++f)
            if (!gone[f]) next.push_back(std::move(boundary[f]));
        for (auto& [ridge, count] : ridges) {
            if (count != 1) continue;
            auto verts = ridge;
            verts.push_back(idx);
            next.push_back(make_facet(pts, std::move(verts), k, interior_sum, weight));
        }
        boundary = std::move(next);
    }

    for (auto& f : boundary) out.boundary.emplace_back(std::move(f.normal), std::move(f.offset));
    return out;
}

}  // namespace detail

namespace {

struct HullInfo {
    std::vector<LatticePoint> vertices;  // lexicographic
    Integer volume;                      // w.r.t. the ambient lattice
};

Integer simplex_volume(std::span<const LatticePoint> pts, const std::vector<std::size_t>& cell, std::size_t k) {
    IntegerMatrix m(k, k);
    for (std::size_t r = 1; r <= k; ++r) {
        LatticePoint v = pts[cell[r]] - pts[cell[0]];
        for (std::size_t c = 0; c < k; ++c) m(r - 1, c) = v[c];
    }
    return abs(determinant(m));
}

// Vertex test against the boundary hyperplanes of a full-dimensional
// configuration: p is a vertex iff the normals of the hyperplanes through p
// span the whole space.
std::vector<bool> vertex_mask(std::span<const LatticePoint> pts, const detail::PlacingTriangulation& tri, std::size_t k) {
    std::vector<bool> mask(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<LatticePoint> normals;
        for (const auto& [normal, offset] : tri.boundary) {
            Integer s = 0;
            for (std::size_t c = 0; c < k; ++c) s += normal[c] * pts[i][c];
            if (s == offset) normals.push_back(normal);
        }
        mask[i] = !normals.empty() && span_rank(k, normals) == k;
    }
    return mask;
}

HullInfo analyze(const PointSet& set) {
    const std::size_t n = set.ambient_rank();
    const std::size_t k = dim_of_set(set);
    HullInfo info;
    if (k == 0) {
        info.vertices = {set[0]};
        info.volume = n == 0 ? 1 : 0;
        return info;
    }
    std::vector<LatticePoint> coords;
    if (k == n) {
        coords = set.points();
    } else {
        Sublattice span(n, difference_generators(set));
        AdaptedBasis basis(saturation(span));
        const auto& base = set.min_point();
        for (const auto& p : set) coords.push_back(basis.inner(p - base));
    }
    auto tri = detail::placing_triangulation(coords, k);
    auto mask = vertex_mask(coords, tri, k);
    for (std::size_t i = 0; i < set.size(); ++i)
        if (mask[i]) info.vertices.push_back(set[i]);
    std::sort(info.vertices.begin(), info.vertices.end());
    info.volume = 0;
    if (k == n)
        for (const auto& cell : tri.simplices) info.volume += simplex_volume(coords, cell, k);
    return info;
}

}  // namespace

LatticePolytope convex_hull(const PointSet& set) {
    auto info = analyze(set);
    return LatticePolytope(PointSet(set.ambient_rank(), std::move(info.vertices)), dim_of_set(set));
}

Integer lattice_volume(const PointSet& set) { return analyze(set).volume; }

Integer mixed_volume(std::span<const PointSet> sets) {
    const std::size_t n = sets.size();
    for (const auto& s : sets)
        if (s.ambient_rank() != n)
            throw RankMismatch("mixed volume needs n sets of ambient rank n");
    if (n == 0) return 1;
    if (n > 20) throw std::invalid_argument("mixed volume arity too large");

    std::vector<PointSet> hulls;
    hulls.reserve(n);
    for (const auto& s : sets) hulls.push_back(PointSet(n, analyze(s).vertices));

    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::vector<LatticePoint>> partial(subsets);
    Integer total = 0;
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
        std::size_t rest = mask & (mask - 1);
        HullInfo info;
        if (rest == 0) {
            info = analyze(hulls[low]);
        } else {
            info = analyze(minkowski_sum(PointSet(n, partial[rest]), hulls[low]));
        }
        partial[mask] = std::move(info.vertices);
        const std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
        if ((n - size) % 2 == 0)
            total += info.volume;
        else
            total -= info.volume;
    }
    Integer factorial = 1;
    for (std::size_t i = 2; i <= n; ++i) factorial *= static_cast<unsigned long>(i);
    if (!mpz_divisible_p(total.get_mpz_t(), factorial.get_mpz_t()))
        throw std::logic_error("mixed volume: inclusion-exclusion sum not divisible by n!");
    Integer result = total / factorial;
    if (result < 0) throw std::logic_error("mixed volume: negative result");
    return result;
}

Integer bkk_count(std::span<const PointSet> supports) {
    if (supports.empty()) throw std::invalid_argument("empty family");
    const std::size_t n = supports[0].ambient_rank();
    if (supports.size() != n)
        throw std::invalid_argument("root count needs a square family: " + std::to_string(supports.size()) +
                                    " supports in rank " + std::to_string(n));
    return mixed_volume(supports);
}

}  // namespace toric
