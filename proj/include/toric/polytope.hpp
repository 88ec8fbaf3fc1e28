#pragma once

// Lattice polytopes: exact convex hulls, lattice-normalized volume, mixed
// volume and the Kouchnirenko-Bernstein generic root count.

#include "toric/lattice.hpp"

#include <cstddef>
#include <vector>

namespace toric {

/// Convex hull of a point set, stored by its vertices.
class LatticePolytope {
public:
    std::size_t ambient_rank() const { return vertices_.ambient_rank(); }
    const PointSet& vertices() const { return vertices_; }
    std::size_t dimension() const { return dim_; }

private:
    friend LatticePolytope convex_hull(const PointSet& set);
    LatticePolytope(PointSet vertices, std::size_t dim) : vertices_(std::move(vertices)), dim_(dim) {}
    PointSet vertices_;
    std::size_t dim_;
};

/// Exact vertex set of Conv(A). Works for sets of any dimension by passing
/// to lattice coordinates on the affine span first. Vertices are returned
/// in lexicographic order.
LatticePolytope convex_hull(const PointSet& set);

/// n! times the Euclidean volume of Conv(A), n = ambient rank. Zero when A
/// is not full-dimensional.
Integer lattice_volume(const PointSet& set);

/// Mixed volume of n sets of ambient rank n, normalized so that
/// mixed_volume(P, ..., P) == lattice_volume(P).
///
/// Evaluated by inclusion-exclusion over the 2^n - 1 non-empty index subsets
/// (sums of distinct polytopes), so cost grows as 2^n hull computations.
/// Throws std::invalid_argument on arity mismatch and RankMismatch on rank
/// mismatch; std::logic_error if the final division by n! is inexact.
Integer mixed_volume(std::span<const PointSet> sets);

/// Generic number of solutions in the torus of a square system with the
/// given supports.
Integer bkk_count(std::span<const PointSet> supports);

namespace detail {

/// Triangulation of a full-dimensional point configuration in Z^k by
/// incremental placing. Exposed for tests.
struct PlacingTriangulation {
    /// Each simplex lists k + 1 indices into the input.
    std::vector<std::vector<std::size_t>> simplices;
    /// Supporting hyperplanes of the boundary, normal . x <= offset inside.
    std::vector<std::pair<LatticePoint, Integer>> boundary;
};

/// Requires a full-dimensional configuration (affine rank k).
PlacingTriangulation placing_triangulation(std::span<const LatticePoint> points, std::size_t k);

}  // namespace detail

}  // namespace toric
