#pragma once

// Exact integer-lattice arithmetic over M = Z^n: point sets, integer
// matrices, Smith and Hermite normal forms, sublattices and quotients.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when two objects that must live in the same lattice do not.
class RankMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exponent vector of a character of the torus.
class LatticePoint {
public:
    LatticePoint() = default;
    explicit LatticePoint(std::size_t rank) : coords_(rank) {}
    explicit LatticePoint(std::vector<Integer> coords) : coords_(std::move(coords)) {}
    LatticePoint(std::initializer_list<long> coords);

    std::size_t rank() const { return coords_.size(); }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }
    Integer& operator[](std::size_t i) { return coords_[i]; }
    std::span<const Integer> coords() const { return coords_; }

    bool is_zero() const;

    LatticePoint& operator+=(const LatticePoint& other);
    LatticePoint& operator-=(const LatticePoint& other);
    friend LatticePoint operator+(LatticePoint a, const LatticePoint& b) { return a += b; }
    friend LatticePoint operator-(LatticePoint a, const LatticePoint& b) { return a -= b; }
    friend LatticePoint operator*(const Integer& k, LatticePoint a);

    friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
        return a.coords_ == b.coords_;
    }
    /// Lexicographic.
    friend bool operator<(const LatticePoint& a, const LatticePoint& b);

    std::string to_string() const;

private:
    std::vector<Integer> coords_;
};

std::ostream& operator<<(std::ostream& os, const LatticePoint& p);

/// Finite non-empty set of lattice points of a fixed ambient rank.
///
/// Points keep the order in which they were supplied; that order is the
/// column order used by coefficient matrices indexed by the set.
class PointSet {
public:
    /// Throws std::invalid_argument on an empty list or duplicate points and
    /// RankMismatch when a point has the wrong rank.
    PointSet(std::size_t ambient_rank, std::vector<LatticePoint> points);
    PointSet(std::size_t ambient_rank, std::initializer_list<LatticePoint> points)
        : PointSet(ambient_rank, std::vector<LatticePoint>(points)) {}

    /// Like the constructor but silently drops duplicates.
    static PointSet collect(std::size_t ambient_rank, std::vector<LatticePoint> points);

    std::size_t ambient_rank() const { return rank_; }
    std::size_t size() const { return points_.size(); }
    const LatticePoint& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<LatticePoint>& points() const { return points_; }
    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

    bool contains(const LatticePoint& p) const;
    /// Position of p in insertion order; size() if absent.
    std::size_t index_of(const LatticePoint& p) const;
    /// Lexicographically smallest point.
    const LatticePoint& min_point() const;

    PointSet translated(const LatticePoint& shift) const;
    PointSet subset(std::span<const std::size_t> indices) const;
    std::vector<LatticePoint> sorted_points() const;

    /// Set equality, independent of insertion order.
    friend bool operator==(const PointSet& a, const PointSet& b);

private:
    PointSet() = default;
    std::size_t rank_ = 0;
    std::vector<LatticePoint> points_;
};

/// Dense row-major integer matrix.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static IntegerMatrix identity(std::size_t n);
    static IntegerMatrix from_rows(std::size_t cols, std::span<const LatticePoint> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    LatticePoint row(std::size_t r) const;
    IntegerMatrix transposed() const;
    bool is_zero() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += k * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
    /// col[dst] += k * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
    void negate_row(std::size_t r);

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Exact determinant (fraction-free elimination). Square matrices only.
Integer determinant(const IntegerMatrix& a);

struct SmithForm {
    IntegerMatrix U;
    IntegerMatrix D;
    IntegerMatrix V;
    std::size_t rank = 0;
};

/// U * A * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0.
/// Pivots are chosen by smallest absolute value, ties broken by (row, col),
/// so the result is reproducible for a given input.
SmithForm smith_normal_form(const IntegerMatrix& a);

/// Row-style Hermite normal form of the lattice spanned by `rows`: nonzero
/// rows only, echelon, positive pivots, entries above each pivot reduced into
/// [0, pivot).
std::vector<LatticePoint> hermite_basis(std::size_t ambient_rank, std::span<const LatticePoint> rows);

/// Rank of the integer span of `rows`.
std::size_t span_rank(std::size_t ambient_rank, std::span<const LatticePoint> rows);

/// Sublattice of Z^n given by linearly independent generators, stored in
/// Hermite normal form so that equal lattices compare equal.
class Sublattice {
public:
    /// Generators may be dependent or zero; they are reduced to a basis.
    Sublattice(std::size_t ambient_rank, std::span<const LatticePoint> generators);
    static Sublattice full(std::size_t ambient_rank);

    std::size_t ambient_rank() const { return rank_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<LatticePoint>& basis() const { return basis_; }

    bool contains(const LatticePoint& p) const;
    /// M / L is torsion-free.
    bool is_saturated() const;

    friend bool operator==(const Sublattice& a, const Sublattice& b) = default;

private:
    std::size_t rank_ = 0;
    std::vector<LatticePoint> basis_;
};

/// Smallest saturated sublattice containing `lattice`.
Sublattice saturation(const Sublattice& lattice);

/// Coordinates adapted to a saturated sublattice L of rank k.
///
/// With the Smith form U * B * V = D of L's basis B, x * V splits into
/// (coordinates in L, coordinates in M/L). The first k entries are the
/// coordinates of x in the basis given by the first k rows of V^{-1} when
/// x lies in L; the last n - k entries are the image of x in M / L.
class AdaptedBasis {
public:
    explicit AdaptedBasis(const Sublattice& saturated);

    std::size_t sublattice_rank() const { return k_; }
    std::size_t ambient_rank() const { return V_.rows(); }
    /// Rows of V^{-1}: the first k span L, the rest complete a basis of M.
    const IntegerMatrix& basis() const { return Vinv_; }

    /// Coordinates in L. Throws std::invalid_argument if p is not in L.
    LatticePoint inner(const LatticePoint& p) const;
    /// Image in M / L, a point of Z^(n-k).
    LatticePoint outer(const LatticePoint& p) const;

private:
    LatticePoint transform(const LatticePoint& p) const;
    std::size_t k_ = 0;
    IntegerMatrix V_;
    IntegerMatrix Vinv_;
};

/// Rank of the lattice generated by B - B.
std::size_t dim_of_set(const PointSet& set);

/// {a + b : a in A, b in B}, deduplicated.
PointSet minkowski_sum(const PointSet& a, const PointSet& b);

/// {b - b' : b, b' in B}.
PointSet difference_set(const PointSet& set);

/// Differences b - b0 against the lexicographically smallest point; they
/// generate the same lattice as B - B.
std::vector<LatticePoint> difference_generators(const PointSet& set);

/// Images of A under M -> M / L in the adapted basis of L.
/// Throws std::invalid_argument if L is not saturated.
PointSet quotient_project(const PointSet& set, const Sublattice& lattice);

/// Points of A translated by -base and written in the adapted basis of the
/// saturated lattice L. Every a - base must lie in L.
PointSet sublattice_coordinates(const PointSet& set, const LatticePoint& base, const AdaptedBasis& basis);

}  // namespace toric
