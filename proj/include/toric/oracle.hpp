#pragma once

// Brute-force verifiers. None of these call into the lattice, polytope,
// Khovanskii or ECI algorithms; they only read the plain data types.

#include "toric/lattice.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric::oracle {

/// F_q with q = p^k, elements as coefficient vectors over F_p modulo a monic
/// irreducible g of degree k. k = 1 is the prime field.
class FiniteField {
public:
    using Elem = std::vector<std::uint64_t>;

    /// Throws std::invalid_argument unless p is a prime below 2^31.
    explicit FiniteField(std::uint64_t p);
    /// `modulus` lists the coefficients of g from the constant term up; it is
    /// made monic. Throws std::invalid_argument if g has degree < 1 or is
    /// reducible over F_p.
    FiniteField(std::uint64_t p, std::vector<std::uint64_t> modulus);

    std::uint64_t characteristic() const { return p_; }
    std::size_t degree() const { return k_; }

    Elem zero() const { return Elem(k_, 0); }
    Elem one() const;
    Elem from_int(long v) const;
    /// Element with F_p-coordinates `coords` (padded with zeros).
    Elem from_coords(std::vector<std::uint64_t> coords) const;

    bool is_zero(const Elem& a) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(Elem a, Integer e) const;
    /// Throws std::domain_error on zero.
    Elem inv(const Elem& a) const;
    /// The unique b with b^p = a.
    Elem pth_root(const Elem& a) const;

    friend bool operator==(const FiniteField&, const FiniteField&) = default;

private:
    std::uint64_t p_;
    std::size_t k_ = 1;
    std::vector<std::uint64_t> g_;  // monic, degree k
};

/// Univariate polynomial over a FiniteField, coefficients from x^0 up.
class PrimeFieldPoly {
public:
    using Elem = FiniteField::Elem;

    PrimeFieldPoly(FiniteField field, std::vector<Elem> coeffs);
    static PrimeFieldPoly from_ints(const FiniteField& field, const std::vector<long>& coeffs);

    const FiniteField& field() const { return field_; }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Elem& coeff(std::size_t i) const { return c_[i]; }
    const std::vector<Elem>& coeffs() const { return c_; }
    /// Largest v with x^v dividing f. Requires f != 0.
    std::size_t valuation() const;

    PrimeFieldPoly derivative() const;
    PrimeFieldPoly monic() const;
    Elem evaluate(const Elem& x) const;

    friend PrimeFieldPoly operator+(const PrimeFieldPoly& a, const PrimeFieldPoly& b);
    friend PrimeFieldPoly operator-(const PrimeFieldPoly& a, const PrimeFieldPoly& b);
    friend PrimeFieldPoly operator*(const PrimeFieldPoly& a, const PrimeFieldPoly& b);
    friend bool operator==(const PrimeFieldPoly& a, const PrimeFieldPoly& b) = default;

    /// a = q b + r with deg r < deg b. Throws std::domain_error if b == 0.
    static void divmod(const PrimeFieldPoly& a, const PrimeFieldPoly& b, PrimeFieldPoly& q, PrimeFieldPoly& r);
    /// Monic gcd; gcd(0, 0) = 0.
    static PrimeFieldPoly gcd(PrimeFieldPoly a, PrimeFieldPoly b);

private:
    void trim();
    FiniteField field_;
    std::vector<Elem> c_;
};

/// Number of distinct roots of f in the algebraic closure, excluding 0.
/// Throws std::invalid_argument on the zero polynomial.
std::size_t count_distinct_roots_closure(const PrimeFieldPoly& f);

/// Distinct nonzero roots in the closure of sum_{a in A} c_a x^a with random
/// nonzero c_a, per trial, for A in Z^1. Trial t is seeded from (seed, t).
std::vector<std::size_t> root_count_1d(const PointSet& a, std::uint64_t p, std::size_t trials, std::uint64_t seed);

/// Largest p^n accepted by the sampler.
inline constexpr std::uint64_t sampler_cap = 10'000'000;

struct SampleStats {
    /// Common zeros in (F_p^*)^n per trial.
    std::vector<std::size_t> counts;
    std::size_t trials_with_zero_count() const;
};

/// Draws nonzero coefficients for every support point in each trial and
/// counts common zeros of the system by enumerating (F_p^*)^n. Trial t uses
/// its own generator seeded from (seed, t). Throws std::invalid_argument if p
/// is not prime or p^n exceeds sampler_cap.
SampleStats sample_common_solutions(std::span<const PointSet> supports, std::uint64_t p, std::size_t trials,
                                    std::uint64_t seed);

struct ResultantStats {
    /// Distinct nonzero roots of Res_y per trial; empty for degenerate trials
    /// (identically zero resultant).
    std::vector<std::optional<std::size_t>> counts;
    std::size_t degenerate() const;
};

/// Resultant in y of two random bivariate polynomials with supports a, b,
/// each first multiplied by a monomial so that every exponent is >= 0.
/// The resultant is found by evaluating the Sylvester determinant at enough
/// points of F_p and interpolating; throws std::invalid_argument when p is
/// not prime or too small for that.
ResultantStats resultant_count_2d(const PointSet& a, const PointSet& b, std::uint64_t p, std::size_t trials,
                                  std::uint64_t seed);

/// Rank by fraction-free elimination with row pivoting.
std::size_t rank_rational(const IntegerMatrix& m);

/// dim(sum_{j in J} A_j) - |J|, with the dimension taken as the rational
/// rank of the stacked differences a - a_0 of every A_j in J; `mask`
/// selects J.
long defect_bruteforce(std::span<const PointSet> supports, std::uint32_t mask);

/// n! vol(conv A), 0 when conv A is not full-dimensional, computed as a sum
/// of pyramids from a rational interior point over the facets, recursively.
Integer volume_by_lattice_triangulation(const PointSet& a);

/// Inclusion-exclusion over volume_by_lattice_triangulation of the Minkowski
/// sums. Exponential in everything; desk-scale inputs only.
Integer mixed_volume_bruteforce(std::span<const PointSet> sets);

/// Result of the exhaustive component count.
struct BruteComponents {
    enum class Kind { Irreducible, Empty, Components } kind = Kind::Irreducible;
    Integer count;  // N, for Components
    std::uint32_t j0 = 0;
    /// Basis of the saturated lattice spanned by the J0 differences.
    std::vector<std::vector<Integer>> lattice_basis;
};

/// Defects over all subsets, J0 as the union of zero-defect subsets, and N as
/// a mixed volume in coordinates of L. Small families only.
BruteComponents component_count_bruteforce(std::span<const PointSet> supports);

/// Rows of x^i d^i/dx^i applied to f = sum a_chi x^chi with symbolic a_chi,
/// i = 0..order, read off as c_i[chi]. Throws std::logic_error if some
/// coefficient is not a multiple of its own a_chi.
std::vector<std::vector<Rational>> symbolic_tower_rows(const PointSet& support, std::size_t variable,
                                                       std::size_t order);

/// Compares symbolic_tower_rows with `rows`.
bool symbolic_tower_check(const PointSet& support, std::size_t variable, std::size_t order,
                          const std::vector<std::vector<Rational>>& rows);
/// Compares against encode_derivative_tower over Q.
bool symbolic_tower_check(const PointSet& support, std::size_t variable, std::size_t order);

}  // namespace toric::oracle
