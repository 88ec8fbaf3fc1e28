#pragma once

// Engineered complete intersections c_1 * f = ... = c_d * f = 0: star
// products, adjusted collections and the search for a Khovanskii-satisfying
// adjusted collection that certifies irreducibility.

#include "toric/field.hpp"
#include "toric/khovanskii.hpp"
#include "toric/lattice.hpp"
#include "toric/verdict.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace toric {

/// Rows c_1..c_d of an ECI, indexed by the points of the support in the
/// support's insertion order.
class CoefficientMatrix {
public:
    /// Throws std::invalid_argument if there are no rows or a row has the
    /// wrong length, CharacteristicMismatch if an entry lives in another field.
    CoefficientMatrix(PointSet support, Characteristic ch, std::vector<Row> rows);

    const PointSet& support() const { return support_; }
    Characteristic characteristic() const { return ch_; }
    std::size_t num_rows() const { return rows_.size(); }
    std::size_t num_cols() const { return support_.size(); }
    const std::vector<Row>& rows() const { return rows_; }
    const Row& row(std::size_t i) const { return rows_[i]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return rows_[r][c]; }

private:
    PointSet support_;
    Characteristic ch_;
    std::vector<Row> rows_;
};

/// The rows are linearly dependent; `combination` is a non-trivial vector
/// of row coefficients whose combination vanishes.
class DependentRows : public std::invalid_argument {
public:
    DependentRows(const std::string& what, Row combination)
        : std::invalid_argument(what), combination_(std::move(combination)) {}
    const Row& combination() const { return combination_; }

private:
    Row combination_;
};

/// det of the (d-1)x(d-1) matrix of fibre values vanishes.
class SingularLambda : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// det of the fibre matrix extended by the column of some chi vanishes.
class SingularLambdaChi : public std::domain_error {
public:
    SingularLambdaChi(const std::string& what, std::size_t column) : std::domain_error(what), column_(column) {}
    /// Index of chi in the support.
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

/// A requested fibre of the coefficient functions is empty.
class EmptyFibre : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Entrywise product (c * f)[chi] = c[chi] f[chi].
Row star_product(const Row& c, const Row& f);

/// Both adjustedness conditions, checked literally: row i is nonzero on
/// deltas[i] and zero on every deltas[j] with j < i.
/// Throws std::out_of_range for a wrong number of deltas or a bad column.
bool is_adjusted(const CoefficientMatrix& m, std::span<const std::vector<std::size_t>> deltas);

/// Rows of transform * C.
CoefficientMatrix apply_transform(const CoefficientMatrix& m, const ScalarMatrix& transform);

struct EchelonForm {
    ScalarMatrix transform;  // transform * C == rows
    std::vector<Row> rows;
    std::vector<std::size_t> pivots;  // column indices, increasing in the order
};

/// Reduced row echelon form with columns visited in `order` (a permutation
/// of the column indices, smallest first). Throws DependentRows.
EchelonForm row_echelon(const CoefficientMatrix& m, std::span<const std::size_t> order);

/// Delta_i = { chi : pivot_i <= chi < pivot_{i+1}, c^_i[chi] != 0 } for the
/// echelon rows c^ under `order`.
AdjustedCollection maximal_adjusted_collection(const CoefficientMatrix& m, std::span<const std::size_t> order);

/// Columns chi with c_i[chi] == lambda_i for all i.
std::vector<std::size_t> fibres_of_coefficients(const CoefficientMatrix& m, std::span<const Scalar> lambda);

/// Adjusts c_1..c_d to (fibre(lambda_1), ..., fibre(lambda_{d-1}), last_delta)
/// when the fibre-value matrix and its extensions by each chi in last_delta
/// are non-degenerate. Throws SingularLambda, SingularLambdaChi, EmptyFibre.
AdjustedCollection fibre_adjust(const CoefficientMatrix& m, std::span<const Row> lambdas,
                                std::span<const std::size_t> last_delta);

struct SearchOptions {
    /// Cap on explored states: pivot sequences plus pooled Khovanskii tests.
    std::size_t max_states = 200000;
};

struct SearchStats {
    std::size_t explored_states = 0;
    std::vector<std::size_t> distinct_collections;  // per matrix
};

/// Looks for adjusted collections (one per matrix) whose pooled deltas
/// satisfy the Khovanskii condition. Returns Irreducible with a re-verified
/// certificate, or Inconclusive; never reports reducibility.
///
/// Only maximal collections are tried. For a pivot sequence p_1..p_d with
/// nonsingular minor the maximal collection is unique, so the search runs
/// over ordered pivot sequences (lexicographic in column indices) and drops
/// repeated delta families.
Verdict search_irreducibility_certificate(std::span<const CoefficientMatrix> matrices, const SearchOptions& options = {},
                                          SearchStats* stats = nullptr);

struct CertificateCheck {
    bool valid = false;
    std::string reason;
};

/// Independent re-check: each transform is invertible, the transformed rows
/// are adjusted to the deltas, and the pooled deltas satisfy the Khovanskii
/// condition.
CertificateCheck verify_certificate(std::span<const CoefficientMatrix> matrices, const EciCertificate& certificate);

/// The pooled deltas as a support family, in matrix order.
SupportFamily pooled_family(std::span<const CoefficientMatrix> matrices, const EciCertificate& certificate);

}  // namespace toric
