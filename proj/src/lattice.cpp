#include "toric/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <set>
#include <sstream>

namespace toric {

// ---------------------------------------------------------------- points

LatticePoint::LatticePoint(std::initializer_list<long> coords) {
    coords_.reserve(coords.size());
    for (long c : coords) coords_.emplace_back(c);
}

bool LatticePoint::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
}

LatticePoint& LatticePoint::operator+=(const LatticePoint& other) {
    if (other.rank() != rank()) throw RankMismatch("lattice point rank mismatch");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
    return *this;
}

LatticePoint& LatticePoint::operator-=(const LatticePoint& other) {
    if (other.rank() != rank()) throw RankMismatch("lattice point rank mismatch");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
    return *this;
}

LatticePoint operator*(const Integer& k, LatticePoint a) {
    for (auto& c : a.coords_) c *= k;
    return a;
}

bool operator<(const LatticePoint& a, const LatticePoint& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    for (std::size_t i = 0; i < a.rank(); ++i) {
        int c = cmp(a.coords_[i], b.coords_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string LatticePoint::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const LatticePoint& p) {
    os << '(';
    for (std::size_t i = 0; i < p.rank(); ++i) {
        if (i) os << ',';
        os << p[i];
    }
    return os << ')';
}

// ------------------------------------------------------------- point sets

PointSet::PointSet(std::size_t ambient_rank, std::vector<LatticePoint> points)
    : rank_(ambient_rank), points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("point set must be non-empty");
    for (const auto& p : points_)
        if (p.rank() != rank_)
            throw RankMismatch("point " + p.to_string() + " does not have rank " + std::to_string(rank_));
    auto sorted = sorted_points();
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw std::invalid_argument("duplicate point " + dup->to_string());
}

PointSet PointSet::collect(std::size_t ambient_rank, std::vector<LatticePoint> points) {
    std::set<LatticePoint> seen;
    std::vector<LatticePoint> unique;
    unique.reserve(points.size());
    for (auto& p : points)
        if (seen.insert(p).second) unique.push_back(std::move(p));
    return PointSet(ambient_rank, std::move(unique));
}

bool PointSet::contains(const LatticePoint& p) const { return index_of(p) != points_.size(); }

std::size_t PointSet::index_of(const LatticePoint& p) const {
    auto it = std::find(points_.begin(), points_.end(), p);
    return static_cast<std::size_t>(it - points_.begin());
}

const LatticePoint& PointSet::min_point() const {
    return *std::min_element(points_.begin(), points_.end());
}

PointSet PointSet::translated(const LatticePoint& shift) const {
    PointSet out;
    out.rank_ = rank_;
    out.points_.reserve(points_.size());
    for (const auto& p : points_) out.points_.push_back(p + shift);
    return out;
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
    std::vector<LatticePoint> pts;
    pts.reserve(indices.size());
    for (std::size_t i : indices) pts.push_back(points_.at(i));
    return PointSet(rank_, std::move(pts));
}

std::vector<LatticePoint> PointSet::sorted_points() const {
    auto sorted = points_;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

bool operator==(const PointSet& a, const PointSet& b) {
    return a.rank_ == b.rank_ && a.sorted_points() == b.sorted_points();
}

// -------------------------------------------------------------- matrices

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long v : r) data_.emplace_back(v);
    }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(std::size_t cols, std::span<const LatticePoint> rows) {
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].rank() != cols) throw RankMismatch("row rank mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

LatticePoint IntegerMatrix::row(std::size_t r) const {
    return LatticePoint(std::vector<Integer>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_));
}

IntegerMatrix IntegerMatrix::transposed() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool IntegerMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntegerMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntegerMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntegerMatrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    IntegerMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

std::string IntegerMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << ',';
        os << '[';
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) os << ',';
            os << (*this)(r, c);
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

Integer determinant(const IntegerMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntegerMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = std::move(v);
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    Integer d = m(n - 1, n - 1);
    return sign > 0 ? d : Integer(-d);
}

// ------------------------------------------------------------ Smith form

namespace {

struct SmithWork {
    IntegerMatrix D, U, V, Vinv;
    std::size_t rank = 0;
};

// Smallest nonzero |entry| in D[t.., t..]; row-major scan with strict
// comparison gives the (row, col) tie-break.
bool find_pivot(const IntegerMatrix& D, std::size_t t, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < D.rows(); ++i)
        for (std::size_t j = t; j < D.cols(); ++j) {
            if (D(i, j) == 0) continue;
            Integer v = abs(D(i, j));
            if (!found || v < best) {
                best = v;
                pr = i;
                pc = j;
                found = true;
            }
        }
    return found;
}

void col_add(SmithWork& w, std::size_t dst, std::size_t src, const Integer& k) {
    w.D.add_col_multiple(dst, src, k);
    w.V.add_col_multiple(dst, src, k);
    // V <- V E with E = I + k e_src e_dst^T, so V^{-1} <- (I - k e_src e_dst^T) V^{-1}
    w.Vinv.add_row_multiple(src, dst, -k);
}

void col_swap(SmithWork& w, std::size_t a, std::size_t b) {
    w.D.swap_cols(a, b);
    w.V.swap_cols(a, b);
    w.Vinv.swap_rows(a, b);
}

void row_add(SmithWork& w, std::size_t dst, std::size_t src, const Integer& k) {
    w.D.add_row_multiple(dst, src, k);
    w.U.add_row_multiple(dst, src, k);
}

void row_swap(SmithWork& w, std::size_t a, std::size_t b) {
    w.D.swap_rows(a, b);
    w.U.swap_rows(a, b);
}

SmithWork smith_work(const IntegerMatrix& a) {
    SmithWork w{a, IntegerMatrix::identity(a.rows()), IntegerMatrix::identity(a.cols()),
                IntegerMatrix::identity(a.cols())};
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        std::size_t pr = 0, pc = 0;
        if (!find_pivot(w.D, t, pr, pc)) break;
        for (;;) {
            row_swap(w, t, pr);
            col_swap(w, t, pc);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (w.D(i, t) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), w.D(i, t).get_mpz_t(), w.D(t, t).get_mpz_t());
                row_add(w, i, t, -q);
                if (w.D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (w.D(t, j) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), w.D(t, j).get_mpz_t(), w.D(t, t).get_mpz_t());
                col_add(w, j, t, -q);
                if (w.D(t, j) != 0) clean = false;
            }
            if (!clean) {
                find_pivot(w.D, t, pr, pc);
                continue;
            }
            bool divisible = true;
            for (std::size_t i = t + 1; i < m && divisible; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(w.D(i, j).get_mpz_t(), w.D(t, t).get_mpz_t())) {
                        row_add(w, t, i, 1);
                        divisible = false;
                        break;
                    }
            if (!divisible) {
                pr = t;
                pc = t;
                continue;
            }
            break;
        }
        if (w.D(t, t) < 0) {
            w.D.negate_row(t);
            w.U.negate_row(t);
        }
    }
    w.rank = t;
    return w;
}

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& a) {
    auto w = smith_work(a);
    return {std::move(w.U), std::move(w.D), std::move(w.V), w.rank};
}

// ---------------------------------------------------------- Hermite basis

std::vector<LatticePoint> hermite_basis(std::size_t ambient_rank, std::span<const LatticePoint> rows) {
    IntegerMatrix m = IntegerMatrix::from_rows(ambient_rank, rows);
    std::size_t h = 0;
    for (std::size_t c = 0; c < ambient_rank && h < m.rows(); ++c) {
        for (;;) {
            std::size_t best = m.rows();
            for (std::size_t r = h; r < m.rows(); ++r)
                if (m(r, c) != 0 && (best == m.rows() || abs(m(r, c)) < abs(m(best, c)))) best = r;
            if (best == m.rows()) break;
            m.swap_rows(h, best);
            bool clean = true;
            for (std::size_t r = h + 1; r < m.rows(); ++r) {
                if (m(r, c) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), m(r, c).get_mpz_t(), m(h, c).get_mpz_t());
                m.add_row_multiple(r, h, -q);
                if (m(r, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m(h, c) == 0) continue;
        if (m(h, c) < 0) m.negate_row(h);
        for (std::size_t r = 0; r < h; ++r) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), m(r, c).get_mpz_t(), m(h, c).get_mpz_t());
            m.add_row_multiple(r, h, -q);
        }
        ++h;
    }
    std::vector<LatticePoint> out;
    out.reserve(h);
    for (std::size_t r = 0; r < h; ++r) out.push_back(m.row(r));
    return out;
}

std::size_t span_rank(std::size_t ambient_rank, std::span<const LatticePoint> rows) {
    return hermite_basis(ambient_rank, rows).size();
}

// ------------------------------------------------------------ sublattices

Sublattice::Sublattice(std::size_t ambient_rank, std::span<const LatticePoint> generators)
    : rank_(ambient_rank), basis_(hermite_basis(ambient_rank, generators)) {}

Sublattice Sublattice::full(std::size_t ambient_rank) {
    std::vector<LatticePoint> gens;
    auto id = IntegerMatrix::identity(ambient_rank);
    for (std::size_t i = 0; i < ambient_rank; ++i) gens.push_back(id.row(i));
    return Sublattice(ambient_rank, gens);
}

bool Sublattice::contains(const LatticePoint& p) const {
    if (p.rank() != rank_) throw RankMismatch("sublattice membership rank mismatch");
    LatticePoint rest = p;
    std::size_t b = 0;
    for (std::size_t c = 0; c < rank_; ++c) {
        if (b < basis_.size() && basis_[b][c] != 0) {
            const Integer& pivot = basis_[b][c];
            if (!mpz_divisible_p(rest[c].get_mpz_t(), pivot.get_mpz_t())) return false;
            Integer q = rest[c] / pivot;
            rest -= q * basis_[b];
            ++b;
        } else if (rest[c] != 0) {
            return false;
        }
    }
    return true;
}

bool Sublattice::is_saturated() const {
    auto snf = smith_normal_form(IntegerMatrix::from_rows(rank_, basis_));
    for (std::size_t i = 0; i < snf.rank; ++i)
        if (snf.D(i, i) != 1) return false;
    return true;
}

Sublattice saturation(const Sublattice& lattice) {
    if (lattice.rank() == 0) return lattice;
    auto w = smith_work(IntegerMatrix::from_rows(lattice.ambient_rank(), lattice.basis()));
    std::vector<LatticePoint> gens;
    for (std::size_t i = 0; i < w.rank; ++i) gens.push_back(w.Vinv.row(i));
    return Sublattice(lattice.ambient_rank(), gens);
}

AdaptedBasis::AdaptedBasis(const Sublattice& saturated) {
    const std::size_t n = saturated.ambient_rank();
    auto w = smith_work(IntegerMatrix::from_rows(n, saturated.basis()));
    for (std::size_t i = 0; i < w.rank; ++i)
        if (w.D(i, i) != 1) throw std::invalid_argument("sublattice is not saturated");
    k_ = w.rank;
    V_ = std::move(w.V);
    Vinv_ = std::move(w.Vinv);
}

LatticePoint AdaptedBasis::transform(const LatticePoint& p) const {
    const std::size_t n = V_.rows();
    if (p.rank() != n) throw RankMismatch("adapted basis rank mismatch");
    LatticePoint y(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) y[j] += p[i] * V_(i, j);
    return y;
}

LatticePoint AdaptedBasis::inner(const LatticePoint& p) const {
    auto y = transform(p);
    for (std::size_t j = k_; j < y.rank(); ++j)
        if (y[j] != 0) throw std::invalid_argument("point " + p.to_string() + " is not in the sublattice");
    return LatticePoint(std::vector<Integer>(y.coords().begin(), y.coords().begin() + k_));
}

LatticePoint AdaptedBasis::outer(const LatticePoint& p) const {
    auto y = transform(p);
    return LatticePoint(std::vector<Integer>(y.coords().begin() + k_, y.coords().end()));
}

// ------------------------------------------------------------ point sets

std::vector<LatticePoint> difference_generators(const PointSet& set) {
    const auto& base = set.min_point();
    std::vector<LatticePoint> gens;
    gens.reserve(set.size());
    for (const auto& p : set)
        if (!(p == base)) gens.push_back(p - base);
    return gens;
}

std::size_t dim_of_set(const PointSet& set) {
    return span_rank(set.ambient_rank(), difference_generators(set));
}

PointSet minkowski_sum(const PointSet& a, const PointSet& b) {
    if (a.ambient_rank() != b.ambient_rank()) throw RankMismatch("Minkowski sum of sets of different rank");
    std::set<LatticePoint> sums;
    for (const auto& p : a)
        for (const auto& q : b) sums.insert(p + q);
    return PointSet(a.ambient_rank(), std::vector<LatticePoint>(sums.begin(), sums.end()));
}

PointSet difference_set(const PointSet& set) {
    std::set<LatticePoint> diffs;
    for (const auto& p : set)
        for (const auto& q : set) diffs.insert(p - q);
    return PointSet(set.ambient_rank(), std::vector<LatticePoint>(diffs.begin(), diffs.end()));
}

PointSet quotient_project(const PointSet& set, const Sublattice& lattice) {
    if (set.ambient_rank() != lattice.ambient_rank()) throw RankMismatch("quotient of a set by a sublattice of different rank");
    if (!lattice.is_saturated()) throw std::invalid_argument("quotient by a non-saturated sublattice is not free");
    AdaptedBasis basis(lattice);
    std::vector<LatticePoint> images;
    images.reserve(set.size());
    for (const auto& p : set) images.push_back(basis.outer(p));
    return PointSet::collect(set.ambient_rank() - lattice.rank(), std::move(images));
}

PointSet sublattice_coordinates(const PointSet& set, const LatticePoint& base, const AdaptedBasis& basis) {
    std::vector<LatticePoint> coords;
    coords.reserve(set.size());
    for (const auto& p : set) coords.push_back(basis.inner(p - base));
    return PointSet(basis.sublattice_rank(), std::move(coords));
}

}  // namespace toric
