#include "toric/eci.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace toric {

CoefficientMatrix::CoefficientMatrix(PointSet support, Characteristic ch, std::vector<Row> rows)
    : support_(std::move(support)), ch_(ch), rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("coefficient matrix needs at least one row");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].size() != support_.size())
            throw std::invalid_argument("row " + std::to_string(r) + " has " + std::to_string(rows_[r].size()) +
                                        " entries for a support of size " + std::to_string(support_.size()));
        for (const auto& v : rows_[r])
            if (!(v.characteristic() == ch_))
                throw CharacteristicMismatch("row " + std::to_string(r) + " has an entry of another characteristic");
    }
}

Row star_product(const Row& c, const Row& f) {
    if (c.size() != f.size()) throw std::invalid_argument("star product of rows over different supports");
    Row out;
    out.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back(c[i] * f[i]);
    return out;
}

bool is_adjusted(const CoefficientMatrix& m, std::span<const std::vector<std::size_t>> deltas) {
    if (deltas.size() != m.num_rows())
        throw std::out_of_range("expected " + std::to_string(m.num_rows()) + " deltas, got " +
                                std::to_string(deltas.size()));
    for (const auto& delta : deltas)
        for (std::size_t col : delta)
            if (col >= m.num_cols()) throw std::out_of_range("delta column " + std::to_string(col) + " out of range");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        for (std::size_t col : deltas[i])
            if (m(i, col).is_zero()) return false;
        for (std::size_t j = 0; j < i; ++j)
            for (std::size_t col : deltas[j])
                if (!m(i, col).is_zero()) return false;
    }
    return true;
}

CoefficientMatrix apply_transform(const CoefficientMatrix& m, const ScalarMatrix& transform) {
    if (transform.size() != m.num_rows()) throw std::invalid_argument("transform has the wrong number of rows");
    for (const auto& r : transform)
        if (r.size() != m.num_rows()) throw std::invalid_argument("transform is not square");
    return CoefficientMatrix(m.support(), m.characteristic(), multiply(transform, m.rows()));
}

namespace {

void check_order(std::span<const std::size_t> order, std::size_t n) {
    if (order.size() != n) throw std::invalid_argument("column order must list every support point once");
    std::vector<bool> seen(n, false);
    for (std::size_t c : order) {
        if (c >= n || seen[c]) throw std::invalid_argument("column order is not a permutation");
        seen[c] = true;
    }
}

std::string row_text(const Row& r) {
    std::string s = "(";
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += ", ";
        s += r[i].to_string();
    }
    return s + ")";
}

}  // namespace

EchelonForm row_echelon(const CoefficientMatrix& m, std::span<const std::size_t> order) {
    const std::size_t d = m.num_rows();
    check_order(order, m.num_cols());
    const Characteristic ch = m.characteristic();
    EchelonForm out{identity_matrix(ch, d), m.rows(), {}};
    auto& E = out.rows;
    auto& T = out.transform;
    std::size_t r = 0;
    for (std::size_t col : order) {
        if (r == d) break;
        std::size_t p = r;
        while (p < d && E[p][col].is_zero()) ++p;
        if (p == d) continue;
        std::swap(E[p], E[r]);
        std::swap(T[p], T[r]);
        Scalar s = E[r][col].inverse();
        for (auto& v : E[r]) v *= s;
        for (auto& v : T[r]) v *= s;
        for (std::size_t i = 0; i < d; ++i) {
            if (i == r || E[i][col].is_zero()) continue;
            Scalar f = E[i][col];
            for (std::size_t j = 0; j < E[i].size(); ++j) E[i][j] -= f * E[r][j];
            for (std::size_t j = 0; j < d; ++j) T[i][j] -= f * T[r][j];
        }
        out.pivots.push_back(col);
        ++r;
    }
    if (r < d)
        throw DependentRows("rows are linearly dependent: combination " + row_text(T[r]) + " of the rows vanishes",
                            T[r]);
    return out;
}

AdjustedCollection maximal_adjusted_collection(const CoefficientMatrix& m, std::span<const std::size_t> order) {
    auto echelon = row_echelon(m, order);
    const std::size_t n = m.num_cols(), d = m.num_rows();
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;

    AdjustedCollection out;
    out.deltas.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t lo = pos[echelon.pivots[i]];
        std::size_t hi = i + 1 < d ? pos[echelon.pivots[i + 1]] : n;
        for (std::size_t col = 0; col < n; ++col)
            if (pos[col] >= lo && pos[col] < hi && !echelon.rows[i][col].is_zero()) out.deltas[i].push_back(col);
    }
    out.transform = std::move(echelon.transform);
    out.order.assign(order.begin(), order.end());
    out.pivots = std::move(echelon.pivots);
    if (!is_adjusted(apply_transform(m, out.transform), out.deltas))
        throw std::logic_error("maximal collection failed the adjustedness check");
    return out;
}

std::vector<std::size_t> fibres_of_coefficients(const CoefficientMatrix& m, std::span<const Scalar> lambda) {
    if (lambda.size() != m.num_rows()) throw std::invalid_argument("fibre value has the wrong length");
    std::vector<std::size_t> out;
    for (std::size_t col = 0; col < m.num_cols(); ++col) {
        bool match = true;
        for (std::size_t i = 0; i < m.num_rows() && match; ++i) match = m(i, col) == lambda[i];
        if (match) out.push_back(col);
    }
    return out;
}

AdjustedCollection fibre_adjust(const CoefficientMatrix& m, std::span<const Row> lambdas,
                                std::span<const std::size_t> last_delta) {
    const std::size_t d = m.num_rows();
    const Characteristic ch = m.characteristic();
    if (lambdas.size() + 1 != d)
        throw std::invalid_argument("fibre adjustment needs " + std::to_string(d - 1) + " fibre values");
    for (const auto& l : lambdas)
        if (l.size() != d) throw std::invalid_argument("fibre value has the wrong length");
    for (std::size_t col : last_delta)
        if (col >= m.num_cols()) throw std::out_of_range("last delta column out of range");

    AdjustedCollection out;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        auto fibre = fibres_of_coefficients(m, lambdas[i]);
        if (fibre.empty()) throw EmptyFibre("fibre " + std::to_string(i + 1) + " " + row_text(lambdas[i]) + " is empty");
        out.deltas.push_back(std::move(fibre));
    }
    out.deltas.emplace_back(last_delta.begin(), last_delta.end());

    // Lambda[k][j] = lambda_j[k]: column j holds the first d-1 values of fibre j.
    ScalarMatrix lambda(d - 1, Row(d - 1, Scalar(ch, 0)));
    for (std::size_t k = 0; k + 1 < d; ++k)
        for (std::size_t j = 0; j + 1 < d; ++j) lambda[k][j] = lambdas[j][k];
    if (determinant(ch, lambda).is_zero()) throw SingularLambda("matrix Lambda of fibre values is singular");
    for (std::size_t col : last_delta) {
        ScalarMatrix ext(d, Row(d, Scalar(ch, 0)));
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t j = 0; j + 1 < d; ++j) ext[k][j] = lambdas[j][k];
            ext[k][d - 1] = m(k, col);
        }
        if (determinant(ch, ext).is_zero())
            throw SingularLambdaChi("matrix Lambda_chi is singular for chi = " + m.support()[col].to_string(), col);
    }

    // Rows 1..d-1 become indicators of the fibres; row d loses its values there.
    ScalarMatrix g = inverse(ch, lambda);
    ScalarMatrix t(d, Row(d, Scalar(ch, 0)));
    for (std::size_t i = 0; i + 1 < d; ++i)
        for (std::size_t k = 0; k + 1 < d; ++k) t[i][k] = g[i][k];
    t[d - 1][d - 1] = Scalar(ch, 1);
    for (std::size_t i = 0; i + 1 < d; ++i) {
        const Scalar& w = lambdas[i][d - 1];
        for (std::size_t k = 0; k + 1 < d; ++k) t[d - 1][k] -= w * g[i][k];
    }
    out.transform = std::move(t);
    if (!is_adjusted(apply_transform(m, out.transform), out.deltas))
        throw std::logic_error("fibre adjustment produced a non-adjusted collection");
    return out;
}

SupportFamily pooled_family(std::span<const CoefficientMatrix> matrices, const EciCertificate& certificate) {
    if (matrices.empty()) throw std::invalid_argument("no coefficient matrices");
    if (certificate.collections.size() != matrices.size())
        throw std::invalid_argument("certificate has " + std::to_string(certificate.collections.size()) +
                                    " collections for " + std::to_string(matrices.size()) + " matrices");
    std::vector<PointSet> sets;
    for (std::size_t i = 0; i < matrices.size(); ++i)
        for (const auto& delta : certificate.collections[i].deltas) {
            if (delta.empty()) throw std::invalid_argument("certificate contains an empty delta");
            sets.push_back(matrices[i].support().subset(delta));
        }
    return SupportFamily(matrices[0].support().ambient_rank(), std::move(sets));
}

CertificateCheck verify_certificate(std::span<const CoefficientMatrix> matrices, const EciCertificate& certificate) {
    try {
        if (certificate.collections.size() != matrices.size()) return {false, "collection count differs from matrix count"};
        for (std::size_t i = 0; i < matrices.size(); ++i) {
            const auto& m = matrices[i];
            const auto& coll = certificate.collections[i];
            if (coll.transform.size() != m.num_rows()) return {false, "transform " + std::to_string(i) + " has the wrong size"};
            if (determinant(m.characteristic(), coll.transform).is_zero())
                return {false, "transform " + std::to_string(i) + " is singular"};
            if (!is_adjusted(apply_transform(m, coll.transform), coll.deltas))
                return {false, "matrix " + std::to_string(i) + " is not adjusted to its deltas"};
            for (std::size_t a = 0; a < coll.deltas.size(); ++a)
                for (std::size_t b = a + 1; b < coll.deltas.size(); ++b)
                    for (std::size_t col : coll.deltas[a])
                        if (std::find(coll.deltas[b].begin(), coll.deltas[b].end(), col) != coll.deltas[b].end())
                            return {false, "deltas of matrix " + std::to_string(i) + " overlap"};
        }
        auto result = khovanskii_condition(pooled_family(matrices, certificate));
        if (!result.satisfied)
            return {false, "pooled deltas violate the Khovanskii condition at " + result.witness->to_string()};
        return {true, {}};
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
}

namespace {

using DeltaFamily = std::vector<std::vector<std::size_t>>;

struct Candidate {
    DeltaFamily deltas;
    std::vector<std::size_t> order;
};

class BudgetExceeded {};

// Enumerates ordered pivot sequences of one matrix depth-first in
// lexicographic order and reports each new maximal delta family.
class PivotEnumerator {
public:
    PivotEnumerator(const CoefficientMatrix& m, std::size_t& states, std::size_t max_states)
        : m_(m), ch_(m.characteristic()), states_(states), max_states_(max_states), used_(m.num_cols(), false) {}

    template <typename Visit>
    void run(Visit&& visit) {
        extend(visit);
    }

private:
    bool independent_with(std::size_t col) const {
        const std::size_t d = m_.num_rows();
        ScalarMatrix cols;
        for (std::size_t p : seq_) {
            Row c(d, Scalar(ch_, 0));
            for (std::size_t r = 0; r < d; ++r) c[r] = m_(r, p);
            cols.push_back(std::move(c));
        }
        Row c(d, Scalar(ch_, 0));
        for (std::size_t r = 0; r < d; ++r) c[r] = m_(r, col);
        cols.push_back(std::move(c));
        // Rank of the chosen columns by elimination.
        std::size_t rank = 0;
        for (std::size_t r = 0; r < d && rank < cols.size(); ++r) {
            std::size_t p = rank;
            while (p < cols.size() && cols[p][r].is_zero()) ++p;
            if (p == cols.size()) continue;
            std::swap(cols[p], cols[rank]);
            Scalar inv = cols[rank][r].inverse();
            for (std::size_t q = rank + 1; q < cols.size(); ++q) {
                if (cols[q][r].is_zero()) continue;
                Scalar f = cols[q][r] * inv;
                for (std::size_t k = r; k < d; ++k) cols[q][k] -= f * cols[rank][k];
            }
            ++rank;
        }
        return rank == cols.size();
    }

    template <typename Visit>
    void extend(Visit& visit) {
        const std::size_t d = m_.num_rows(), n = m_.num_cols();
        if (seq_.size() == d) {
            if (++states_ > max_states_) throw BudgetExceeded{};
            emit(visit);
            return;
        }
        for (std::size_t col = 0; col < n; ++col) {
            if (used_[col] || !independent_with(col)) continue;
            used_[col] = true;
            seq_.push_back(col);
            extend(visit);
            seq_.pop_back();
            used_[col] = false;
        }
    }

    template <typename Visit>
    void emit(Visit& visit) {
        const std::size_t d = m_.num_rows(), n = m_.num_cols();
        ScalarMatrix minor(d, Row(d, Scalar(ch_, 0)));
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t j = 0; j < d; ++j) minor[r][j] = m_(r, seq_[j]);
        auto reduced = multiply(inverse(ch_, minor), m_.rows());

        // last[col]: largest 1-based row index with a nonzero entry, 0 if none.
        std::vector<std::size_t> last(n, 0);
        for (std::size_t col = 0; col < n; ++col)
            for (std::size_t r = d; r-- > 0;)
                if (!reduced[r][col].is_zero()) {
                    last[col] = r + 1;
                    break;
                }
        Candidate cand;
        cand.deltas.resize(d);
        for (std::size_t col = 0; col < n; ++col)
            if (last[col] > 0) cand.deltas[last[col] - 1].push_back(col);
        if (!seen_.insert(cand.deltas).second) return;

        // An order realizing the pivots: zero columns, then each pivot
        // followed by the columns whose last nonzero row is its row.
        for (std::size_t col = 0; col < n; ++col)
            if (last[col] == 0) cand.order.push_back(col);
        for (std::size_t k = 1; k <= d; ++k) {
            cand.order.push_back(seq_[k - 1]);
            for (std::size_t col = 0; col < n; ++col)
                if (last[col] == k && col != seq_[k - 1]) cand.order.push_back(col);
        }
        visit(std::move(cand));
    }

    const CoefficientMatrix& m_;
    Characteristic ch_;
    std::size_t& states_;
    std::size_t max_states_;
    std::vector<bool> used_;
    std::vector<std::size_t> seq_;
    std::set<DeltaFamily> seen_;
};

bool pooled_khovanskii(std::span<const CoefficientMatrix> matrices, std::span<const Candidate* const> picks) {
    std::vector<PointSet> sets;
    for (std::size_t i = 0; i < matrices.size(); ++i)
        for (const auto& delta : picks[i]->deltas) sets.push_back(matrices[i].support().subset(delta));
    return khovanskii_condition(SupportFamily(matrices[0].support().ambient_rank(), std::move(sets))).satisfied;
}

}  // namespace

Verdict search_irreducibility_certificate(std::span<const CoefficientMatrix> matrices, const SearchOptions& options,
                                          SearchStats* stats) {
    if (matrices.empty()) throw std::invalid_argument("no coefficient matrices");
    const Characteristic ch = matrices[0].characteristic();
    const std::size_t n = matrices[0].support().ambient_rank();
    std::size_t total_rows = 0;
    for (const auto& m : matrices) {
        if (!(m.characteristic() == ch)) throw CharacteristicMismatch("coefficient matrices over different fields");
        if (m.support().ambient_rank() != n) throw RankMismatch("supports of different ambient rank");
        std::vector<std::size_t> natural(m.num_cols());
        std::iota(natural.begin(), natural.end(), 0);
        row_echelon(m, natural);  // throws DependentRows
        total_rows += m.num_rows();
    }
    if (total_rows > SupportFamily::max_size)
        throw std::invalid_argument("too many equations for the pooled Khovanskii test");

    std::size_t states = 0;
    SearchStats local;
    auto finish = [&](Verdict v) {
        local.explored_states = states;
        if (stats) *stats = local;
        return v;
    };
    auto certify = [&](std::span<const Candidate* const> picks) -> Verdict {
        EciCertificate cert;
        for (std::size_t i = 0; i < matrices.size(); ++i) {
            auto coll = maximal_adjusted_collection(matrices[i], picks[i]->order);
            if (coll.deltas != picks[i]->deltas) throw std::logic_error("pivot search and echelon collection disagree");
            cert.collections.push_back(std::move(coll));
        }
        auto check = verify_certificate(matrices, cert);
        if (!check.valid) throw std::logic_error("certificate failed re-verification: " + check.reason);
        return Verdict(Irreducible{}, std::move(cert));
    };

    std::vector<std::vector<Candidate>> lists(matrices.size());
    try {
        if (matrices.size() == 1) {
            std::optional<Verdict> found;
            PivotEnumerator(matrices[0], states, options.max_states).run([&](Candidate cand) {
                if (found) return;
                lists[0].push_back(std::move(cand));
                if (++states > options.max_states) throw BudgetExceeded{};
                const Candidate* pick = &lists[0].back();
                if (pooled_khovanskii(matrices, std::span<const Candidate* const>(&pick, 1))) found = certify(std::span<const Candidate* const>(&pick, 1));
            });
            local.distinct_collections = {lists[0].size()};
            if (found) return finish(std::move(*found));
        } else {
            for (std::size_t i = 0; i < matrices.size(); ++i) {
                PivotEnumerator(matrices[i], states, options.max_states).run([&](Candidate cand) {
                    lists[i].push_back(std::move(cand));
                });
                local.distinct_collections.push_back(lists[i].size());
            }
            // Odometer over the product, last matrix varying fastest.
            std::vector<std::size_t> idx(matrices.size(), 0);
            std::vector<const Candidate*> picks(matrices.size());
            for (bool done = false; !done;) {
                if (++states > options.max_states) throw BudgetExceeded{};
                for (std::size_t i = 0; i < matrices.size(); ++i) picks[i] = &lists[i][idx[i]];
                if (pooled_khovanskii(matrices, picks)) return finish(certify(picks));
                for (std::size_t k = matrices.size();;) {
                    if (k == 0) {
                        done = true;
                        break;
                    }
                    --k;
                    if (++idx[k] < lists[k].size()) break;
                    idx[k] = 0;
                }
            }
        }
    } catch (const BudgetExceeded&) {
        states = std::min(states, options.max_states);
        return finish(Verdict(Inconclusive{"search budget exhausted after " + std::to_string(states) + " states", states}));
    }
    return finish(Verdict(Inconclusive{"no maximal adjusted collection satisfies the Khovanskii condition", states}));
}

}  // namespace toric
