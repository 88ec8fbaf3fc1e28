#include "toric/critical.hpp"

#include <algorithm>
#include <map>

namespace toric {

namespace {

void check_variable(const PointSet& support, std::size_t v) {
    if (v >= support.ambient_rank())
        throw std::out_of_range("variable index " + std::to_string(v) + " outside ambient rank " +
                                std::to_string(support.ambient_rank()));
}

}  // namespace

CoefficientMatrix encode_derivative_tower(const PointSet& support, std::size_t variable, std::size_t order,
                                          Characteristic ch) {
    check_variable(support, variable);
    std::vector<Row> rows(order + 1);
    for (std::size_t i = 0; i <= order; ++i) {
        rows[i].reserve(support.size());
        for (const auto& chi : support) {
            Integer v = 1;
            for (std::size_t t = 0; t < i; ++t) v *= chi[variable] - static_cast<long>(t);
            rows[i].push_back(Scalar::from_integer(ch, v));
        }
    }
    return CoefficientMatrix(support, ch, std::move(rows));
}

CoefficientMatrix encode_gradient(const PointSet& support, std::size_t x, std::size_t y, Characteristic ch) {
    check_variable(support, x);
    check_variable(support, y);
    if (x == y) throw std::invalid_argument("gradient pattern needs two distinct variables");
    std::vector<Row> rows(2);
    for (const auto& chi : support) {
        rows[0].push_back(Scalar::from_integer(ch, chi[x]));
        rows[1].push_back(Scalar::from_integer(ch, chi[y]));
    }
    return CoefficientMatrix(support, ch, std::move(rows));
}

CoefficientMatrix encode_pattern(const PointSet& support, const DerivativePattern& pattern) {
    if (const auto* t = std::get_if<TowerPattern>(&pattern.form))
        return encode_derivative_tower(support, t->variable, t->order, pattern.characteristic);
    const auto& g = std::get<GradientPattern>(pattern.form);
    return encode_gradient(support, g.x, g.y, pattern.characteristic);
}

LabelFunction degree_label(const PointSet& support, std::size_t variable, Characteristic ch) {
    check_variable(support, variable);
    LabelFunction l;
    for (const auto& chi : support) l.values.push_back(Scalar::from_integer(ch, chi[variable]));
    return l;
}

Scalar evaluate(const UniPoly& p, const Scalar& t) {
    Scalar acc(t.characteristic(), 0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
    return acc;
}

long degree(const UniPoly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (!p[i].is_zero()) return static_cast<long>(i);
    return -1;
}

std::vector<UniPoly> falling_factorial_polys(std::size_t count, Characteristic ch) {
    std::vector<UniPoly> out;
    UniPoly p{Scalar(ch, 1)};
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(p);
        // p <- p * (t - i)
        UniPoly next(p.size() + 1, Scalar(ch, 0));
        Scalar shift(ch, static_cast<long>(i));
        for (std::size_t k = 0; k < p.size(); ++k) {
            next[k + 1] += p[k];
            next[k] -= shift * p[k];
        }
        p = std::move(next);
    }
    return out;
}

StratifiedCheck check_stratified_hypotheses(const CoefficientMatrix& m, const LabelFunction& l,
                                            std::span<const std::vector<std::size_t>> deltas,
                                            std::span<const UniPoly> polys) {
    const std::size_t d = m.num_rows();
    if (l.values.size() != m.num_cols()) return {false, "label is not defined on every support point"};
    if (deltas.size() != d) return {false, "expected " + std::to_string(d) + " deltas"};
    if (polys.size() != d) return {false, "expected " + std::to_string(d) + " polynomials"};
    for (std::size_t i = 0; i < d; ++i)
        if (degree(polys[i]) != static_cast<long>(i))
            return {false, "polynomial p_" + std::to_string(i + 1) + " does not have degree " + std::to_string(i)};
    for (std::size_t i = 0; i < d; ++i) {
        if (deltas[i].empty()) return {false, "delta " + std::to_string(i + 1) + " is empty"};
        for (std::size_t col : deltas[i])
            if (col >= m.num_cols()) return {false, "delta column out of range"};
    }
    for (std::size_t i = 0; i + 1 < d; ++i)
        for (std::size_t col : deltas[i])
            if (!(l.values[col] == l.values[deltas[i][0]]))
                return {false, "label is not constant on delta " + std::to_string(i + 1)};
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t a : deltas[i])
                for (std::size_t b : deltas[j])
                    if (l.values[a] == l.values[b])
                        return {false, "deltas " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                           " share the label value " + l.values[a].to_string()};
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t col : deltas[j])
            for (std::size_t i = 0; i < d; ++i)
                if (!(m(i, col) == evaluate(polys[i], l.values[col])))
                    return {false, "c_" + std::to_string(i + 1) + " differs from p_" + std::to_string(i + 1) +
                                       "(l) at " + m.support()[col].to_string()};
    return {true, {}};
}

AdjustedCollection fibre_adjust_strata(const CoefficientMatrix& m, std::span<const std::vector<std::size_t>> deltas) {
    const std::size_t d = m.num_rows();
    if (deltas.size() != d) throw std::invalid_argument("expected one delta per row");
    std::vector<Row> lambdas;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        if (deltas[i].empty()) throw std::invalid_argument("empty delta");
        Row value;
        for (std::size_t r = 0; r < d; ++r) value.push_back(m(r, deltas[i][0]));
        lambdas.push_back(std::move(value));
    }
    return fibre_adjust(m, lambdas, deltas[d - 1]);
}

Verdict auto_certificate_stratified(const CoefficientMatrix& m, const LabelFunction& l) {
    const std::size_t d = m.num_rows();
    if (l.values.size() != m.num_cols()) throw std::invalid_argument("label is not defined on every support point");

    struct Fibre {
        Rational value;
        std::vector<std::size_t> cols;
        std::size_t dim;
    };
    std::map<Rational, std::vector<std::size_t>> groups;
    for (std::size_t col = 0; col < m.num_cols(); ++col) groups[l.values[col].value()].push_back(col);
    std::vector<Fibre> fibres;
    for (auto& [value, cols] : groups) {
        std::size_t dim = dim_of_set(m.support().subset(cols));
        if (dim > d) fibres.push_back({value, cols, dim});
    }
    std::stable_sort(fibres.begin(), fibres.end(), [](const Fibre& a, const Fibre& b) { return a.dim > b.dim; });
    if (fibres.size() < d)
        return Verdict(Inconclusive{"only " + std::to_string(fibres.size()) + " fibres of the label have dimension > " +
                                        std::to_string(d) + ", need " + std::to_string(d),
                                    0});

    std::vector<std::vector<std::size_t>> chosen;
    for (std::size_t i = 0; i < d; ++i) chosen.push_back(fibres[i].cols);
    for (std::size_t i = 0; i + 1 < d; ++i)
        for (std::size_t col : chosen[i])
            for (std::size_t r = 0; r < d; ++r)
                if (!(m(r, col) == m(r, chosen[i][0])))
                    return Verdict(Inconclusive{"rows are not constant on a fibre of the label", 0});

    AdjustedCollection coll;
    try {
        coll = fibre_adjust_strata(m, chosen);
    } catch (const std::domain_error& e) {
        return Verdict(Inconclusive{std::string("fibre adjustment failed: ") + e.what(), 0});
    } catch (const EmptyFibre& e) {
        return Verdict(Inconclusive{std::string("fibre adjustment failed: ") + e.what(), 0});
    }
    EciCertificate cert{{std::move(coll)}};
    std::span<const CoefficientMatrix> single(&m, 1);
    auto check = verify_certificate(single, cert);
    if (!check.valid) return Verdict(Inconclusive{"adjusted fibres do not certify: " + check.reason, 0});
    return Verdict(Irreducible{}, std::move(cert));
}

}  // namespace toric
