#pragma once

// Critical loci as ECIs: f = f'_x = ... = f^(r)_x = 0 and f'_x = f'_y = 0
// become coefficient matrices, plus the sufficient condition for rows that
// are polynomial functions of a label on the support.

#include "toric/eci.hpp"

#include <string>
#include <variant>

namespace toric {

/// f = d/dx f = ... = d^r/dx^r f = 0.
struct TowerPattern {
    std::size_t variable = 0;
    std::size_t order = 0;
};

/// d/dx f = d/dy f = 0.
struct GradientPattern {
    std::size_t x = 0;
    std::size_t y = 1;
};

struct DerivativePattern {
    std::variant<TowerPattern, GradientPattern> form;
    Characteristic characteristic;
};

/// Row i (0-based) holds deg_x(chi) (deg_x(chi) - 1) ... (deg_x(chi) - i + 1),
/// the coefficient that x^i d^i/dx^i applies to chi. Row 0 is all ones.
CoefficientMatrix encode_derivative_tower(const PointSet& support, std::size_t variable, std::size_t order,
                                          Characteristic ch);

/// Rows (deg_x chi) and (deg_y chi). Throws std::invalid_argument if x == y.
CoefficientMatrix encode_gradient(const PointSet& support, std::size_t x, std::size_t y, Characteristic ch);

CoefficientMatrix encode_pattern(const PointSet& support, const DerivativePattern& pattern);

/// A function l on the support, one value per support point in insertion order.
struct LabelFunction {
    std::vector<Scalar> values;
};

/// l(chi) = deg_x(chi) reduced into the field.
LabelFunction degree_label(const PointSet& support, std::size_t variable, Characteristic ch);

/// Univariate polynomial, coefficients from the constant term up.
using UniPoly = std::vector<Scalar>;

Scalar evaluate(const UniPoly& p, const Scalar& t);
/// Degree, or -1 for the zero polynomial.
long degree(const UniPoly& p);

/// p_1 = 1, p_{i+1}(t) = p_i(t) (t - i + 1): the falling factorials behind
/// the derivative tower.
std::vector<UniPoly> falling_factorial_polys(std::size_t count, Characteristic ch);

struct StratifiedCheck {
    bool ok = false;
    std::string reason;
};

/// Hypotheses of the label criterion: deg p_i = i - 1; l constant on each
/// Delta_i with i < d; l takes different values on different Delta_i; and
/// c_i[chi] = p_i(l(chi)) on the union of the deltas.
StratifiedCheck check_stratified_hypotheses(const CoefficientMatrix& m, const LabelFunction& l,
                                            std::span<const std::vector<std::size_t>> deltas,
                                            std::span<const UniPoly> polys);

/// fibre_adjust with lambda_i read off the first column of deltas[i], i < d,
/// and deltas[d-1] as the last delta.
AdjustedCollection fibre_adjust_strata(const CoefficientMatrix& m, std::span<const std::vector<std::size_t>> deltas);

/// Picks d fibres of l of dimension > d (largest dimension first, then
/// smallest label value), adjusts the rows to them and tests the Khovanskii
/// condition. Irreducible with a certificate, or Inconclusive.
Verdict auto_certificate_stratified(const CoefficientMatrix& m, const LabelFunction& l);

}  // namespace toric
