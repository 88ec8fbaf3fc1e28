#include "toric/critical.hpp"
#include "toric/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toric::oracle {

namespace {

using Vec = std::vector<Integer>;

Vec coords_of(const LatticePoint& p) { return Vec(p.coords().begin(), p.coords().end()); }

Vec minus(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

std::size_t rank_of_rows(std::vector<Vec> a, std::size_t cols) {
    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = rank + 1; i < a.size(); ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Integer num = a[rank][c] * a[i][j] - a[i][c] * a[rank][j];
                if (!mpz_divisible_p(num.get_mpz_t(), prev.get_mpz_t()))
                    throw std::logic_error("fraction-free elimination lost exactness");
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

// Lattice basis of { x in Z^n : w.x = 0 for every row w }, by unimodular
// column operations driven by Euclid's algorithm.
std::vector<Vec> integer_kernel(const std::vector<Vec>& rows, std::size_t n) {
    std::vector<Vec> m = rows;  // m[i][j]
    std::vector<Vec> u(n, Vec(n, 0));  // u[j] is column j of the transform
    for (std::size_t j = 0; j < n; ++j) u[j][j] = 1;
    auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
        for (auto& r : m) r[dst] -= q * r[src];
        for (std::size_t k = 0; k < n; ++k) u[dst][k] -= q * u[src][k];
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (auto& r : m) std::swap(r[a], r[b]);
        std::swap(u[a], u[b]);
    };
    std::size_t col = 0;
    for (std::size_t i = 0; i < m.size() && col < n; ++i) {
        for (std::size_t j = col + 1; j < n; ++j) {
            while (m[i][j] != 0) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[i][j].get_mpz_t());
                col_axpy(col, j, q);
                col_swap(col, j);
            }
        }
        if (m[i][col] != 0) ++col;
    }
    return std::vector<Vec>(u.begin() + static_cast<long>(col), u.end());
}

// Basis of span_Q(gens) intersected with Z^n.
std::vector<Vec> saturated_basis(const std::vector<Vec>& gens, std::size_t n) {
    return integer_kernel(integer_kernel(gens, n), n);
}

// Integer c with sum c_i basis_i = v; std::logic_error if none exists.
Vec solve_in_basis(const std::vector<Vec>& basis, const Vec& v) {
    const std::size_t k = basis.size(), n = v.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(k + 1));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < k; ++c) a[r][c] = basis[c][r];
        a[r][k] = v[r];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = row;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) continue;
        std::swap(a[piv], a[row]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[row][c];
            for (std::size_t j = c; j <= k; ++j) a[r][j] -= f * a[row][j];
        }
        pivot_col.push_back(c);
        ++row;
    }
    for (std::size_t r = row; r < n; ++r)
        if (a[r][k] != 0) throw std::logic_error("point outside the lattice span");
    Vec out(k, 0);
    for (std::size_t r = 0; r < row; ++r) {
        Rational x = a[r][k] / a[r][pivot_col[r]];
        if (x.get_den() != 1) throw std::logic_error("point outside the lattice");
        out[pivot_col[r]] = x.get_num();
    }
    return out;
}

Integer minor_det(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Rational f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det.get_num();
}

// Normalized volume of the convex hull of `pts` in Z^k, which must be
// full-dimensional.
Integer full_volume(const std::vector<Vec>& pts, std::size_t k) {
    if (k == 0) return 1;
    if (k == 1) {
        auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
        return (*hi)[0] - (*lo)[0];
    }
    const std::size_t n = pts.size();
    std::vector<Rational> centre(k, 0);
    for (const auto& p : pts)
        for (std::size_t j = 0; j < k; ++j) centre[j] += p[j];
    for (auto& c : centre) c /= static_cast<long>(n);

    std::set<std::pair<Vec, Integer>> facets;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        // Normal from signed maximal minors of the k-1 edge vectors.
        Vec normal(k);
        for (std::size_t drop = 0; drop < k; ++drop) {
            std::vector<std::vector<Rational>> d(k - 1, std::vector<Rational>(k - 1));
            for (std::size_t r = 1; r < k; ++r)
                for (std::size_t c = 0, cc = 0; c < k; ++c) {
                    if (c == drop) continue;
                    d[r - 1][cc++] = pts[idx[r]][c] - pts[idx[0]][c];
                }
            normal[drop] = minor_det(std::move(d));
            if (drop % 2) normal[drop] = -normal[drop];
        }
        Integer g = 0;
        for (const auto& v : normal) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g != 0) {
            for (auto& v : normal) v /= g;
            auto dot = [&](const Vec& p) {
                Integer s = 0;
                for (std::size_t j = 0; j < k; ++j) s += normal[j] * p[j];
                return s;
            };
            Integer offset = dot(pts[idx[0]]);
            bool below = true, above = true;
            for (const auto& p : pts) {
                Integer s = dot(p);
                below = below && s <= offset;
                above = above && s >= offset;
            }
            if (above && !below) {
                for (auto& v : normal) v = -v;
                offset = -offset;
            }
            if (above || below) facets.insert({normal, offset});
        }
        // Next k-subset.
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }

    Rational total = 0;
    for (const auto& [normal, offset] : facets) {
        Rational height = offset;
        for (std::size_t j = 0; j < k; ++j) height -= normal[j] * centre[j];
        std::vector<Vec> on;
        for (const auto& p : pts) {
            Integer s = 0;
            for (std::size_t j = 0; j < k; ++j) s += normal[j] * p[j];
            if (s == offset) on.push_back(p);
        }
        auto basis = integer_kernel({normal}, k);
        std::vector<Vec> local;
        for (const auto& p : on) local.push_back(solve_in_basis(basis, minus(p, on[0])));
        total += height * Rational(full_volume(local, k - 1));
    }
    if (total.get_den() != 1) throw std::logic_error("pyramid volumes do not sum to an integer");
    return total.get_num();
}

std::vector<Vec> minkowski(const std::vector<std::vector<Vec>>& sets) {
    std::set<Vec> acc{sets[0].begin(), sets[0].end()};
    for (std::size_t i = 1; i < sets.size(); ++i) {
        std::set<Vec> next;
        for (const auto& a : acc)
            for (const auto& b : sets[i]) {
                Vec s(a.size());
                for (std::size_t j = 0; j < a.size(); ++j) s[j] = a[j] + b[j];
                next.insert(std::move(s));
            }
        acc = std::move(next);
    }
    return {acc.begin(), acc.end()};
}

Integer volume_of(const std::vector<Vec>& pts, std::size_t n) {
    if (n == 0) return 1;
    std::vector<Vec> diffs;
    for (const auto& p : pts) diffs.push_back(minus(p, pts[0]));
    if (rank_of_rows(diffs, n) < n) return 0;
    return full_volume(pts, n);
}

Integer mixed_volume_of(const std::vector<std::vector<Vec>>& sets, std::size_t n) {
    if (sets.size() != n) throw std::invalid_argument("mixed volume needs as many sets as the ambient rank");
    if (n == 0) return 1;
    Integer total = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::vector<Vec>> chosen;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1u) chosen.push_back(sets[i]);
        Integer v = volume_of(minkowski(chosen), n);
        if ((n - chosen.size()) % 2) total -= v;
        else total += v;
    }
    Integer fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<long>(i);
    if (!mpz_divisible_p(total.get_mpz_t(), fact.get_mpz_t()))
        throw std::logic_error("inclusion-exclusion sum not divisible by n!");
    return total / fact;
}

std::vector<Vec> points_of(const PointSet& s) {
    std::vector<Vec> out;
    for (const auto& p : s) out.push_back(coords_of(p));
    return out;
}

}  // namespace

std::size_t rank_rational(const IntegerMatrix& m) {
    std::vector<Vec> a(m.rows(), Vec(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c);
    return rank_of_rows(std::move(a), m.cols());
}

long defect_bruteforce(std::span<const PointSet> supports, std::uint32_t mask) {
    if (mask == 0) throw std::invalid_argument("defect of the empty subset");
    if (supports.empty()) throw std::invalid_argument("no supports");
    const std::size_t n = supports[0].ambient_rank();
    std::vector<Vec> rows;
    long count = 0;
    for (std::size_t i = 0; i < supports.size(); ++i) {
        if (!(mask >> i & 1u)) continue;
        ++count;
        auto pts = points_of(supports[i]);
        for (const auto& p : pts) rows.push_back(minus(p, pts[0]));
    }
    if (mask >> supports.size()) throw std::invalid_argument("subset index out of range");
    return static_cast<long>(rank_of_rows(std::move(rows), n)) - count;
}

Integer volume_by_lattice_triangulation(const PointSet& a) { return volume_of(points_of(a), a.ambient_rank()); }

Integer mixed_volume_bruteforce(std::span<const PointSet> sets) {
    if (sets.empty()) return 1;
    std::vector<std::vector<Vec>> pts;
    for (const auto& s : sets) pts.push_back(points_of(s));
    return mixed_volume_of(pts, sets[0].ambient_rank());
}

BruteComponents component_count_bruteforce(std::span<const PointSet> supports) {
    if (supports.empty() || supports.size() > 16) throw std::invalid_argument("family size out of range");
    const std::size_t m = supports.size(), n = supports[0].ambient_rank();
    BruteComponents out;
    long least = 0;
    bool first = true;
    std::uint32_t j0 = 0;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        long d = defect_bruteforce(supports, mask);
        least = first ? d : std::min(least, d);
        first = false;
        if (d == 0) j0 |= mask;
    }
    if (least < 0) {
        out.kind = BruteComponents::Kind::Empty;
        return out;
    }
    if (least > 0) return out;

    out.kind = BruteComponents::Kind::Components;
    out.j0 = j0;
    std::vector<Vec> gens;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < m; ++i)
        if (j0 >> i & 1u) {
            members.push_back(i);
            auto pts = points_of(supports[i]);
            for (const auto& p : pts) gens.push_back(minus(p, pts[0]));
        }
    auto basis = saturated_basis(gens, n);
    if (basis.size() != members.size()) throw std::logic_error("lattice rank differs from |J0|");
    std::vector<std::vector<Vec>> local;
    for (std::size_t i : members) {
        auto pts = points_of(supports[i]);
        auto& l = local.emplace_back();
        for (const auto& p : pts) l.push_back(solve_in_basis(basis, minus(p, pts[0])));
    }
    out.count = mixed_volume_of(local, basis.size());
    out.lattice_basis = std::move(basis);
    return out;
}

std::vector<std::vector<Rational>> symbolic_tower_rows(const PointSet& support, std::size_t variable,
                                                       std::size_t order) {
    if (variable >= support.ambient_rank()) throw std::out_of_range("variable index outside the ambient rank");
    // Polynomial in x with coefficients that are linear forms in the a_chi.
    using Form = std::map<std::size_t, Rational>;
    std::map<Vec, Form> f;
    for (std::size_t j = 0; j < support.size(); ++j) f[coords_of(support[j])][j] = 1;

    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i <= order; ++i) {
        std::map<Vec, Form> shifted;
        for (const auto& [e, form] : f) {
            Vec e2 = e;
            e2[variable] += static_cast<long>(i);
            shifted[e2] = form;
        }
        std::vector<Rational> row(support.size(), 0);
        for (const auto& [e, form] : shifted) {
            for (const auto& [j, c] : form) {
                if (coords_of(support[j]) != e)
                    throw std::logic_error("x^i d^i/dx^i f mixes coefficients of different monomials");
                row[j] = c;
            }
        }
        rows.push_back(std::move(row));

        std::map<Vec, Form> next;
        for (const auto& [e, form] : f) {
            if (e[variable] == 0) continue;
            Vec e2 = e;
            e2[variable] -= 1;
            auto& dst = next[e2];
            for (const auto& [j, c] : form) dst[j] += c * Rational(e[variable]);
        }
        f = std::move(next);
    }
    return rows;
}

bool symbolic_tower_check(const PointSet& support, std::size_t variable, std::size_t order,
                          const std::vector<std::vector<Rational>>& rows) {
    return symbolic_tower_rows(support, variable, order) == rows;
}

bool symbolic_tower_check(const PointSet& support, std::size_t variable, std::size_t order) {
    auto m = encode_derivative_tower(support, variable, order, Characteristic::rationals());
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : m.rows()) {
        auto& out = rows.emplace_back();
        for (const auto& v : r) out.push_back(v.value());
    }
    return symbolic_tower_check(support, variable, order, rows);
}

}  // namespace toric::oracle
