#pragma once

#include "toric/field.hpp"
#include "toric/lattice.hpp"

#include <initializer_list>
#include <random>
#include <set>
#include <vector>

namespace toric::test {

inline PointSet pts(std::size_t n, std::initializer_list<std::initializer_list<long>> points) {
    std::vector<LatticePoint> v;
    for (auto p : points) v.emplace_back(p);
    return PointSet(n, std::move(v));
}

inline Row row(Characteristic ch, std::initializer_list<long> values) {
    Row r;
    for (long v : values) r.push_back(Scalar(ch, v));
    return r;
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline LatticePoint random_point(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
    LatticePoint p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = uniform(rng, lo, hi);
    return p;
}

/// Between 1 and max_size distinct points with coordinates in [lo, hi].
inline PointSet random_set(std::mt19937_64& rng, std::size_t n, std::size_t max_size, long lo, long hi) {
    std::size_t size = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_size)));
    std::vector<LatticePoint> v;
    for (std::size_t i = 0; i < size; ++i) v.push_back(random_point(rng, n, lo, hi));
    return PointSet::collect(n, std::move(v));
}

inline IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
    IntegerMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(rng, lo, hi);
    return m;
}

/// Product of random elementary matrices; determinant +-1.
inline IntegerMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 6) {
    IntegerMatrix u = IntegerMatrix::identity(n);
    if (n < 2) return u;
    for (int s = 0; s < steps; ++s) {
        std::size_t a = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
        std::size_t b = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
        if (b >= a) ++b;
        u.add_row_multiple(a, b, Integer(uniform(rng, -2, 2)));
        if (uniform(rng, 0, 3) == 0) u.swap_rows(a, b);
    }
    return u;
}

/// Points as row vectors times u.
inline PointSet transform(const PointSet& s, const IntegerMatrix& u) {
    std::vector<LatticePoint> v;
    for (const auto& p : s) {
        LatticePoint q(s.ambient_rank());
        for (std::size_t j = 0; j < s.ambient_rank(); ++j)
            for (std::size_t i = 0; i < s.ambient_rank(); ++i) q[j] += p[i] * u(i, j);
        v.push_back(std::move(q));
    }
    return PointSet(s.ambient_rank(), std::move(v));
}

inline std::set<LatticePoint> as_set(const PointSet& s) { return {s.begin(), s.end()}; }

}  // namespace toric::test
