#include "doctest.h"
#include "helpers.hpp"
#include "toric/oracle.hpp"
#include "toric/polytope.hpp"

#include <algorithm>

using namespace toric;
using namespace toric::oracle;
using toric::test::pts;

namespace {

PrimeFieldPoly poly(std::uint64_t p, std::vector<long> c) { return PrimeFieldPoly::from_ints(FiniteField(p), c); }

PrimeFieldPoly power(const PrimeFieldPoly& f, int e) {
    PrimeFieldPoly r = PrimeFieldPoly::from_ints(f.field(), {1});
    for (int i = 0; i < e; ++i) r = r * f;
    return r;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("finite fields") {
    CHECK_THROWS_AS(FiniteField(4), std::invalid_argument);
    CHECK_THROWS_AS(FiniteField(5, {4, 0, 1}), std::invalid_argument);  // t^2 - 1
    FiniteField f25(5, {2, 0, 1});                                        // t^2 + 2
    CHECK(f25.degree() == 2);
    auto t = f25.from_coords({0, 1});
    CHECK(f25.mul(t, t) == f25.from_int(-2));
    CHECK(f25.mul(t, f25.inv(t)) == f25.one());
    CHECK(f25.pow(f25.pth_root(t), 5) == t);
    CHECK_THROWS_AS(f25.inv(f25.zero()), std::domain_error);
    CHECK_NOTHROW(FiniteField(2, {1, 1, 0, 1}));  // t^3 + t + 1
    CHECK_THROWS_AS(FiniteField(2, {1, 0, 1}), std::invalid_argument);
}

TEST_CASE("polynomial arithmetic") {
    auto a = poly(7, {1, 2, 1});  // (x + 1)^2
    auto b = poly(7, {1, 1});
    PrimeFieldPoly q(a.field(), {}), r(a.field(), {});
    PrimeFieldPoly::divmod(a, b, q, r);
    CHECK(q == b);
    CHECK(r.is_zero());
    CHECK(PrimeFieldPoly::gcd(a, poly(7, {3, 3})) == b);
    CHECK(a.derivative() == poly(7, {2, 2}));
    CHECK(poly(7, {0, 0, 5}).valuation() == 2);
}

TEST_CASE("count_distinct_roots_closure examples") {
    CHECK(count_distinct_roots_closure(poly(5, {-1, 0, 1})) == 2);
    CHECK(count_distinct_roots_closure(poly(5, {0, -1, 0, 1})) == 2);
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
        std::vector<long> c(p + 1, 0);
        c[0] = -1;
        c[p] = 1;
        CHECK(count_distinct_roots_closure(poly(p, c)) == 1);
    }
    CHECK_THROWS_AS(count_distinct_roots_closure(poly(5, {})), std::invalid_argument);
    CHECK(count_distinct_roots_closure(poly(5, {0, 0, 3})) == 0);
}

TEST_CASE("root counts through p-th powers") {
    // (x^2 + 1)^3 (x + 2) over F_3: x^2 + 1 is irreducible, so 3 roots.
    auto f = power(poly(3, {1, 0, 1}), 3) * poly(3, {2, 1});
    CHECK(count_distinct_roots_closure(f) == 3);
    // (x + 1)^10 (x + 3)^5 x^4 over F_5.
    auto g = power(poly(5, {1, 1}), 10) * power(poly(5, {3, 1}), 5) * power(poly(5, {0, 1}), 4);
    CHECK(count_distinct_roots_closure(g) == 2);
    // Over F_25, t x^5 - 1 has a single root of multiplicity 5.
    FiniteField f25(5, {2, 0, 1});
    std::vector<FiniteField::Elem> c(6, f25.zero());
    c[0] = f25.from_int(-1);
    c[5] = f25.from_coords({0, 1});
    CHECK(count_distinct_roots_closure(PrimeFieldPoly(f25, c)) == 1);
}

TEST_CASE("root counts are invariant under scaling and powers of x") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
        std::vector<long> c;
        for (int i = 0; i < 6; ++i) c.push_back(test::uniform(rng, 0, 10));
        if (std::all_of(c.begin(), c.end(), [](long v) { return v == 0; })) continue;
        auto f = poly(11, c);
        auto scaled = f * poly(11, {0, 0, static_cast<long>(test::uniform(rng, 1, 10))});
        CHECK(count_distinct_roots_closure(f) == count_distinct_roots_closure(scaled));
    }
}

TEST_CASE("sampler") {
    std::vector<PointSet> empty{pts(2, {{0, 0}, {1, 0}}), pts(2, {{0, 0}, {1, 0}})};
    auto e = sample_common_solutions(empty, 101, 100, 42);
    CHECK(e.counts.size() == 100);
    CHECK(e.trials_with_zero_count() >= 95);

    std::vector<PointSet> square{pts(2, {{0, 0}, {2, 0}, {0, 1}}), pts(2, {{0, 0}, {1, 0}, {1, 2}})};
    auto bound = bkk_count(square);
    auto s = sample_common_solutions(square, 31, 40, 7);
    for (auto c : s.counts) CHECK(c <= bound);

    std::vector<PointSet> over{pts(1, {{0}, {1}}), pts(1, {{0}, {1}})};
    CHECK(sample_common_solutions(over, 101, 50, 3).trials_with_zero_count() >= 45);

    CHECK(sample_common_solutions(square, 31, 5, 9).counts == sample_common_solutions(square, 31, 5, 9).counts);
    std::vector<PointSet> big{pts(3, {{0, 0, 0}, {1, 0, 0}})};
    CHECK_THROWS_AS(sample_common_solutions(big, 257, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_common_solutions(square, 33, 1, 0), std::invalid_argument);
}

TEST_CASE("resultant_count_2d") {
    auto lines = resultant_count_2d(pts(2, {{0, 1}, {1, 0}}), pts(2, {{0, 1}, {0, 0}}), 101, 10, 1);
    for (const auto& c : lines.counts) CHECK(c == std::optional<std::size_t>(1));

    auto simplex = pts(2, {{0, 0}, {1, 0}, {0, 1}});
    auto lin = resultant_count_2d(simplex, simplex, 101, 20, 2);
    std::size_t ones = 0;
    for (const auto& c : lin.counts) ones += c == std::optional<std::size_t>(1);
    CHECK(ones >= 18);

    auto conic = pts(2, {{0, 0}, {2, 0}, {0, 1}});
    std::vector<PointSet> pair{conic, simplex};
    CHECK(mixed_volume(pair) == 2);
    auto two = resultant_count_2d(conic, simplex, 101, 20, 3);
    std::size_t twos = 0;
    for (const auto& c : two.counts) twos += c == std::optional<std::size_t>(2);
    CHECK(twos >= 15);

    auto same = resultant_count_2d(pts(2, {{0, 0}, {1, 1}}), pts(2, {{0, 0}, {1, 1}}), 101, 10, 4);
    CHECK(same.degenerate() + lines.degenerate() <= 10);
    CHECK_THROWS_AS(resultant_count_2d(pts(2, {{0, 0}, {9, 9}}), pts(2, {{0, 0}, {9, 9}}), 101, 1, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(resultant_count_2d(pts(1, {{0}}), simplex, 101, 1, 0), std::invalid_argument);
}

TEST_CASE("rank_rational") {
    for (std::size_t n = 1; n <= 5; ++n) CHECK(rank_rational(IntegerMatrix::identity(n)) == n);
    IntegerMatrix outer(3, 4);
    long u[3] = {1, -2, 3}, v[4] = {2, 0, 5, -1};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) outer(i, j) = u[i] * v[j];
    CHECK(rank_rational(outer) == 1);
    CHECK(rank_rational(IntegerMatrix(3, 3)) == 0);
    std::mt19937_64 rng(19);
    for (int t = 0; t < 50; ++t) {
        auto m = test::random_matrix(rng, 4, 3, -2, 2);
        CHECK(rank_rational(m) == smith_normal_form(m).rank);
    }
}

TEST_CASE("volume_by_lattice_triangulation examples") {
    CHECK(volume_by_lattice_triangulation(pts(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 1);
    CHECK(volume_by_lattice_triangulation(pts(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}})) == 2);
    CHECK(volume_by_lattice_triangulation(pts(1, {{2}, {9}})) == 7);
    CHECK(volume_by_lattice_triangulation(pts(2, {{0, 0}, {3, 3}})) == 0);
    CHECK(volume_by_lattice_triangulation(PointSet(0, {LatticePoint(std::size_t{0})})) == 1);
}

TEST_CASE("brute-force defects and component counts") {
    std::vector<PointSet> fam{pts(2, {{0, 0}, {1, 0}}), pts(2, {{0, 0}, {1, 0}})};
    CHECK(defect_bruteforce(fam, 3) == -1);
    CHECK(component_count_bruteforce(fam).kind == BruteComponents::Kind::Empty);
    std::vector<PointSet> quad{pts(1, {{0}, {2}})};
    auto c = component_count_bruteforce(quad);
    CHECK(c.kind == BruteComponents::Kind::Components);
    CHECK(c.count == 2);
}

}  // TEST_SUITE
