#include "doctest.h"
#include "fixtures.hpp"
#include "toric/critical.hpp"
#include "toric/oracle.hpp"

#include <map>

using namespace toric;
using toric::test::pts;
using toric::test::row;

namespace {

const Characteristic Q;

PointSet cubic() { return pts(1, {{0}, {1}, {2}, {3}}); }

using Deltas = std::vector<std::vector<std::size_t>>;

}  // namespace

TEST_SUITE("critical") {

TEST_CASE("encode_derivative_tower examples") {
    auto m1 = encode_derivative_tower(cubic(), 0, 1, Q);
    CHECK(m1.rows() == std::vector<Row>{row(Q, {1, 1, 1, 1}), row(Q, {0, 1, 2, 3})});
    auto m2 = encode_derivative_tower(cubic(), 0, 2, Q);
    CHECK(m2.row(2) == row(Q, {0, 0, 2, 6}));
    Characteristic f2(2);
    auto m3 = encode_derivative_tower(cubic(), 0, 1, f2);
    CHECK(m3.rows() == std::vector<Row>{row(f2, {1, 1, 1, 1}), row(f2, {0, 1, 0, 1})});
    CHECK(encode_derivative_tower(cubic(), 0, 0, Q).rows() == std::vector<Row>{row(Q, {1, 1, 1, 1})});
    CHECK_THROWS_AS(encode_derivative_tower(cubic(), 1, 1, Q), std::out_of_range);
}

TEST_CASE("encode_gradient examples") {
    auto m = encode_gradient(pts(2, {{0, 0}, {1, 0}, {0, 1}}), 0, 1, Q);
    CHECK(m.rows() == std::vector<Row>{row(Q, {0, 1, 0}), row(Q, {0, 0, 1})});
    auto xy = encode_gradient(pts(2, {{1, 1}}), 0, 1, Q);
    CHECK(xy.rows() == std::vector<Row>{row(Q, {1}), row(Q, {1})});
    Characteristic f3(3);
    CHECK(encode_gradient(pts(2, {{3, 0}}), 0, 1, f3).row(0) == row(f3, {0}));
    CHECK_THROWS_AS(encode_gradient(pts(2, {{1, 1}}), 1, 1, Q), std::invalid_argument);
    DerivativePattern g{GradientPattern{0, 1}, Q};
    CHECK(encode_pattern(pts(2, {{1, 1}}), g).num_rows() == 2);
}

TEST_CASE("characteristic p encodings reduce the rational ones") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 30; ++t) {
        auto s = test::random_set(rng, 2, 6, -5, 5);
        auto r = static_cast<std::size_t>(test::uniform(rng, 0, 3));
        for (std::uint64_t p : {2u, 3u, 5u}) {
            Characteristic ch(p);
            auto a = encode_derivative_tower(s, 0, r, Q);
            auto b = encode_derivative_tower(s, 0, r, ch);
            for (std::size_t i = 0; i <= r; ++i)
                for (std::size_t j = 0; j < s.size(); ++j) CHECK(b(i, j) == Scalar(ch, a(i, j).value()));
        }
    }
}

TEST_CASE("symbolic differentiation oracle") {
    auto s = pts(1, {{0}, {1}, {2}});
    CHECK(oracle::symbolic_tower_check(s, 0, 1));
    CHECK(oracle::symbolic_tower_check(s, 0, 2));
    auto rows = oracle::symbolic_tower_rows(s, 0, 1);
    rows[1][2] += 1;
    CHECK_FALSE(oracle::symbolic_tower_check(s, 0, 1, rows));
    std::mt19937_64 rng(6);
    for (int t = 0; t < 20; ++t) {
        auto a = test::random_set(rng, 3, 5, -3, 4);
        auto x = static_cast<std::size_t>(test::uniform(rng, 0, 2));
        CHECK(oracle::symbolic_tower_check(a, x, static_cast<std::size_t>(test::uniform(rng, 0, 3))));
    }
}

TEST_CASE("falling factorials") {
    auto p = falling_factorial_polys(4, Q);
    CHECK(degree(p[0]) == 0);
    CHECK(degree(p[3]) == 3);
    CHECK(evaluate(p[3], Scalar(Q, 5)) == Scalar(Q, 60));
    CHECK(evaluate(p[2], Scalar(Q, 1)).is_zero());
}

TEST_CASE("check_stratified_hypotheses examples") {
    auto s = test::tower_support();
    auto m = encode_derivative_tower(s, 0, 2, Q);
    auto l = degree_label(s, 0, Q);
    auto polys = falling_factorial_polys(3, Q);
    Deltas strata{{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10}};
    CHECK(check_stratified_hypotheses(m, l, strata, polys).ok);

    Deltas shared{{0, 1, 2, 3}, {4, 5}, {6, 7, 8}};
    auto r = check_stratified_hypotheses(m, l, shared, polys);
    CHECK_FALSE(r.ok);
    CHECK(r.reason.find("share") != std::string::npos);

    auto rows = m.rows();
    rows[2][9] += Scalar(Q, 1);
    CHECK_FALSE(check_stratified_hypotheses(CoefficientMatrix(s, Q, rows), l, strata, polys).ok);

    std::vector<UniPoly> bad = polys;
    bad[2] = polys[1];
    CHECK_FALSE(check_stratified_hypotheses(m, l, strata, bad).ok);
}

TEST_CASE("hypotheses imply that fibre_adjust succeeds") {
    std::mt19937_64 rng(14);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        Characteristic ch = t % 3 == 0 ? Characteristic(7) : Q;
        auto s = test::random_set(rng, 2, 8, -3, 3);
        auto r = static_cast<std::size_t>(test::uniform(rng, 0, 2));
        auto m = encode_derivative_tower(s, 0, r, ch);
        auto l = degree_label(s, 0, ch);
        std::map<Rational, std::vector<std::size_t>> fibres;
        for (std::size_t j = 0; j < s.size(); ++j) fibres[l.values[j].value()].push_back(j);
        if (fibres.size() < r + 1) continue;
        Deltas deltas;
        for (auto& [v, cols] : fibres) {
            if (deltas.size() == r + 1) break;
            deltas.push_back(cols);
        }
        auto polys = falling_factorial_polys(r + 1, ch);
        if (!check_stratified_hypotheses(m, l, deltas, polys).ok) continue;
        ++checked;
        auto coll = fibre_adjust_strata(m, deltas);
        CHECK(is_adjusted(apply_transform(m, coll.transform), coll.deltas));
    }
    CHECK(checked > 50);
}

TEST_CASE("auto_certificate_stratified examples") {
    auto s = test::tower_support();
    auto m = encode_derivative_tower(s, 0, 1, Q);
    auto v = auto_certificate_stratified(m, degree_label(s, 0, Q));
    REQUIRE(v.is_irreducible());
    std::vector<CoefficientMatrix> ms{m};
    CHECK(verify_certificate(ms, *v.certificate()).valid);
    CHECK(v.certificate()->collections[0].deltas == Deltas{{0, 1, 2, 3}, {4, 5, 6, 7}});

    // Only one fibre of dimension > 2.
    auto one = pts(3, {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}, {1, 0, 0}, {1, 1, 0}});
    auto m1 = encode_derivative_tower(one, 0, 1, Q);
    CHECK(auto_certificate_stratified(m1, degree_label(one, 0, Q)).is_inconclusive());

    // Strata of dimension <= d.
    auto m2 = encode_derivative_tower(test::two_triangles(), 0, 1, Q);
    auto v2 = auto_certificate_stratified(m2, degree_label(test::two_triangles(), 0, Q));
    REQUIRE(v2.is_inconclusive());
    CHECK(v2.inconclusive()->reason.find("fibres") != std::string::npos);
}

TEST_CASE("critical-locus fixtures are certified by the search") {
    std::vector<CoefficientMatrix> grad{encode_gradient(test::gradient_support(), 0, 1, Q)};
    auto g = search_irreducibility_certificate(grad);
    REQUIRE(g.is_irreducible());
    CHECK(verify_certificate(grad, *g.certificate()).valid);

    for (std::size_t r = 0; r <= 2; ++r) {
        std::vector<CoefficientMatrix> tower{encode_derivative_tower(test::tower_support(), 0, r, Q)};
        auto v = search_irreducibility_certificate(tower);
        REQUIRE(v.is_irreducible());
        CHECK(verify_certificate(tower, *v.certificate()).valid);
    }
    for (std::size_t r = 0; r <= 1; ++r) {
        std::vector<CoefficientMatrix> tower{encode_derivative_tower(test::tower_support(), 0, r, Characteristic(2))};
        auto v = search_irreducibility_certificate(tower);
        REQUIRE(v.is_irreducible());
        CHECK(verify_certificate(tower, *v.certificate()).valid);
    }
    // The third row d(d-1) is even, so it vanishes in characteristic 2.
    std::vector<CoefficientMatrix> dependent{encode_derivative_tower(test::tower_support(), 0, 2, Characteristic(2))};
    CHECK_THROWS_AS(search_irreducibility_certificate(dependent), DependentRows);
}

}  // TEST_SUITE
