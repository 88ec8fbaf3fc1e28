#include "doctest.h"
#include "helpers.hpp"
#include "toric/khovanskii.hpp"
#include "toric/oracle.hpp"
#include "toric/polytope.hpp"

using namespace toric;
using toric::test::pts;

namespace {

SupportFamily family(std::size_t n, std::vector<PointSet> s) { return SupportFamily(n, std::move(s)); }

PointSet unit_square() { return pts(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }
PointSet seg_e1() { return pts(2, {{0, 0}, {1, 0}}); }
PointSet seg_e2() { return pts(2, {{0, 0}, {0, 1}}); }

SupportFamily random_family(std::mt19937_64& rng, std::size_t max_n, std::size_t max_m, std::size_t max_size,
                            long range) {
    auto n = static_cast<std::size_t>(test::uniform(rng, 1, static_cast<long>(max_n)));
    auto m = static_cast<std::size_t>(test::uniform(rng, 1, static_cast<long>(max_m)));
    std::vector<PointSet> s;
    for (std::size_t i = 0; i < m; ++i) s.push_back(test::random_set(rng, n, max_size, -range, range));
    return SupportFamily(n, std::move(s));
}

}  // namespace

TEST_SUITE("khovanskii") {

TEST_CASE("defect examples") {
    CHECK(defect(family(2, {unit_square()}), Subset::of({0})) == 1);
    CHECK(defect(family(2, {seg_e1(), seg_e1()}), Subset::of({0, 1})) == -1);
    CHECK(defect(family(2, {seg_e1(), seg_e2()}), Subset::of({0, 1})) == 0);
    CHECK_THROWS_AS(defect(family(2, {seg_e1()}), Subset()), std::invalid_argument);
    CHECK_THROWS_AS(defect(family(2, {seg_e1()}), Subset::of({1})), std::invalid_argument);
}

TEST_CASE("khovanskii_condition examples") {
    auto one = khovanskii_condition(family(2, {unit_square()}));
    CHECK(one.satisfied);
    CHECK_FALSE(one.witness);

    auto parallel = khovanskii_condition(family(2, {seg_e1(), pts(2, {{0, 3}, {1, 3}})}));
    CHECK_FALSE(parallel.satisfied);
    REQUIRE(parallel.witness);
    CHECK(parallel.witness->to_string() == "{1,2}");

    auto t1 = pts(3, {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto t2 = pts(3, {{1, 0, 0}, {2, 1, 0}, {3, 0, 1}});
    CHECK(khovanskii_condition(family(3, {t1, t2})).satisfied);
}

TEST_CASE("witness ties go to the smallest subset") {
    // delta({1}) = 0, delta({2}) = 0, delta({1,2}) = 0: witness {1}.
    auto r = khovanskii_condition(family(2, {seg_e1(), seg_e2()}));
    REQUIRE(r.witness);
    CHECK(r.witness->to_string() == "{1}");
}

TEST_CASE("component_count examples") {
    auto two = component_count(family(1, {pts(1, {{0}, {2}})}));
    REQUIRE(two.components());
    CHECK(two.components()->count == 2);

    CHECK(component_count(family(2, {seg_e1(), seg_e1()})).is_empty());
    CHECK(component_count(family(2, {unit_square()})).is_irreducible());

    auto line = component_count(family(2, {seg_e1()}));
    REQUIRE(line.components());
    CHECK(line.components()->count == 1);
    CHECK(line.components()->j0 == Subset::of({0}));
    std::vector<LatticePoint> e1{LatticePoint{1, 0}};
    CHECK(line.components()->lattice == Sublattice(2, e1));
}

TEST_CASE("L is built from within-set differences") {
    // A1 = {1, x}, A2 = {z, yz}: cross differences would give rank 3.
    auto v = component_count(family(3, {pts(3, {{0, 0, 0}, {1, 0, 0}}), pts(3, {{0, 0, 1}, {0, 1, 1}})}));
    REQUIRE(v.components());
    CHECK(v.components()->j0 == Subset::of({0, 1}));
    CHECK(v.components()->lattice.rank() == 2);
    CHECK(v.components()->count == 1);
}

TEST_CASE("component_count matches the exhaustive oracle") {
    std::mt19937_64 rng(101);
    int case3 = 0;
    for (int t = 0; t < 300; ++t) {
        auto fam = random_family(rng, 3, 3, 4, 2);
        auto v = component_count(fam);
        auto b = oracle::component_count_bruteforce(fam.supports());
        switch (b.kind) {
            case oracle::BruteComponents::Kind::Irreducible: CHECK(v.is_irreducible()); break;
            case oracle::BruteComponents::Kind::Empty: CHECK(v.is_empty()); break;
            case oracle::BruteComponents::Kind::Components: {
                ++case3;
                REQUIRE(v.components());
                CHECK(v.components()->count == b.count);
                CHECK(v.components()->j0.mask() == b.j0);
                std::vector<LatticePoint> basis;
                for (const auto& row : b.lattice_basis) basis.emplace_back(row);
                CHECK(v.components()->lattice == Sublattice(fam.ambient_rank(), basis));
                break;
            }
        }
    }
    CHECK(case3 > 20);
}

TEST_CASE("defect report") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 200; ++t) {
        auto fam = random_family(rng, 4, 4, 4, 3);
        DefectReport report(fam);
        const std::uint32_t count = 1u << fam.size();
        for (std::uint32_t mask = 1; mask < count; ++mask) {
            CHECK(report[Subset(mask)] == defect(fam, Subset(mask)));
            CHECK(report[Subset(mask)] == oracle::defect_bruteforce(fam.supports(), mask));
        }
        if (report.min_defect() >= 0) CHECK(report.submodular());
        CHECK(khovanskii_condition(fam).satisfied == component_count(fam).is_irreducible());
        CHECK(report[report.witness()] == report.min_defect());
    }
}

TEST_CASE("defects are invariant under translation and unimodular maps") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 60; ++t) {
        auto fam = random_family(rng, 3, 3, 4, 2);
        auto u = test::random_unimodular(rng, fam.ambient_rank());
        std::vector<PointSet> moved;
        for (const auto& s : fam.supports())
            moved.push_back(test::transform(s, u).translated(test::random_point(rng, fam.ambient_rank(), -3, 3)));
        SupportFamily other(fam.ambient_rank(), moved);
        DefectReport a(fam), b(other);
        for (std::uint32_t mask = 1; mask < (1u << fam.size()); ++mask) CHECK(a[Subset(mask)] == b[Subset(mask)]);
        auto va = component_count(fam), vb = component_count(other);
        CHECK(va.tag() == vb.tag());
        if (va.components()) CHECK(va.components()->count == vb.components()->count);
    }
}

TEST_CASE("duplicating a support never turns Empty into Irreducible") {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 100; ++t) {
        auto fam = random_family(rng, 3, 3, 4, 2);
        if (fam.size() >= SupportFamily::max_size) continue;
        auto s = fam.supports();
        auto i = static_cast<std::size_t>(test::uniform(rng, 0, static_cast<long>(s.size()) - 1));
        s.push_back(s[i]);
        SupportFamily doubled(fam.ambient_rank(), s);
        if (component_count(fam).is_empty()) CHECK_FALSE(component_count(doubled).is_irreducible());
        std::uint32_t pair = (1u << i) | (1u << (s.size() - 1));
        CHECK(DefectReport(doubled)[Subset(pair)] == static_cast<long>(dim_of_set(s[i])) - 2);
    }
}

TEST_CASE("family limits") {
    std::vector<PointSet> many(17, seg_e1());
    CHECK_THROWS_AS(SupportFamily(2, many), std::invalid_argument);
    CHECK_THROWS_AS(SupportFamily(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(SupportFamily(3, {seg_e1()}), RankMismatch);
}

}  // TEST_SUITE
