#include "toric/khovanskii.hpp"

#include "toric/polytope.hpp"

#include <stdexcept>

namespace toric {

SupportFamily::SupportFamily(std::size_t ambient_rank, std::vector<PointSet> supports)
    : rank_(ambient_rank), supports_(std::move(supports)) {
    if (supports_.empty()) throw std::invalid_argument("support family must have at least one support");
    if (supports_.size() > max_size)
        throw std::invalid_argument("support family has " + std::to_string(supports_.size()) + " supports; at most " +
                                    std::to_string(max_size) + " are supported");
    for (const auto& s : supports_)
        if (s.ambient_rank() != rank_) throw RankMismatch("support rank differs from the family rank");
}

long defect(const SupportFamily& family, Subset J) {
    if (J.empty()) throw std::invalid_argument("defect of the empty subset");
    auto members = J.members();
    if (members.back() >= family.size()) throw std::invalid_argument("subset index out of range");
    PointSet sum = family[members[0]];
    for (std::size_t i = 1; i < members.size(); ++i) sum = minkowski_sum(sum, family[members[i]]);
    return static_cast<long>(dim_of_set(sum)) - static_cast<long>(members.size());
}

DefectReport::DefectReport(const SupportFamily& family) : m_(family.size()) {
    const std::size_t n = family.ambient_rank();
    const std::size_t count = std::size_t{1} << m_;
    std::vector<std::vector<LatticePoint>> gens(m_);
    for (std::size_t i = 0; i < m_; ++i) gens[i] = difference_generators(family[i]);

    // The span of the Minkowski sum over J is the span of the concatenated
    // difference generators, kept in Hermite form per subset.
    std::vector<std::vector<LatticePoint>> spans(count);
    defects_.assign(count, 0);
    dims_.assign(count, 0);
    bool first = true;
    for (std::size_t mask = 1; mask < count; ++mask) {
        std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
        std::size_t rest = mask & (mask - 1);
        std::vector<LatticePoint> rows = spans[rest];
        rows.insert(rows.end(), gens[low].begin(), gens[low].end());
        spans[mask] = hermite_basis(n, rows);
        dims_[mask] = spans[mask].size();
        Subset J(static_cast<std::uint32_t>(mask));
        defects_[mask] = static_cast<long>(dims_[mask]) - static_cast<long>(J.size());
        if (first || defects_[mask] < min_ || (defects_[mask] == min_ && canonical_less(J, witness_))) {
            min_ = defects_[mask];
            witness_ = J;
            first = false;
        }
    }
    if (min_ == 0) {
        Subset u;
        for (std::size_t mask = 1; mask < count; ++mask)
            if (defects_[mask] == 0) u = u | Subset(static_cast<std::uint32_t>(mask));
        j0_ = u;
    }
}

bool DefectReport::submodular() const {
    const std::size_t count = std::size_t{1} << m_;
    for (std::size_t a = 1; a < count; ++a)
        for (std::size_t b = 1; b < count; ++b)
            if (dims_[a | b] + dims_[a & b] > dims_[a] + dims_[b]) return false;
    return true;
}

KhovanskiiResult khovanskii_condition(const SupportFamily& family) {
    DefectReport report(family);
    if (report.min_defect() > 0) return {true, std::nullopt};
    return {false, report.witness()};
}

Integer component_mixed_volume(const SupportFamily& family, Subset j0, const Sublattice& lattice) {
    AdaptedBasis basis(lattice);
    if (basis.sublattice_rank() != j0.size())
        throw std::logic_error("sublattice rank " + std::to_string(basis.sublattice_rank()) + " differs from |J0| = " +
                               std::to_string(j0.size()));
    std::vector<PointSet> local;
    for (std::size_t j : j0.members())
        local.push_back(sublattice_coordinates(family[j], family[j].min_point(), basis));
    return mixed_volume(local);
}

Verdict component_count(const SupportFamily& family) {
    DefectReport report(family);
    if (report.min_defect() > 0) return Verdict(Irreducible{});
    if (report.min_defect() < 0) return Verdict(Empty{});

    const Subset j0 = *report.j0();
    if (report[j0] != 0) throw std::logic_error("union of zero-defect subsets has defect " + std::to_string(report[j0]));
    const std::size_t count = std::size_t{1} << family.size();
    for (std::size_t mask = 1; mask < count; ++mask) {
        Subset J(static_cast<std::uint32_t>(mask));
        if (j0.is_subset_of(J) && !(J == j0) && report[J] <= 0)
            throw std::logic_error("subset " + J.to_string() + " properly containing J0 has non-positive defect");
    }

    std::vector<LatticePoint> gens;
    for (std::size_t j : j0.members()) {
        auto g = difference_generators(family[j]);
        gens.insert(gens.end(), g.begin(), g.end());
    }
    Sublattice lattice = saturation(Sublattice(family.ambient_rank(), gens));
    if (lattice.rank() != j0.size())
        throw std::logic_error("rank of L differs from |J0| although the defect of J0 is zero");
    Integer n = component_mixed_volume(family, j0, lattice);
    return Verdict(Components{std::move(n), j0, std::move(lattice)});
}

}  // namespace toric
