#pragma once

// Defects of support families, the Khovanskii condition and the count of
// geometric components of a generic system with fixed supports.

#include "toric/lattice.hpp"
#include "toric/verdict.hpp"

#include <optional>
#include <vector>

namespace toric {

/// Supports A_1, ..., A_m of a system in the torus of rank n.
class SupportFamily {
public:
    /// Largest m accepted; defect tables enumerate all 2^m - 1 subsets.
    static constexpr std::size_t max_size = 16;

    /// Throws std::invalid_argument if the family is empty or too large and
    /// RankMismatch if some support has a different ambient rank.
    SupportFamily(std::size_t ambient_rank, std::vector<PointSet> supports);

    std::size_t ambient_rank() const { return rank_; }
    std::size_t size() const { return supports_.size(); }
    const PointSet& operator[](std::size_t i) const { return supports_[i]; }
    const std::vector<PointSet>& supports() const { return supports_; }

private:
    std::size_t rank_;
    std::vector<PointSet> supports_;
};

/// dim(sum_{j in J} A_j) - |J|, through the Minkowski sum itself.
/// Throws std::invalid_argument on an empty J or an index out of range.
long defect(const SupportFamily& family, Subset J);

/// Defects of every non-empty subset.
class DefectReport {
public:
    explicit DefectReport(const SupportFamily& family);

    std::size_t family_size() const { return m_; }
    long operator[](Subset J) const { return defects_.at(J.mask()); }
    /// dim of the Minkowski sum over J; 0 for the empty subset.
    std::size_t sum_dimension(Subset J) const { return dims_.at(J.mask()); }

    long min_defect() const { return min_; }
    /// Subset with the smallest defect; ties go to canonical_less.
    Subset witness() const { return witness_; }
    /// Union of the zero-defect subsets, when every defect is >= 0 and some
    /// defect is 0.
    const std::optional<Subset>& j0() const { return j0_; }

    /// dim(J u J') + dim(J n J') <= dim J + dim J' for all pairs.
    bool submodular() const;

private:
    std::size_t m_;
    std::vector<long> defects_;
    std::vector<std::size_t> dims_;
    long min_ = 0;
    Subset witness_;
    std::optional<Subset> j0_;
};

struct KhovanskiiResult {
    bool satisfied = false;
    /// Present iff not satisfied; equals DefectReport::witness().
    std::optional<Subset> witness;
};

/// Every non-empty J has dim(sum_{j in J} A_j) > |J|.
KhovanskiiResult khovanskii_condition(const SupportFamily& family);

/// Irreducible, Empty, or Components(N, J0, L) for the generic system.
/// Case 3 builds L from the within-set differences of the supports in J0
/// (a shift-invariant choice) and asserts rank L == |J0|.
Verdict component_count(const SupportFamily& family);

/// MVol_L of the J0 supports, each translated by its lexicographically
/// smallest point and written in the adapted basis of L.
Integer component_mixed_volume(const SupportFamily& family, Subset j0, const Sublattice& lattice);

}  // namespace toric
