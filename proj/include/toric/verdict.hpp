#pragma once

// Verdicts on generic complete intersections and the certificates that back
// them.

#include "toric/field.hpp"
#include "toric/lattice.hpp"

#include <bit>
#include <initializer_list>
#include <span>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace toric {

/// Subset of equation indices {0, ..., m-1}, m <= 32.
class Subset {
public:
    constexpr Subset() = default;
    constexpr explicit Subset(std::uint32_t mask) : mask_(mask) {}
    static Subset of(std::initializer_list<std::size_t> members);
    static Subset of(std::span<const std::size_t> members);
    static Subset all(std::size_t m) { return Subset(m >= 32 ? ~0u : ((1u << m) - 1u)); }

    std::uint32_t mask() const { return mask_; }
    std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
    bool empty() const { return mask_ == 0; }
    bool contains(std::size_t i) const { return (mask_ >> i) & 1u; }
    bool is_subset_of(Subset o) const { return (mask_ & ~o.mask_) == 0; }
    /// Members in increasing order, 0-based.
    std::vector<std::size_t> members() const;

    friend Subset operator|(Subset a, Subset b) { return Subset(a.mask_ | b.mask_); }
    friend Subset operator&(Subset a, Subset b) { return Subset(a.mask_ & b.mask_); }
    friend bool operator==(Subset, Subset) = default;

    /// Certificate order: smaller cardinality first, then lexicographic on
    /// the sorted member lists.
    friend bool canonical_less(Subset a, Subset b);

    /// "{1,2}" with 1-based members, as written in reports.
    std::string to_string() const;

private:
    std::uint32_t mask_ = 0;
};

/// Adjusted collection for one coefficient matrix: the rows transformed by
/// `transform` are adjusted to `deltas` (column indices into the support).
struct AdjustedCollection {
    std::vector<std::vector<std::size_t>> deltas;
    ScalarMatrix transform;
    /// Column order that produced the collection, when it came from an order;
    /// empty for fibre-adjusted collections.
    std::vector<std::size_t> order;
    std::vector<std::size_t> pivots;
};

/// One adjusted collection per coefficient matrix, in input order.
struct EciCertificate {
    std::vector<AdjustedCollection> collections;
};

struct Irreducible {};
struct Empty {};
struct Components {
    Integer count;
    Subset j0;
    Sublattice lattice;
};
struct Inconclusive {
    std::string reason;
    std::size_t explored_states = 0;
};

class Verdict {
public:
    using Kind = std::variant<Irreducible, Empty, Components, Inconclusive>;

    Verdict(Kind kind) : kind_(std::move(kind)) {}
    Verdict(Kind kind, EciCertificate cert) : kind_(std::move(kind)), certificate_(std::move(cert)) {}

    const Kind& kind() const { return kind_; }
    bool is_irreducible() const { return std::holds_alternative<Irreducible>(kind_); }
    bool is_empty() const { return std::holds_alternative<Empty>(kind_); }
    bool is_inconclusive() const { return std::holds_alternative<Inconclusive>(kind_); }
    const Components* components() const { return std::get_if<Components>(&kind_); }
    const Inconclusive* inconclusive() const { return std::get_if<Inconclusive>(&kind_); }
    const std::optional<EciCertificate>& certificate() const { return certificate_; }

    /// "irreducible", "empty", "components", "inconclusive".
    std::string tag() const;

private:
    Kind kind_;
    std::optional<EciCertificate> certificate_;
};

}  // namespace toric
