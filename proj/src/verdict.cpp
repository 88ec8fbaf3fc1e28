#include "toric/verdict.hpp"

#include <stdexcept>

namespace toric {

Subset Subset::of(std::initializer_list<std::size_t> members) {
    return of(std::span<const std::size_t>(members.begin(), members.size()));
}

Subset Subset::of(std::span<const std::size_t> members) {
    std::uint32_t mask = 0;
    for (std::size_t i : members) {
        if (i >= 32) throw std::out_of_range("subset member out of range");
        mask |= 1u << i;
    }
    return Subset(mask);
}

std::vector<std::size_t> Subset::members() const {
    std::vector<std::size_t> out;
    for (std::uint32_t m = mask_; m; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
}

bool canonical_less(Subset a, Subset b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
}

std::string Subset::to_string() const {
    std::string s = "{";
    bool first = true;
    for (std::size_t i : members()) {
        if (!first) s += ',';
        s += std::to_string(i + 1);
        first = false;
    }
    return s + "}";
}

std::string Verdict::tag() const {
    struct Visitor {
        std::string operator()(const Irreducible&) const { return "irreducible"; }
        std::string operator()(const Empty&) const { return "empty"; }
        std::string operator()(const Components&) const { return "components"; }
        std::string operator()(const Inconclusive&) const { return "inconclusive"; }
    };
    return std::visit(Visitor{}, kind_);
}

}  // namespace toric
