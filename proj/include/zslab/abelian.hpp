#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zslab {

/// Element of Z^r x Z/n_1 x ... x Z/n_t. The first r coordinates are free,
/// the remaining t are torsion residues, always stored normalized into
/// [0, n_i). Comparison is lexicographic on the coordinate vector; this is
/// the canonical total order used for every canonical form downstream.
struct GroupElem {
    std::vector<std::int64_t> c;

    auto operator<=>(const GroupElem&) const = default;
};

std::size_t hash_value(const GroupElem& e);

struct GroupElemHash {
    std::size_t operator()(const GroupElem& e) const { return hash_value(e); }
};

/// A finitely generated abelian group Z^r x Z/n_1 x ... x Z/n_t.
///
/// The torsion moduli are not required to form an invariant-factor chain;
/// any list of moduli >= 2 is accepted. Free coordinates are 64-bit with
/// overflow detection.
class GroupSpec {
public:
    GroupSpec(int free_rank, std::vector<std::int64_t> torsion);

    static GroupSpec cyclic(std::int64_t n) { return GroupSpec(0, {n}); }
    static GroupSpec integers() { return GroupSpec(1, {}); }

    int free_rank() const { return free_rank_; }
    const std::vector<std::int64_t>& torsion() const { return torsion_; }
    std::size_t arity() const { return static_cast<std::size_t>(free_rank_) + torsion_.size(); }

    bool is_finite() const { return free_rank_ == 0; }
    /// Group order; nullopt when the free part is nonzero.
    std::optional<std::uint64_t> size() const;
    /// True iff some element has order two, i.e. some modulus is even.
    bool has_two_torsion() const;

    GroupElem zero() const;
    /// Validates the arity and normalizes torsion residues into [0, n_i).
    GroupElem make(std::vector<std::int64_t> coords) const;
    GroupElem add(const GroupElem& a, const GroupElem& b) const;
    GroupElem sub(const GroupElem& a, const GroupElem& b) const;
    GroupElem neg(const GroupElem& a) const;
    GroupElem scale(std::int64_t k, const GroupElem& a) const;
    /// Least m >= 1 with m*a = 0; nullopt when the free part of a is nonzero.
    std::optional<std::uint64_t> order(const GroupElem& a) const;

    /// All elements in canonical order. Throws std::invalid_argument for
    /// infinite groups.
    std::vector<GroupElem> enumerate_elements() const;

    bool operator==(const GroupSpec&) const = default;
    auto operator<=>(const GroupSpec&) const = default;

    /// Text form of the spec grammar, e.g. "Z^1xC_2" or "C_3xC_3".
    std::string to_string() const;
    /// Element literal: coordinates separated by ':', e.g. "1:0:2".
    std::string elem_to_string(const GroupElem& a) const;

private:
    void check_arity(const GroupElem& a) const;

    int free_rank_;
    std::vector<std::int64_t> torsion_;
};

namespace checked {
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t sub(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
}  // namespace checked

}  // namespace zslab
