#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zslab/abelian.hpp"

namespace zslab {

/// A sequence over G: an element of the free abelian monoid F(G), i.e. a
/// finite multiset of group elements. Stored multiplicity-compressed as a
/// list of (element, multiplicity) pairs, strictly increasing in the
/// canonical element order. Two sequences are equal iff their canonical
/// forms are identical. Immutable after construction.
class Sequence {
public:
    using Term = std::pair<GroupElem, std::int64_t>;

    explicit Sequence(GroupSpec group) : group_(std::move(group)) {}
    Sequence(GroupSpec group, const std::vector<GroupElem>& elems);
    static Sequence from_terms(GroupSpec group, std::vector<Term> terms);

    const GroupSpec& group() const { return group_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool empty() const { return terms_.empty(); }
    std::int64_t length() const;
    std::size_t distinct_count() const { return terms_.size(); }
    std::int64_t multiplicity(const GroupElem& g) const;
    std::vector<GroupElem> support() const;
    /// Flat expansion in canonical order, one entry per term.
    std::vector<GroupElem> flat() const;

    GroupElem sigma() const;
    bool is_squarefree() const;
    Sequence mul(const Sequence& other) const;
    Sequence negated() const;

    auto operator<=>(const Sequence&) const = default;

    std::string to_string() const;

private:
    GroupSpec group_;
    std::vector<Term> terms_;
};

/// True iff v_g(T) <= v_g(S) for every g (divisibility in F(G)).
bool divides(const Sequence& T, const Sequence& S);
/// The U with T * U = S. Throws std::invalid_argument unless divides(T, S).
Sequence quotient(const Sequence& S, const Sequence& T);

std::size_t hash_value(const Sequence& s);

struct SequenceHash {
    std::size_t operator()(const Sequence& s) const { return hash_value(s); }
};

/// Canonical order on atoms and factorization parts: by length first, then
/// lexicographically on the flat expansion.
bool atom_order_less(const Sequence& a, const Sequence& b);

/// Walks every distinct sub-multiset T | S with min_len <= |T| <= max_len,
/// each exactly once. The walk order is the multiplicity-vector odometer
/// (first distinct element fastest); independent cursors may run in
/// parallel.
class SubMultisetCursor {
public:
    SubMultisetCursor(const Sequence& s, std::int64_t min_len, std::int64_t max_len);
    bool next(Sequence& out);

private:
    const Sequence& seq_;
    std::int64_t min_len_, max_len_;
    std::vector<std::int64_t> counts_;
    std::int64_t cur_len_ = 0;
    bool done_ = false;
    bool first_ = true;

    bool advance();
};

std::vector<Sequence> sub_multisets(const Sequence& s, std::int64_t min_len, std::int64_t max_len);

}  // namespace zslab
