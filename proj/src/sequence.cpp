#include "zslab/sequence.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace zslab {

Sequence::Sequence(GroupSpec group, const std::vector<GroupElem>& elems) : group_(std::move(group)) {
    std::vector<GroupElem> sorted = elems;
    std::sort(sorted.begin(), sorted.end());
    for (const GroupElem& g : sorted) {
        if (g.c.size() != group_.arity()) throw std::invalid_argument("term arity mismatch");
        if (!terms_.empty() && terms_.back().first == g)
            ++terms_.back().second;
        else
            terms_.emplace_back(g, 1);
    }
}

Sequence Sequence::from_terms(GroupSpec group, std::vector<Term> terms) {
    Sequence s(std::move(group));
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    for (auto& [g, m] : terms) {
        if (m < 0) throw std::invalid_argument("negative multiplicity");
        if (m == 0) continue;
        if (g.c.size() != s.group_.arity()) throw std::invalid_argument("term arity mismatch");
        if (!s.terms_.empty() && s.terms_.back().first == g)
            s.terms_.back().second += m;
        else
            s.terms_.emplace_back(g, m);
    }
    return s;
}

std::int64_t Sequence::length() const {
    std::int64_t n = 0;
    for (const Term& t : terms_) n += t.second;
    return n;
}

std::int64_t Sequence::multiplicity(const GroupElem& g) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                               [](const Term& t, const GroupElem& x) { return t.first < x; });
    if (it != terms_.end() && it->first == g) return it->second;
    return 0;
}

std::vector<GroupElem> Sequence::support() const {
    std::vector<GroupElem> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back(t.first);
    return out;
}

std::vector<GroupElem> Sequence::flat() const {
    std::vector<GroupElem> out;
    out.reserve(static_cast<std::size_t>(length()));
    for (const Term& t : terms_)
        for (std::int64_t i = 0; i < t.second; ++i) out.push_back(t.first);
    return out;
}

GroupElem Sequence::sigma() const {
    GroupElem s = group_.zero();
    for (const Term& t : terms_) s = group_.add(s, group_.scale(t.second, t.first));
    return s;
}

bool Sequence::is_squarefree() const {
    for (const Term& t : terms_)
        if (t.second > 1) return false;
    return true;
}

Sequence Sequence::mul(const Sequence& other) const {
    if (group_ != other.group_) throw std::invalid_argument("sequences over different groups");
    std::vector<Term> merged = terms_;
    merged.insert(merged.end(), other.terms_.begin(), other.terms_.end());
    return from_terms(group_, std::move(merged));
}

Sequence Sequence::negated() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.emplace_back(group_.neg(t.first), t.second);
    return from_terms(group_, std::move(out));
}

std::string Sequence::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const Term& t : terms_) {
        if (!first) os << ",";
        os << group_.elem_to_string(t.first);
        if (t.second > 1) os << "^" << t.second;
        first = false;
    }
    return os.str();
}

bool divides(const Sequence& T, const Sequence& S) {
    if (T.group() != S.group()) throw std::invalid_argument("sequences over different groups");
    // both term lists are sorted; sweep
    auto it = S.terms().begin();
    for (const Sequence::Term& t : T.terms()) {
        while (it != S.terms().end() && it->first < t.first) ++it;
        if (it == S.terms().end() || it->first != t.first || it->second < t.second) return false;
    }
    return true;
}

Sequence quotient(const Sequence& S, const Sequence& T) {
    if (!divides(T, S)) throw std::invalid_argument("quotient by a non-divisor");
    std::vector<Sequence::Term> out;
    auto jt = T.terms().begin();
    for (const Sequence::Term& t : S.terms()) {
        std::int64_t m = t.second;
        if (jt != T.terms().end() && jt->first == t.first) {
            m -= jt->second;
            ++jt;
        }
        if (m > 0) out.emplace_back(t.first, m);
    }
    return Sequence::from_terms(S.group(), std::move(out));
}

std::size_t hash_value(const Sequence& s) {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(s.group().free_rank()));
    for (std::int64_t n : s.group().torsion()) mix(static_cast<std::uint64_t>(n));
    for (const Sequence::Term& t : s.terms()) {
        mix(hash_value(t.first));
        mix(static_cast<std::uint64_t>(t.second));
    }
    return static_cast<std::size_t>(h);
}

bool atom_order_less(const Sequence& a, const Sequence& b) {
    std::int64_t la = a.length(), lb = b.length();
    if (la != lb) return la < lb;
    return a.flat() < b.flat();
}

SubMultisetCursor::SubMultisetCursor(const Sequence& s, std::int64_t min_len, std::int64_t max_len)
    : seq_(s), min_len_(min_len), max_len_(max_len), counts_(s.terms().size(), 0) {
    if (min_len < 0 || min_len > max_len) throw std::invalid_argument("bad length window");
    if (s.length() < min_len) done_ = true;
}

bool SubMultisetCursor::advance() {
    // odometer over multiplicity vectors, position 0 fastest
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] < seq_.terms()[i].second) {
            ++counts_[i];
            ++cur_len_;
            return true;
        }
        cur_len_ -= counts_[i];
        counts_[i] = 0;
    }
    return false;
}

bool SubMultisetCursor::next(Sequence& out) {
    while (!done_) {
        if (first_) {
            first_ = false;
        } else if (!advance()) {
            done_ = true;
            break;
        }
        if (cur_len_ < min_len_ || cur_len_ > max_len_) continue;
        std::vector<Sequence::Term> terms;
        for (std::size_t i = 0; i < counts_.size(); ++i)
            if (counts_[i] > 0) terms.emplace_back(seq_.terms()[i].first, counts_[i]);
        out = Sequence::from_terms(seq_.group(), std::move(terms));
        return true;
    }
    return false;
}

std::vector<Sequence> sub_multisets(const Sequence& s, std::int64_t min_len, std::int64_t max_len) {
    std::vector<Sequence> out;
    SubMultisetCursor cur(s, min_len, max_len);
    Sequence t(s.group());
    while (cur.next(t)) out.push_back(t);
    return out;
}

}  // namespace zslab
