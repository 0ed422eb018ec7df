#include "zslab/atoms.hpp"

#include <algorithm>
#include <mutex>

namespace zslab {

const char* monoid_name(MonoidTag m) { return m == MonoidTag::B ? "B" : "Bpm"; }

bool AtomCache::lookup(int table, const Sequence& S, bool& out) {
    std::shared_lock lock(mu_);
    auto it = tables_[table].find(S);
    if (it == tables_[table].end()) return false;
    out = it->second;
    return true;
}

void AtomCache::store(int table, const Sequence& S, bool value) {
    std::unique_lock lock(mu_);
    tables_[table].emplace(S, value);
}

bool AtomCache::in_monoid(const Sequence& S, MonoidTag m) {
    if (m == MonoidTag::B) return is_zero_sum(S);
    bool v;
    if (lookup(0, S, v)) return v;
    v = pm_member(S, cfg_);
    store(0, S, v);
    return v;
}

bool AtomCache::is_atom_uncached(const Sequence& S, MonoidTag m) {
    if (S.empty()) return false;  // the empty sequence is the unit
    if (!in_monoid(S, m)) return false;
    if (S.length() == 1) return true;
    // any splitting S = T * (S/T) can be normalized to |T| <= |S|/2
    SubMultisetCursor cur(S, 1, S.length() / 2);
    Sequence T(S.group());
    while (cur.next(T)) {
        if (in_monoid(T, m) && in_monoid(quotient(S, T), m)) return false;
    }
    return true;
}

bool AtomCache::is_atom(const Sequence& S, MonoidTag m) {
    int table = m == MonoidTag::B ? 1 : 2;
    bool v;
    if (lookup(table, S, v)) return v;
    v = is_atom_uncached(S, m);
    store(table, S, v);
    return v;
}

bool divides_in_monoid(const Sequence& T, const Sequence& S, MonoidTag m, AtomCache& cache) {
    if (!divides(T, S)) return false;
    return cache.in_monoid(T, m) && cache.in_monoid(quotient(S, T), m);
}

bool is_atom(const Sequence& S, MonoidTag m, AtomCache& cache) { return cache.is_atom(S, m); }

std::vector<Sequence> atoms_dividing(const Sequence& S, MonoidTag m, AtomCache& cache) {
    std::vector<Sequence> out;
    SubMultisetCursor cur(S, 1, S.length());
    Sequence T(S.group());
    while (cur.next(T)) {
        if (cache.is_atom(T, m)) out.push_back(T);
    }
    std::sort(out.begin(), out.end(), atom_order_less);
    return out;
}

}  // namespace zslab
