#include "zslab/aamp.hpp"

#include <algorithm>
#include <stdexcept>

namespace zslab {

namespace {

std::int64_t mod(std::int64_t v, std::int64_t d) {
    std::int64_t r = v % d;
    return r < 0 ? r + d : r;
}

}  // namespace

bool aamp_witness_valid(const LengthSet& L, std::int64_t d, std::int64_t M, const AampWitness& w) {
    if (d < 1 || M < 0 || w.d != d || w.M != M) return false;
    // D must satisfy {0, d} ⊆ D ⊆ [0, d]
    if (!w.D.count(0) || !w.D.count(d)) return false;
    for (std::int64_t v : w.D)
        if (v < 0 || v > d) return false;
    // the three parts must reassemble L
    LengthSet rebuilt;
    for (std::int64_t v : w.initial) rebuilt.insert(w.y + v);
    for (std::int64_t v : w.central) rebuilt.insert(w.y + v);
    for (std::int64_t v : w.end) rebuilt.insert(w.y + v);
    if (rebuilt != L) return false;
    // central: nonempty, min = 0, and exactly (D + dZ) ∩ [0, max central]
    if (w.central.empty() || *w.central.begin() != 0) return false;
    std::int64_t t = *w.central.rbegin();
    for (std::int64_t v = 0; v <= t; ++v) {
        bool in_pattern = false;
        for (std::int64_t dd : w.D)
            if (mod(v - dd, d) == 0) in_pattern = true;
        if (in_pattern != (w.central.count(v) > 0)) return false;
    }
    // window constraints on the outer parts
    for (std::int64_t v : w.initial)
        if (v < -M || v > -1) return false;
    for (std::int64_t v : w.end)
        if (v < t + 1 || v > t + M) return false;
    // L ⊆ y + D + dZ
    for (std::int64_t v : w.initial) {
        bool ok = false;
        for (std::int64_t dd : w.D)
            if (mod(v - dd, d) == 0) ok = true;
        if (!ok) return false;
    }
    for (std::int64_t v : w.end) {
        bool ok = false;
        for (std::int64_t dd : w.D)
            if (mod(v - dd, d) == 0) ok = true;
        if (!ok) return false;
    }
    return true;
}

std::optional<AampWitness> is_aamp(const LengthSet& L, std::int64_t d, std::int64_t M) {
    if (L.empty()) throw std::invalid_argument("is_aamp: empty length set");
    if (d < 1) throw std::invalid_argument("is_aamp: difference must be positive");
    if (M < 0) throw std::invalid_argument("is_aamp: bound must be nonnegative");
    const std::int64_t lo = *L.begin(), hi = *L.rbegin();
    for (std::int64_t y = lo; y <= lo + M; ++y) {
        if (!L.count(y)) continue;  // min central = 0 forces y ∈ L
        // everything below y is the initial part; it must fit in [-M, -1]
        if (y - lo > M) break;
        std::vector<std::int64_t> shifted(L.begin(), L.end());
        for (std::int64_t& v : shifted) v -= y;
        for (std::int64_t t : shifted) {
            if (t < 0) continue;  // max central is an element of the central part
            if (hi - y > t + M) continue;
            // central = shifted ∩ [0, t]; read its residues off mod d
            std::set<std::int64_t> central, residues;
            bool full = true;
            for (std::int64_t v : shifted)
                if (v >= 0 && v <= t) {
                    central.insert(v);
                    residues.insert(mod(v, d));
                }
            for (std::int64_t v = 0; v <= t && full; ++v)
                if (residues.count(mod(v, d)) && !central.count(v)) full = false;
            if (!full) continue;
            // outer parts must land in D + dZ; residues above t may be added
            // to D freely since they have no representative in [0, t]
            bool outer_ok = true;
            std::set<std::int64_t> extra;
            for (std::int64_t v : shifted) {
                if (v >= 0 && v <= t) continue;
                std::int64_t r = mod(v, d);
                if (residues.count(r)) continue;
                if (r > t && r < d) {
                    extra.insert(r);
                    continue;
                }
                outer_ok = false;
                break;
            }
            if (!outer_ok) continue;
            AampWitness w;
            w.y = y;
            w.d = d;
            w.M = M;
            w.D = residues;
            w.D.insert(extra.begin(), extra.end());
            w.D.insert(0);
            w.D.insert(d);
            w.central = central;
            for (std::int64_t v : shifted) {
                if (v < 0) w.initial.insert(v);
                if (v > t) w.end.insert(v);
            }
            if (!aamp_witness_valid(L, d, M, w))
                throw std::logic_error("is_aamp produced an invalid witness");
            return w;
        }
    }
    return std::nullopt;
}

std::vector<std::pair<std::int64_t, AampWitness>> find_aamp(const LengthSet& L, std::int64_t M) {
    if (L.empty()) throw std::invalid_argument("find_aamp: empty length set");
    std::int64_t span = *L.rbegin() - *L.begin();
    std::vector<std::pair<std::int64_t, AampWitness>> out;
    for (std::int64_t d = 1; d <= std::max<std::int64_t>(span, 1); ++d) {
        if (auto w = is_aamp(L, d, M)) out.emplace_back(d, *w);
    }
    return out;
}

}  // namespace zslab
