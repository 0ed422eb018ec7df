#include "zslab/weighted.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "zslab/errors.hpp"

namespace zslab {

bool is_zero_sum(const Sequence& S) {
    GroupElem z = S.group().zero();
    return S.sigma() == z;
}

bool witness_valid(const Sequence& S, const SignVector& w) {
    std::vector<GroupElem> f = S.flat();
    if (w.signs.size() != f.size()) return false;
    const GroupSpec& g = S.group();
    GroupElem acc = g.zero();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (w.signs[i] != 1 && w.signs[i] != -1) return false;
        acc = g.add(acc, w.signs[i] == 1 ? f[i] : g.neg(f[i]));
    }
    return acc == g.zero();
}

static void check_cap(const Sequence& S, const RunConfig& cfg, const char* op) {
    if (S.length() > cfg.decider_cap)
        throw ResourceError(std::string(op) + ": sequence length " + std::to_string(S.length()) +
                            " exceeds decider cap " + std::to_string(cfg.decider_cap));
}

namespace detail {

std::optional<SignVector> pm_witness_dp(const Sequence& S) {
    const GroupSpec& g = S.group();
    std::vector<GroupElem> f = S.flat();
    if (f.empty()) return SignVector{};
    // layer i holds every sum reachable by signing f[0..i); parent links
    // recover one witness. std::map keeps the exploration order canonical.
    using Layer = std::map<GroupElem, std::pair<GroupElem, std::int8_t>>;
    std::vector<Layer> layers(f.size() + 1);
    layers[0].emplace(g.zero(), std::make_pair(g.zero(), std::int8_t{0}));
    for (std::size_t i = 0; i < f.size(); ++i) {
        const GroupElem neg = g.neg(f[i]);
        for (const auto& [state, parent] : layers[i]) {
            (void)parent;
            layers[i + 1].emplace(g.add(state, f[i]), std::make_pair(state, std::int8_t{1}));
            layers[i + 1].emplace(g.add(state, neg), std::make_pair(state, std::int8_t{-1}));
        }
    }
    auto hit = layers[f.size()].find(g.zero());
    if (hit == layers[f.size()].end()) return std::nullopt;
    SignVector w;
    w.signs.resize(f.size());
    GroupElem cur = g.zero();
    for (std::size_t i = f.size(); i > 0; --i) {
        const auto& [prev, sign] = layers[i].at(cur);
        w.signs[i - 1] = sign;
        cur = prev;
    }
    return w;
}

std::optional<SignVector> pm_witness_mitm(const Sequence& S) {
    const GroupSpec& g = S.group();
    std::vector<GroupElem> f = S.flat();
    if (f.empty()) return SignVector{};
    const std::size_t h = (f.size() + 1) / 2;
    const std::size_t k = f.size() - h;
    // bit j set in the counter means sign -1 on term j; counters ascend so
    // the first stored vector per sum is the lexicographically least.
    std::unordered_map<GroupElem, std::uint64_t, GroupElemHash> left;
    left.reserve(std::size_t{1} << h);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << h); ++m) {
        GroupElem s = g.zero();
        for (std::size_t j = 0; j < h; ++j)
            s = g.add(s, (m >> j) & 1 ? g.neg(f[j]) : f[j]);
        left.emplace(s, m);
    }
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
        GroupElem s = g.zero();
        for (std::size_t j = 0; j < k; ++j)
            s = g.add(s, (m >> j) & 1 ? g.neg(f[h + j]) : f[h + j]);
        auto it = left.find(g.neg(s));
        if (it == left.end()) continue;
        SignVector w;
        w.signs.resize(f.size());
        for (std::size_t j = 0; j < h; ++j) w.signs[j] = (it->second >> j) & 1 ? -1 : 1;
        for (std::size_t j = 0; j < k; ++j) w.signs[h + j] = (m >> j) & 1 ? -1 : 1;
        return w;
    }
    return std::nullopt;
}

}  // namespace detail

std::optional<SignVector> pm_witness(const Sequence& S, const RunConfig& cfg) {
    check_cap(S, cfg, "pm_witness");
    // DP state count is bounded by |G|; for huge finite groups the
    // meet-in-the-middle bound 2^(l/2) is the better one.
    auto size = S.group().size();
    bool small_finite = size.has_value() && *size <= (std::uint64_t{1} << 20);
    auto w = small_finite ? detail::pm_witness_dp(S) : detail::pm_witness_mitm(S);
    if (w && !witness_valid(S, *w)) throw std::logic_error("pm_witness produced an invalid witness");
    return w;
}

bool pm_member(const Sequence& S, const RunConfig& cfg) { return pm_witness(S, cfg).has_value(); }

Membership membership(const Sequence& S, const RunConfig& cfg) {
    if (is_zero_sum(S)) return Membership::in_B;
    if (pm_member(S, cfg)) return Membership::in_Bpm_only;
    return Membership::outside;
}

SumSet signed_sum_set(const Sequence& S, const RunConfig& cfg) {
    check_cap(S, cfg, "signed_sum_set");
    const GroupSpec& g = S.group();
    SumSet reach;  // signed sums over nonempty sub-multisets seen so far
    for (const GroupElem& t : S.flat()) {
        const GroupElem nt = g.neg(t);
        SumSet next = reach;
        for (const GroupElem& r : reach) {
            next.insert(g.add(r, t));
            next.insert(g.add(r, nt));
        }
        next.insert(t);
        next.insert(nt);
        reach.swap(next);
    }
    return reach;
}

SumSet subset_sum_set(const Sequence& S, const RunConfig& cfg) {
    check_cap(S, cfg, "subset_sum_set");
    const GroupSpec& g = S.group();
    SumSet reach;
    for (const GroupElem& t : S.flat()) {
        SumSet next = reach;
        for (const GroupElem& r : reach) next.insert(g.add(r, t));
        next.insert(t);
        reach.swap(next);
    }
    return reach;
}

}  // namespace zslab
