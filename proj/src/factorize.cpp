#include "zslab/factorize.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <map>
#include <thread>

namespace zslab {

bool factorization_less(const Factorization& a, const Factorization& b) {
    if (a.monoid != b.monoid) return a.monoid < b.monoid;
    std::size_t n = std::min(a.atoms.size(), b.atoms.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (atom_order_less(a.atoms[i], b.atoms[i])) return true;
        if (atom_order_less(b.atoms[i], a.atoms[i])) return false;
    }
    return a.atoms.size() < b.atoms.size();
}

namespace {

// ---------------------------------------------------------------------------
// shared budget / cancellation state for one enumeration call
struct BudgetState {
    std::uint64_t limit;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> exhausted{false};

    // returns false once the budget is gone; callers unwind gracefully
    bool spend(std::uint64_t k = 1) {
        if (exhausted.load(std::memory_order_relaxed)) return false;
        if (nodes.fetch_add(k, std::memory_order_relaxed) + k > limit) {
            exhausted.store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }
};

// Runs fn(branch_index) for every index in [0, count) on `threads` workers.
// Branch outputs are indexed, so the merged result is schedule-independent.
void parallel_branches(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int n = std::min<int>(threads, static_cast<int>(count));
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// generic multiset path

struct GenericEnum {
    const Sequence& S;
    MonoidTag m;
    AtomCache& cache;
    std::vector<Sequence> atoms;  // canonical atom order
    BudgetState budget;

    GenericEnum(const Sequence& s, MonoidTag mm, AtomCache& c, const EnumerationLimits& lim)
        : S(s), m(mm), cache(c) {
        budget.limit = lim.node_budget;
    }

    void rec(const Sequence& remainder, std::size_t start, std::vector<Sequence>& current,
             std::vector<Factorization>& out) {
        if (!budget.spend()) return;
        if (remainder.empty()) {
            emit(current, out);
            return;
        }
        for (std::size_t i = start; i < atoms.size(); ++i) {
            const Sequence& A = atoms[i];
            if (A.length() > remainder.length()) break;  // atoms sorted by length
            if (!divides(A, remainder)) continue;
            Sequence rest = quotient(remainder, A);
            if (m == MonoidTag::Bpm && !cache.in_monoid(rest, MonoidTag::Bpm)) continue;
            current.push_back(A);
            rec(rest, i, current, out);
            current.pop_back();
            if (budget.exhausted.load(std::memory_order_relaxed)) return;
        }
    }

    void emit(const std::vector<Sequence>& current, std::vector<Factorization>& out) const {
        Sequence prod(S.group());
        for (const Sequence& a : current) prod = prod.mul(a);
        if (prod != S) throw std::logic_error("factorization does not multiply back to its input");
        out.push_back(Factorization{m, current});
    }

    std::vector<Factorization> run(int threads) {
        std::vector<Factorization> out;
        if (!cache.in_monoid(S, m)) return out;
        if (S.empty()) {
            out.push_back(Factorization{m, {}});
            return out;
        }
        atoms = atoms_dividing(S, m, cache);

        // first-level branches explored in parallel; concatenation in branch
        // order reproduces the serial emission order exactly
        struct Branch {
            std::size_t idx;
            Sequence rest;
        };
        std::vector<Branch> branches;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (!divides(atoms[i], S)) continue;
            Sequence rest = quotient(S, atoms[i]);
            if (m == MonoidTag::Bpm && !cache.in_monoid(rest, MonoidTag::Bpm)) continue;
            branches.push_back(Branch{i, std::move(rest)});
        }
        std::vector<std::vector<Factorization>> results(branches.size());
        parallel_branches(branches.size(), threads, [&](std::size_t b) {
            std::vector<Sequence> current{atoms[branches[b].idx]};
            rec(branches[b].rest, branches[b].idx, current, results[b]);
        });
        for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
        if (budget.exhausted.load()) {
            throw EnumerationBudgetError("factorization enumeration exceeded its node budget",
                                         budget.nodes.load(), std::move(out));
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// bitmask engine for squarefree sequences over finite groups
//
// Terms are bits; sub-multisets are masks. The terms are first split into
// components that share no coordinate: sums decompose componentwise, so a
// mask is (pm-)zero-sum iff each component slice is, and every atom lives
// inside a single component. Per component the engine tabulates membership
// and atomhood for all 2^k slices, which keeps the hard sweeps local.

constexpr int kMaskEngineMaxBits = 26;
constexpr int kMaskEngineMaxMixedBits = 18;  // components that need the signed sweep

struct PackedGroup {
    std::vector<std::int64_t> moduli;
    std::vector<std::int64_t> stride;
    bool all_two = false;

    static std::optional<PackedGroup> build(const GroupSpec& g) {
        if (!g.is_finite()) return std::nullopt;
        PackedGroup p;
        p.moduli = g.torsion();
        p.stride.resize(p.moduli.size());
        std::int64_t w = 1;
        for (std::size_t i = 0; i < p.moduli.size(); ++i) {
            p.stride[i] = w;
            if (w > (std::int64_t{1} << 62) / std::max<std::int64_t>(p.moduli[i], 1))
                return std::nullopt;
            w *= p.moduli[i];
        }
        p.all_two = std::all_of(p.moduli.begin(), p.moduli.end(),
                                [](std::int64_t n) { return n == 2; });
        return p;
    }

    std::int64_t pack(const GroupElem& e) const {
        std::int64_t v = 0;
        for (std::size_t i = 0; i < moduli.size(); ++i) v += e.c[i] * stride[i];
        return v;
    }

    std::int64_t add(std::int64_t a, std::int64_t b) const {
        if (all_two) return a ^ b;
        std::int64_t v = 0;
        for (std::size_t i = 0; i < moduli.size(); ++i) {
            std::int64_t da = (a / stride[i]) % moduli[i];
            std::int64_t db = (b / stride[i]) % moduli[i];
            v += ((da + db) % moduli[i]) * stride[i];
        }
        return v;
    }
};

struct MaskComponent {
    std::vector<int> ids;  // global term indices, ascending
    std::vector<char> zs, pm, atom_b, atom_pm;
};

struct MaskEngine {
    const Sequence& S;
    MonoidTag m;
    const EnumerationLimits& lim;
    PackedGroup pg;
    std::vector<GroupElem> terms;
    int n = 0;
    std::vector<MaskComponent> comps;
    std::vector<int> comp_of_term, bit_of_term;
    std::vector<std::uint64_t> atom_masks;
    std::vector<Sequence> atom_seqs;
    BudgetState budget;

    MaskEngine(const Sequence& s, MonoidTag mm, const EnumerationLimits& l, PackedGroup p)
        : S(s), m(mm), lim(l), pg(std::move(p)) {
        budget.limit = l.node_budget;
    }

    void split_components() {
        const std::size_t arity = S.group().arity();
        std::vector<int> parent(n);
        for (int i = 0; i < n; ++i) parent[i] = i;
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::vector<int> coord_owner(arity, -1);
        for (int i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < arity; ++c) {
                if (terms[i].c[c] == 0) continue;
                if (coord_owner[c] < 0)
                    coord_owner[c] = i;
                else
                    parent[find(i)] = find(coord_owner[c]);
            }
        }
        std::map<int, std::vector<int>> groups;
        for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
        comp_of_term.resize(n);
        bit_of_term.resize(n);
        for (auto& [root, ids] : groups) {
            (void)root;
            MaskComponent comp;
            comp.ids = ids;
            for (std::size_t b = 0; b < ids.size(); ++b) {
                comp_of_term[ids[b]] = static_cast<int>(comps.size());
                bit_of_term[ids[b]] = static_cast<int>(b);
            }
            comps.push_back(std::move(comp));
        }
    }

    void tabulate(MaskComponent& comp) {
        const int k = static_cast<int>(comp.ids.size());
        const std::size_t count = std::size_t{1} << k;
        bool two_torsion_only = true;
        std::vector<std::int64_t> packed(k);
        for (int b = 0; b < k; ++b) {
            packed[b] = pg.pack(terms[comp.ids[b]]);
            if (pg.add(packed[b], packed[b]) != 0) two_torsion_only = false;
        }
        if (k > kMaskEngineMaxBits || (!two_torsion_only && k > kMaskEngineMaxMixedBits))
            throw EnumerationBudgetError(
                "bitmask engine: component of " + std::to_string(k) + " terms is out of range",
                budget.nodes.load(), {});
        std::uint64_t sweep_cost = two_torsion_only ? count * (k + 1) : 1;
        if (!two_torsion_only) {
            for (int i = 0; i < k; ++i) sweep_cost *= 3;
            sweep_cost = 2 * sweep_cost + count * (k + 1);
        }
        if (!budget.spend(sweep_cost))
            throw EnumerationBudgetError("bitmask engine: component tables exceed the node budget",
                                         budget.nodes.load(), {});

        std::vector<std::int64_t> sums(count, 0);
        for (std::size_t mask = 1; mask < count; ++mask) {
            std::size_t low = mask & (~mask + 1);
            sums[mask] = pg.add(sums[mask ^ low], packed[std::countr_zero(low)]);
        }
        comp.zs.assign(count, 0);
        for (std::size_t mask = 0; mask < count; ++mask) comp.zs[mask] = sums[mask] == 0;

        if (two_torsion_only) {
            // every support element has order <= 2, so B and Bpm coincide here
            comp.pm = comp.zs;
        } else {
            std::vector<std::int64_t> dbl(count);
            for (std::size_t mask = 0; mask < count; ++mask)
                dbl[mask] = pg.add(sums[mask], sums[mask]);
            comp.pm.assign(count, 0);
            for (std::size_t mask = 0; mask < count; ++mask) {
                // signs split the mask into a plus-part u and its complement:
                // the signed sum vanishes iff 2*sum(u) = sum(mask)
                std::size_t u = mask;
                while (true) {
                    if (dbl[u] == sums[mask]) {
                        comp.pm[mask] = 1;
                        break;
                    }
                    if (u == 0) break;
                    u = (u - 1) & mask;
                }
            }
        }

        // a slice is an atom of B iff it is zero-sum and no proper nonempty
        // sub-slice is
        std::vector<char> has_zs(count, 0);
        comp.atom_b.assign(count, 0);
        for (std::size_t mask = 1; mask < count; ++mask) {
            bool proper = false;
            for (std::size_t rest = mask; rest;) {
                std::size_t low = rest & (~rest + 1);
                rest ^= low;
                if (has_zs[mask ^ low]) {
                    proper = true;
                    break;
                }
            }
            has_zs[mask] = proper || comp.zs[mask];
            comp.atom_b[mask] = comp.zs[mask] && !proper;
        }

        if (two_torsion_only) {
            comp.atom_pm = comp.atom_b;
        } else {
            comp.atom_pm.assign(count, 0);
            for (std::size_t mask = 1; mask < count; ++mask) {
                if (!comp.pm[mask]) continue;
                bool split = false;
                for (std::size_t u = (mask - 1) & mask; u; u = (u - 1) & mask) {
                    if (comp.pm[u] && comp.pm[mask ^ u]) {
                        split = true;
                        break;
                    }
                }
                comp.atom_pm[mask] = !split;
            }
        }
    }

    bool member(MonoidTag tag, std::uint64_t gmask) const {
        std::vector<std::uint32_t> locals(comps.size(), 0);
        std::uint64_t rest = gmask;
        while (rest) {
            int t = std::countr_zero(rest);
            rest &= rest - 1;
            locals[comp_of_term[t]] |= std::uint32_t{1} << bit_of_term[t];
        }
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const auto& tab = tag == MonoidTag::B ? comps[c].zs : comps[c].pm;
            if (!tab[locals[c]]) return false;
        }
        return true;
    }

    void collect_atoms() {
        struct Entry {
            Sequence seq;
            std::uint64_t mask;
        };
        std::vector<Entry> entries;
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const auto& comp = comps[c];
            const auto& tab = m == MonoidTag::B ? comp.atom_b : comp.atom_pm;
            for (std::size_t lmask = 1; lmask < tab.size(); ++lmask) {
                if (!tab[lmask]) continue;
                std::uint64_t gmask = 0;
                std::vector<GroupElem> elems;
                for (std::size_t b = 0; b < comp.ids.size(); ++b) {
                    if (lmask >> b & 1) {
                        gmask |= std::uint64_t{1} << comp.ids[b];
                        elems.push_back(terms[comp.ids[b]]);
                    }
                }
                entries.push_back(Entry{Sequence(S.group(), elems), gmask});
            }
        }
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return atom_order_less(a.seq, b.seq); });
        for (auto& e : entries) {
            atom_seqs.push_back(std::move(e.seq));
            atom_masks.push_back(e.mask);
        }
    }

    void rec(std::uint64_t remainder, std::size_t start, std::vector<std::size_t>& current,
             std::vector<Factorization>& out) {
        if (!budget.spend()) return;
        if (remainder == 0) {
            Factorization f{m, {}};
            f.atoms.reserve(current.size());
            for (std::size_t idx : current) f.atoms.push_back(atom_seqs[idx]);
            out.push_back(std::move(f));
            return;
        }
        for (std::size_t i = start; i < atom_masks.size(); ++i) {
            std::uint64_t a = atom_masks[i];
            if (a & ~remainder) continue;
            std::uint64_t rest = remainder ^ a;
            if (m == MonoidTag::Bpm && !member(MonoidTag::Bpm, rest)) continue;
            current.push_back(i);
            rec(rest, i + 1, current, out);
            current.pop_back();
            if (budget.exhausted.load(std::memory_order_relaxed)) return;
        }
    }

    std::vector<Factorization> run() {
        terms = S.flat();
        n = static_cast<int>(terms.size());
        split_components();
        for (auto& comp : comps) tabulate(comp);

        std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        std::vector<Factorization> out;
        if (!member(m, full)) return out;
        if (n == 0) {
            out.push_back(Factorization{m, {}});
            return out;
        }
        collect_atoms();

        struct Branch {
            std::size_t idx;
            std::uint64_t rest;
        };
        std::vector<Branch> branches;
        for (std::size_t i = 0; i < atom_masks.size(); ++i) {
            if (atom_masks[i] & ~full) continue;
            std::uint64_t rest = full ^ atom_masks[i];
            if (m == MonoidTag::Bpm && !member(MonoidTag::Bpm, rest)) continue;
            branches.push_back(Branch{i, rest});
        }
        std::vector<std::vector<Factorization>> results(branches.size());
        parallel_branches(branches.size(), lim.threads, [&](std::size_t b) {
            std::vector<std::size_t> current{branches[b].idx};
            rec(branches[b].rest, branches[b].idx + 1, current, results[b]);
        });
        for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
        if (budget.exhausted.load()) {
            throw EnumerationBudgetError("factorization enumeration exceeded its node budget",
                                         budget.nodes.load(), std::move(out));
        }
        return out;
    }
};

}  // namespace

std::vector<Factorization> factorizations(const Sequence& S, MonoidTag m, AtomCache& cache,
                                          const EnumerationLimits& lim) {
    using Engine = EnumerationLimits::Engine;
    bool mask_ok = S.is_squarefree() && S.group().is_finite() &&
                   S.length() <= kMaskEngineMaxBits;
    std::optional<PackedGroup> pg;
    if (mask_ok) {
        pg = PackedGroup::build(S.group());
        mask_ok = pg.has_value();
    }
    Engine engine = lim.engine;
    if (engine == Engine::automatic) engine = mask_ok && S.length() >= 10 ? Engine::bitmask : Engine::generic;
    if (engine == Engine::bitmask) {
        if (!mask_ok)
            throw std::invalid_argument(
                "bitmask engine requires a squarefree sequence over a packable finite group");
        return MaskEngine(S, m, lim, std::move(*pg)).run();
    }
    return GenericEnum(S, m, cache, lim).run(lim.threads);
}

LengthSet lengths(const Sequence& S, MonoidTag m, AtomCache& cache, const EnumerationLimits& lim) {
    LengthSet out;
    for (const Factorization& f : factorizations(S, m, cache, lim)) out.insert(f.length());
    return out;
}

LengthCounts counts_by_length(const Sequence& S, MonoidTag m, AtomCache& cache,
                              const EnumerationLimits& lim) {
    LengthCounts out;
    for (const Factorization& f : factorizations(S, m, cache, lim)) ++out[f.length()];
    return out;
}

std::set<std::int64_t> delta_of_lengths(const LengthSet& L) {
    std::set<std::int64_t> out;
    std::optional<std::int64_t> prev;
    for (std::int64_t v : L) {
        if (prev) out.insert(v - *prev);
        prev = v;
    }
    return out;
}

}  // namespace zslab
