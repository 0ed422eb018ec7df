#pragma once

#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "zslab/config.hpp"
#include "zslab/weighted.hpp"

namespace zslab {

/// Selects the ambient monoid: B(G) (zero-sum sequences) or B_pm(G)
/// (plus-minus weighted zero-sum sequences).
enum class MonoidTag { B, Bpm };

const char* monoid_name(MonoidTag m);

struct Atom {
    Sequence seq;
    MonoidTag monoid;
};

/// Memoized membership and atom predicates, keyed by canonical sequence
/// form. Safe for concurrent readers with gated inserts; entries are pure
/// values, so results never depend on interleaving.
class AtomCache {
public:
    explicit AtomCache(RunConfig cfg = {}) : cfg_(std::move(cfg)) {}

    const RunConfig& config() const { return cfg_; }

    /// S in B(G) resp. B_pm(G).
    bool in_monoid(const Sequence& S, MonoidTag m);
    bool is_atom(const Sequence& S, MonoidTag m);

private:
    bool lookup(int table, const Sequence& S, bool& out);
    void store(int table, const Sequence& S, bool value);
    bool is_atom_uncached(const Sequence& S, MonoidTag m);

    RunConfig cfg_;
    mutable std::shared_mutex mu_;
    // tables: 0 = pm membership, 1 = atom in B, 2 = atom in Bpm
    std::unordered_map<Sequence, bool, SequenceHash> tables_[3];
};

/// Divisibility inside the monoid: T | S in F(G) with both T and S/T in the
/// monoid. For B the complement is zero-sum automatically whenever T and S
/// are; for B_pm it is checked independently.
bool divides_in_monoid(const Sequence& T, const Sequence& S, MonoidTag m, AtomCache& cache);

bool is_atom(const Sequence& S, MonoidTag m, AtomCache& cache);

/// All distinct sub-multisets of S that are atoms of the monoid, in
/// canonical atom order (length, then lexicographic flat form).
std::vector<Sequence> atoms_dividing(const Sequence& S, MonoidTag m, AtomCache& cache);

}  // namespace zslab
