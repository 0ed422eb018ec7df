#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "zslab/factorize.hpp"

namespace zslab {

/// Decomposition L = y + (initial ∪ central ∪ end) witnessing that L is an
/// almost arithmetic multiprogression with difference d, period D and bound
/// M: the central part starts at 0 and equals (D + dZ) ∩ [0, max central],
/// the initial part sits in [-M,-1], the end part in max central + [1,M],
/// and every part lies in D + dZ.
struct AampWitness {
    std::int64_t y = 0;
    std::int64_t d = 1;
    std::set<std::int64_t> D;  // {0, d} ⊆ D ⊆ [0, d]
    std::int64_t M = 0;
    std::set<std::int64_t> initial, central, end;
};

/// Checks every invariant of the witness against L, d and M.
bool aamp_witness_valid(const LengthSet& L, std::int64_t d, std::int64_t M, const AampWitness& w);

/// A witness that L is an AAMP with difference d and bound M, or nullopt.
/// The search tries y ascending, then max central ascending, and returns the
/// first witness found, so the result is the lexicographically least
/// (y, max central) decomposition.
std::optional<AampWitness> is_aamp(const LengthSet& L, std::int64_t d, std::int64_t M);

/// All differences d in [1, max(1, span of L)] admitting a witness.
std::vector<std::pair<std::int64_t, AampWitness>> find_aamp(const LengthSet& L, std::int64_t M);

}  // namespace zslab
