#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "zslab/config.hpp"
#include "zslab/sequence.hpp"

namespace zslab {

/// One sign per entry of the flat expansion of a sequence, in canonical
/// order. A valid witness for S satisfies sum_i signs[i] * g_i = 0.
struct SignVector {
    std::vector<std::int8_t> signs;

    bool operator==(const SignVector&) const = default;
};

using SumSet = std::set<GroupElem>;

enum class Membership { in_B, in_Bpm_only, outside };

bool is_zero_sum(const Sequence& S);

/// Re-evaluates the witness against the flat expansion of S.
bool witness_valid(const Sequence& S, const SignVector& w);

/// A sign vector putting S in B_pm(G), or nullopt if none exists. Finite
/// groups run a forward DP over reachable elements; groups with a free part
/// run meet-in-the-middle with a hash join. Throws ResourceError above the
/// decider cap. The returned witness is re-validated before returning.
std::optional<SignVector> pm_witness(const Sequence& S, const RunConfig& cfg = {});

bool pm_member(const Sequence& S, const RunConfig& cfg = {});

Membership membership(const Sequence& S, const RunConfig& cfg = {});

/// Sigma_pm(S): all signed sums over nonempty sub-multisets.
SumSet signed_sum_set(const Sequence& S, const RunConfig& cfg = {});

/// Sigma(S): all plain sums over nonempty sub-multisets.
SumSet subset_sum_set(const Sequence& S, const RunConfig& cfg = {});

namespace detail {
// Both deciders exposed so that tests can assert their equivalence.
std::optional<SignVector> pm_witness_dp(const Sequence& S);
std::optional<SignVector> pm_witness_mitm(const Sequence& S);
}  // namespace detail

}  // namespace zslab
