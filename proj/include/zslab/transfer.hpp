#pragma once

#include <cstdint>
#include <vector>

#include "zslab/config.hpp"
#include "zslab/sequence.hpp"

namespace zslab {

/// A length-preserving reduction map out of Z^r x T. With modulus 0 the
/// free part is collapsed through the linear form psi given by `coeffs`,
/// landing in Z x T; with modulus n >= 2 every free coordinate is reduced
/// mod n, landing in (Z/nZ)^r x T. The torsion part is carried identically.
struct TransferMap {
    GroupSpec source;
    GroupSpec target;
    std::vector<std::int64_t> coeffs;
    std::int64_t modulus = 0;
};

/// The maps produced for one sequence S: the linear form psi (nonvanishing
/// on every difference of projected signed sums), the per-term bound
/// 1 + sum |psi(p(g_i))|, and the threshold N from which every reduction
/// mod n >= N is injective on the signed-sum set of S.
struct TransferFamily {
    GroupSpec source;
    std::vector<std::int64_t> coeffs;
    std::int64_t c1_bound = 1;
    std::int64_t threshold = 2;
};

/// Builds the transfer data for S in B_pm(Z^r x T), r >= 1. Candidate
/// coefficient vectors are tried by increasing max-norm, then
/// lexicographically, skipping sign-flips; the first vector avoiding every
/// difference hyperplane wins.
TransferFamily transfer_maps(const Sequence& S, const RunConfig& cfg = {});

/// The map for modulus n: n = 0 gives the Z-target, n >= threshold the
/// modular target. Any other n is an error.
TransferMap make_transfer_map(const TransferFamily& fam, std::int64_t n);

GroupElem apply_transfer_elem(const TransferMap& map, const GroupElem& e);

/// Image sequence; preserves length, and squarefreeness for n = 0 or
/// n >= threshold.
Sequence apply_transfer(const Sequence& S, const TransferMap& map);

}  // namespace zslab
