#pragma once

#include <string>
#include <vector>

#include "zslab/aamp.hpp"
#include "zslab/realize.hpp"
#include "zslab/transfer.hpp"

namespace zslab {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;
};

enum class VerifyStatus { pass, fail, inconclusive };

/// Outcome of one independent verification run. A report with any failed
/// check has overall status fail; a run cut short by a budget is
/// inconclusive and never claims exhaustive truth.
struct VerificationReport {
    std::string subject;
    std::string mode;  // "exhaustive" | "bounded"
    bool budget_exhausted = false;
    std::uint64_t nodes = 0;
    std::vector<CheckResult> checks;

    void add(std::string name, bool pass, std::string details = "") {
        checks.push_back(CheckResult{std::move(name), pass, std::move(details)});
    }
    VerifyStatus status() const;
};

struct RealizationCheckData {
    LengthSet lengths_b, lengths_pm;
    LengthCounts counts_b, counts_pm;
};

/// Recomputes lengths and per-length counts of S in both monoids by
/// exhaustive enumeration and checks them against the target; takes only
/// the group, the sequence and the target, never the predicted data.
VerificationReport verify_realization(const GroupSpec& group, const Sequence& S, const Target& t,
                                      bool exhaustive, const RunConfig& cfg = {},
                                      RealizationCheckData* data = nullptr);

/// Wrapper around verify_realization that fills cert.verified.
VerificationReport verify_certificate(RealizationCertificate& cert, bool exhaustive,
                                      const RunConfig& cfg = {});

/// For n in {0, N, N+1, N+5}: factorization sets of S and of its image
/// agree in cardinality and per-length counts in both monoids, and the map
/// is injective on the signed-sum set of S.
VerificationReport verify_transfer(const Sequence& S, const TransferFamily& fam,
                                   const RunConfig& cfg = {});

/// Exhaustively checks, over all zero-sum sequences up to max_len with
/// support size up to max_support, that the atoms of B(G) are exactly the
/// zero-sum atoms of B_pm(G). Requires a finite group without 2-torsion
/// (CLI subcommand: lemma21).
VerificationReport verify_atom_equivalence(const GroupSpec& group, std::int64_t max_len,
                                           std::int64_t max_support, const RunConfig& cfg = {});

/// For an elementary 3-group: g^2 and g^3 are atoms of B_pm, the set of
/// lengths of g^6 is {2,3}, and hence 1 is a distance.
VerificationReport verify_elementary3_witness(const GroupSpec& group, const RunConfig& cfg = {});

struct DavenportResult {
    std::int64_t value = 0;
    Sequence witness;
};

/// Exact maximal atom length over the whole group, with a witness atom.
/// The search exhausts sequences up to length |G|.
DavenportResult davenport(const GroupSpec& group, MonoidTag m, const RunConfig& cfg = {});

}  // namespace zslab
