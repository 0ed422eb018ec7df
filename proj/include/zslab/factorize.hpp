#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "zslab/atoms.hpp"
#include "zslab/errors.hpp"

namespace zslab {

/// A factorization of a sequence into atoms of the ambient monoid, stored
/// as a canonically nondecreasing atom list. Its length is the number of
/// atoms counted with multiplicity.
struct Factorization {
    MonoidTag monoid;
    std::vector<Sequence> atoms;

    std::int64_t length() const { return static_cast<std::int64_t>(atoms.size()); }
    bool operator==(const Factorization&) const = default;
};

bool factorization_less(const Factorization& a, const Factorization& b);

using LengthSet = std::set<std::int64_t>;
using LengthCounts = std::map<std::int64_t, std::int64_t>;

struct EnumerationLimits {
    enum class Engine { automatic, generic, bitmask };

    std::uint64_t node_budget = 200'000'000;
    int threads = 1;
    Engine engine = Engine::automatic;

    static EnumerationLimits from_config(const RunConfig& cfg) {
        EnumerationLimits lim;
        lim.node_budget = cfg.node_budget;
        lim.threads = cfg.threads;
        return lim;
    }
};

/// Budget exhaustion during factorization enumeration. Carries whatever was
/// found up to that point; the result is never silently truncated.
class EnumerationBudgetError : public BudgetError {
public:
    EnumerationBudgetError(const std::string& what, std::uint64_t nodes,
                           std::vector<Factorization> got)
        : BudgetError(what, nodes), partial(std::move(got)) {}

    std::vector<Factorization> partial;
};

/// Every factorization of S into atoms of the monoid, each exactly once, in
/// canonical order. Returns the empty set when S is not in the monoid; the
/// empty sequence has exactly one factorization of length zero. The result
/// is identical across thread counts and engines.
std::vector<Factorization> factorizations(const Sequence& S, MonoidTag m, AtomCache& cache,
                                          const EnumerationLimits& lim = {});

LengthSet lengths(const Sequence& S, MonoidTag m, AtomCache& cache,
                  const EnumerationLimits& lim = {});

LengthCounts counts_by_length(const Sequence& S, MonoidTag m, AtomCache& cache,
                              const EnumerationLimits& lim = {});

/// Successive gaps of a finite set; empty or singleton sets give the empty
/// set.
std::set<std::int64_t> delta_of_lengths(const LengthSet& L);

}  // namespace zslab
