#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zslab/factorize.hpp"

namespace zslab {

/// A realization target: the wanted set of lengths L ⊆ N≥2 together with
/// the wanted number of factorizations f(k) ≥ 1 per length k ∈ L.
struct Target {
    std::set<std::int64_t> L;
    std::map<std::int64_t, std::int64_t> f;

    static Target make(std::set<std::int64_t> L, std::map<std::int64_t, std::int64_t> f);
    std::int64_t s() const;  // total number of prescribed factorizations
    std::int64_t min_length() const { return *L.begin(); }
};

struct NamedFactorization {
    std::string name;
    std::vector<Sequence> atoms;  // canonical atom order
};

struct PredictedData {
    LengthSet lengths;
    LengthCounts counts;       // per-length factorization counts
    bool exact_at_min = true;  // grid targets only promise a floor at min L
    std::vector<NamedFactorization> factorizations;
};

struct VerifiedData {
    std::string mode;
    LengthSet lengths_b, lengths_pm;
    LengthCounts counts_b, counts_pm;
    bool pass = false;
};

/// A constructed group and sequence realizing a target, together with the
/// predicted length/count data and, once checked, the recomputed data.
struct RealizationCertificate {
    Target target;
    std::int64_t field_char = 0;
    std::string construction;
    GroupSpec group;
    Sequence sequence;
    PredictedData predicted;
    std::optional<VerifiedData> verified;
};

bool is_prime(std::int64_t q);

/// The product-grid construction for targets with 2 ∈ L and s ≥ 3: the
/// function space F_q^X over the grid X = X_1 x ... x X_s, the subspace V
/// spanned by all fiber indicators, and the quotient G = F_q^X / V. Cosets
/// are represented by the residue of pivot elimination against a fixed
/// row-reduced basis of V, giving coordinates in F_q^(|X| - rank V).
class GridSetting {
public:
    GridSetting(const Target& t, std::int64_t q);

    std::int64_t q() const { return q_; }
    const std::vector<std::int64_t>& sizes() const { return sizes_; }
    const std::vector<std::vector<int>>& points() const { return points_; }
    int rank() const { return rank_; }
    const GroupSpec& group() const { return group_; }

    std::size_t point_index(const std::vector<int>& pt) const;

    // characteristic vectors in F_q^X
    std::vector<std::int64_t> chi_point(std::size_t index) const;
    std::vector<std::int64_t> chi_fiber(int factor, int value) const;
    std::vector<std::int64_t> chi_all() const;

    /// Coordinates of vec + V in F_q^m.
    GroupElem coset(std::vector<std::int64_t> vec) const;
    bool in_V(std::vector<std::int64_t> vec) const;

private:
    std::int64_t q_;
    std::vector<std::int64_t> sizes_;
    std::vector<std::vector<int>> points_;
    std::vector<std::vector<std::int64_t>> basis_;  // row-reduced generators of V
    std::vector<int> pivot_of_row_;
    std::vector<int> nonpivots_;
    int rank_ = 0;
    GroupSpec group_{0, {}};
};

/// Grid realization; requires 2 ∈ L and s ≥ 3.
RealizationCertificate realize_grid(const Target& t, std::int64_t q);

/// Full realization over F_q for an arbitrary target, dispatching on the
/// shape of (L, f) and on the field characteristic.
RealizationCertificate realize(const Target& t, std::int64_t q);

}  // namespace zslab
