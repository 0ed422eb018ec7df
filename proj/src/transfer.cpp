#include "zslab/transfer.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "zslab/errors.hpp"
#include "zslab/weighted.hpp"

namespace zslab {

namespace {

std::vector<std::int64_t> free_part(const GroupSpec& g, const GroupElem& e) {
    return std::vector<std::int64_t>(e.c.begin(), e.c.begin() + g.free_rank());
}

std::vector<std::int64_t> torsion_part(const GroupSpec& g, const GroupElem& e) {
    return std::vector<std::int64_t>(e.c.begin() + g.free_rank(), e.c.end());
}

std::int64_t dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = checked::add(s, checked::mul(a[i], b[i]));
    return s;
}

/// Enumerates candidate coefficient vectors: shells of increasing max-norm,
/// lexicographic within a shell, first nonzero coordinate positive (psi and
/// -psi vanish on the same set, so one representative per sign pair
/// suffices).
struct CoeffSearch {
    int r;
    std::int64_t norm = 1;
    std::vector<std::int64_t> cur;

    explicit CoeffSearch(int rank) : r(rank), cur(rank, -1) {
        cur.back() = -2;  // one step before the first vector of shell 1
    }

    bool sign_canonical() const {
        for (std::int64_t v : cur) {
            if (v > 0) return true;
            if (v < 0) return false;
        }
        return false;  // all zero: not a valid candidate
    }

    bool on_shell() const {
        std::int64_t m = 0;
        for (std::int64_t v : cur) m = std::max(m, std::abs(v));
        return m == norm;
    }

    const std::vector<std::int64_t>& next() {
        while (true) {
            int i = r - 1;
            while (i >= 0 && cur[i] == norm) {
                cur[i] = -norm;
                --i;
            }
            if (i < 0) {
                ++norm;
                std::fill(cur.begin(), cur.end(), -norm);
            } else {
                ++cur[i];
            }
            if (on_shell() && sign_canonical()) return cur;
        }
    }
};

}  // namespace

TransferFamily transfer_maps(const Sequence& S, const RunConfig& cfg) {
    const GroupSpec& g = S.group();
    const int r = g.free_rank();
    if (r < 1) throw std::invalid_argument("transfer_maps: the group needs a free part");
    if (!pm_member(S, cfg))
        throw std::invalid_argument("transfer_maps: S is not a plus-minus weighted zero-sum sequence");

    SumSet sums = signed_sum_set(S, cfg);

    // difference vectors of the projected signed sums
    std::vector<std::vector<std::int64_t>> projected;
    {
        std::set<std::vector<std::int64_t>> seen;
        for (const GroupElem& e : sums) seen.insert(free_part(g, e));
        projected.assign(seen.begin(), seen.end());
    }
    std::set<std::vector<std::int64_t>> diffs;
    for (std::size_t i = 0; i < projected.size(); ++i)
        for (std::size_t j = i + 1; j < projected.size(); ++j) {
            std::vector<std::int64_t> d(r);
            for (int k = 0; k < r; ++k) d[k] = checked::sub(projected[i][k], projected[j][k]);
            diffs.insert(std::move(d));
        }

    CoeffSearch search(r);
    std::vector<std::int64_t> a;
    while (true) {
        const std::vector<std::int64_t>& cand = search.next();
        bool ok = true;
        for (const auto& d : diffs)
            if (dot(cand, d) == 0) {
                ok = false;
                break;
            }
        if (ok) {
            a = cand;
            break;
        }
    }

    std::int64_t c1 = 1;
    for (const GroupElem& term : S.flat())
        c1 = checked::add(c1, std::abs(dot(a, free_part(g, term))));

    // exact injectivity threshold of coordinate-wise reduction on the signed
    // sums: two sums collide mod n iff n divides the gcd of their coordinate
    // differences, so any n above the largest such gcd is injective
    std::int64_t max_gcd = 0;
    std::vector<GroupElem> pool(sums.begin(), sums.end());
    pool.push_back(g.zero());  // zero detection is injectivity against 0
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
            if (pool[i] == pool[j]) continue;
            if (torsion_part(g, pool[i]) != torsion_part(g, pool[j])) continue;
            std::int64_t gg = 0;
            for (int k = 0; k < r; ++k)
                gg = std::gcd(gg, checked::sub(pool[i].c[k], pool[j].c[k]));
            max_gcd = std::max(max_gcd, gg);
        }

    TransferFamily fam;
    fam.source = g;
    fam.coeffs = a;
    fam.c1_bound = c1;
    fam.threshold = std::max<std::int64_t>({c1, max_gcd + 1, 2});
    return fam;
}

TransferMap make_transfer_map(const TransferFamily& fam, std::int64_t n) {
    if (n == 0) {
        std::vector<std::int64_t> torsion = fam.source.torsion();
        return TransferMap{fam.source, GroupSpec(1, std::move(torsion)), fam.coeffs, 0};
    }
    if (n < fam.threshold)
        throw std::invalid_argument("transfer map: modulus " + std::to_string(n) +
                                    " is below the threshold " + std::to_string(fam.threshold));
    std::vector<std::int64_t> torsion(fam.source.free_rank(), n);
    for (std::int64_t m : fam.source.torsion()) torsion.push_back(m);
    return TransferMap{fam.source, GroupSpec(0, std::move(torsion)), fam.coeffs, n};
}

GroupElem apply_transfer_elem(const TransferMap& map, const GroupElem& e) {
    const int r = map.source.free_rank();
    std::vector<std::int64_t> coords;
    if (map.modulus == 0) {
        coords.push_back(dot(map.coeffs, free_part(map.source, e)));
    } else {
        for (int i = 0; i < r; ++i) coords.push_back(e.c[i]);
    }
    for (std::size_t i = r; i < e.c.size(); ++i) coords.push_back(e.c[i]);
    return map.target.make(std::move(coords));
}

Sequence apply_transfer(const Sequence& S, const TransferMap& map) {
    if (S.group() != map.source) throw std::invalid_argument("apply_transfer: group mismatch");
    std::vector<GroupElem> imgs;
    for (const GroupElem& e : S.flat()) imgs.push_back(apply_transfer_elem(map, e));
    return Sequence(map.target, imgs);
}

}  // namespace zslab
