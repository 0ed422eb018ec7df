#include "zslab/realize.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "zslab/errors.hpp"
#include "zslab/weighted.hpp"

namespace zslab {

Target Target::make(std::set<std::int64_t> L, std::map<std::int64_t, std::int64_t> f) {
    if (L.empty()) throw std::invalid_argument("target: L must be nonempty");
    for (std::int64_t k : L)
        if (k < 2) throw std::invalid_argument("target: every length must be >= 2");
    if (f.size() != L.size()) throw std::invalid_argument("target: f must be total on L");
    for (auto& [k, v] : f) {
        if (!L.count(k)) throw std::invalid_argument("target: f defined off L");
        if (v < 1) throw std::invalid_argument("target: f must be >= 1");
    }
    Target t;
    t.L = std::move(L);
    t.f = std::move(f);
    return t;
}

std::int64_t Target::s() const {
    std::int64_t s = 0;
    for (auto& [k, v] : f) s += v;
    return s;
}

bool is_prime(std::int64_t q) {
    if (q < 2) return false;
    for (std::int64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

namespace {

std::int64_t inv_mod(std::int64_t a, std::int64_t q) {
    std::int64_t t = 0, nt = 1, r = q, nr = a % q;
    while (nr != 0) {
        std::int64_t c = r / nr;
        std::swap(t -= c * nt, nt);
        std::swap(r -= c * nr, nr);
    }
    if (r != 1) throw std::invalid_argument("not invertible mod q");
    return t < 0 ? t + q : t;
}

/// In-place reduced row echelon form over F_q. Returns the rank; the first
/// rank rows become the reduced basis, pivot columns appended to `pivots`.
int rref(std::vector<std::vector<std::int64_t>>& rows, std::int64_t q, std::vector<int>& pivots) {
    const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        int sel = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][c] != 0) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[rank], rows[sel]);
        const std::int64_t iv = inv_mod(rows[rank][c], q);
        for (std::int64_t& v : rows[rank]) v = v * iv % q;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            const std::int64_t coef = rows[r][c];
            for (int j = 0; j < cols; ++j)
                rows[r][j] = ((rows[r][j] - coef * rows[rank][j]) % q + q) % q;
        }
        pivots.push_back(c);
        ++rank;
    }
    rows.resize(rank);
    return rank;
}

}  // namespace

GridSetting::GridSetting(const Target& t, std::int64_t q) : q_(q) {
    if (!is_prime(q)) throw std::invalid_argument("grid realization: q must be prime");
    if (!t.L.count(2)) throw std::invalid_argument("grid realization requires 2 in L");
    if (t.s() < 3) throw std::invalid_argument("grid realization requires s >= 3");
    for (auto& [k, cnt] : t.f)
        for (std::int64_t i = 0; i < cnt; ++i) sizes_.push_back(k);

    std::uint64_t total = 1;
    for (std::int64_t k : sizes_) {
        total *= static_cast<std::uint64_t>(k);
        if (total > (std::uint64_t{1} << 20))
            throw ResourceError("grid realization: |X| exceeds 2^20 points");
    }
    const int s = static_cast<int>(sizes_.size());
    points_.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<int> pt(s);
        std::uint64_t rem = idx;
        for (int j = s - 1; j >= 0; --j) {
            pt[j] = static_cast<int>(rem % sizes_[j]);
            rem /= sizes_[j];
        }
        points_.push_back(std::move(pt));
    }

    basis_.reserve(static_cast<std::size_t>(s) * 8);
    for (int i = 0; i < s; ++i)
        for (int y = 0; y < sizes_[i]; ++y) basis_.push_back(chi_fiber(i, y));
    std::vector<int> pivots;
    rank_ = rref(basis_, q_, pivots);
    std::int64_t expected = 1;
    for (std::int64_t k : sizes_) expected += k - 1;
    if (rank_ != expected) throw std::logic_error("grid realization: unexpected rank of V");
    pivot_of_row_ = pivots;
    std::set<int> pivot_set(pivots.begin(), pivots.end());
    for (int c = 0; c < static_cast<int>(total); ++c)
        if (!pivot_set.count(c)) nonpivots_.push_back(c);
    group_ = GroupSpec(0, std::vector<std::int64_t>(nonpivots_.size(), q_));
}

std::size_t GridSetting::point_index(const std::vector<int>& pt) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < sizes_.size(); ++j) idx = idx * sizes_[j] + pt[j];
    return idx;
}

std::vector<std::int64_t> GridSetting::chi_point(std::size_t index) const {
    std::vector<std::int64_t> v(points_.size(), 0);
    v[index] = 1;
    return v;
}

std::vector<std::int64_t> GridSetting::chi_fiber(int factor, int value) const {
    std::vector<std::int64_t> v(points_.size(), 0);
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i][factor] == value) v[i] = 1;
    return v;
}

std::vector<std::int64_t> GridSetting::chi_all() const {
    return std::vector<std::int64_t>(points_.size(), 1);
}

GroupElem GridSetting::coset(std::vector<std::int64_t> vec) const {
    if (vec.size() != points_.size())
        throw std::invalid_argument("coset: vector has the wrong dimension");
    for (std::int64_t& v : vec) {
        v %= q_;
        if (v < 0) v += q_;
    }
    for (std::size_t r = 0; r < basis_.size(); ++r) {
        const std::int64_t coef = vec[pivot_of_row_[r]];
        if (coef == 0) continue;
        for (std::size_t j = 0; j < vec.size(); ++j)
            vec[j] = ((vec[j] - coef * basis_[r][j]) % q_ + q_) % q_;
    }
    std::vector<std::int64_t> coords;
    coords.reserve(nonpivots_.size());
    for (int c : nonpivots_) coords.push_back(vec[c]);
    return group_.make(std::move(coords));
}

bool GridSetting::in_V(std::vector<std::int64_t> vec) const {
    return coset(std::move(vec)) == group_.zero();
}

namespace {

std::vector<Sequence> sorted_atoms(std::vector<Sequence> v) {
    std::sort(v.begin(), v.end(), atom_order_less);
    return v;
}

/// Construction-time sanity: the sequence is squarefree and zero-sum, and
/// every named factorization is a partition of it into zero-sum parts.
void validate_certificate(const RealizationCertificate& cert) {
    if (!cert.sequence.is_squarefree())
        throw std::logic_error(cert.construction + ": sequence is not squarefree");
    if (!is_zero_sum(cert.sequence))
        throw std::logic_error(cert.construction + ": sequence is not zero-sum");
    for (const NamedFactorization& nf : cert.predicted.factorizations) {
        Sequence prod(cert.group);
        for (const Sequence& a : nf.atoms) {
            if (!is_zero_sum(a)) throw std::logic_error(cert.construction + ": non-zero-sum part");
            prod = prod.mul(a);
        }
        if (prod != cert.sequence)
            throw std::logic_error(cert.construction + ": " + nf.name +
                                   " does not multiply back to the sequence");
    }
}

struct FqSpace {
    GroupSpec g;

    FqSpace(std::int64_t q, int dim) : g(0, std::vector<std::int64_t>(dim, q)) {}

    GroupElem e(int i) const {
        std::vector<std::int64_t> c(g.arity(), 0);
        c[i] = 1;
        return g.make(std::move(c));
    }
    GroupElem add(const GroupElem& a, const GroupElem& b) const { return g.add(a, b); }
    GroupElem sub(const GroupElem& a, const GroupElem& b) const { return g.sub(a, b); }
    GroupElem neg(const GroupElem& a) const { return g.neg(a); }
    Sequence seq(std::vector<GroupElem> elems) const { return Sequence(g, elems); }
};

RealizationCertificate finish(const Target& t, std::int64_t q, std::string construction,
                              const FqSpace& sp, const Sequence& S, LengthCounts counts,
                              std::vector<NamedFactorization> named) {
    RealizationCertificate cert{
        t, q, std::move(construction), sp.g, S, PredictedData{t.L, std::move(counts), true, std::move(named)},
        std::nullopt};
    validate_certificate(cert);
    return cert;
}

// L = {2}, f(2) = 1: two independent basis triangles
RealizationCertificate build_one_pair(const Target& t, std::int64_t q) {
    FqSpace sp(q, 4);
    GroupElem a = sp.e(0), b = sp.e(1), x = sp.e(2), y = sp.e(3);
    Sequence u1 = sp.seq({a, x, sp.neg(sp.add(a, x))});
    Sequence u2 = sp.seq({b, y, sp.neg(sp.add(b, y))});
    Sequence S = u1.mul(u2);
    std::vector<NamedFactorization> named{{"Z_1", sorted_atoms({u1, u2})}};
    return finish(t, q, "one_pair", sp, S, {{2, 1}}, std::move(named));
}

// L = {2}, f(2) = 2, char != 2: one sequence with exactly two splittings
RealizationCertificate build_two_pairs(const Target& t, std::int64_t q) {
    FqSpace sp(q, 3);
    GroupElem a = sp.e(0), b = sp.e(1), c = sp.e(2);
    Sequence u1 = sp.seq({sp.neg(a), a});
    Sequence u2 = sp.seq({b, c, sp.sub(a, c), sp.neg(sp.add(a, b))});
    Sequence u3 = sp.seq({a, b, sp.neg(sp.add(a, b))});
    Sequence u4 = sp.seq({sp.neg(a), c, sp.sub(a, c)});
    Sequence S = u1.mul(u2);
    if (S != u3.mul(u4)) throw std::logic_error("two_pairs: splittings disagree");
    std::vector<NamedFactorization> named{{"Z_1", sorted_atoms({u1, u2})},
                                          {"Z_2", sorted_atoms({u3, u4})}};
    return finish(t, q, "two_pairs", sp, S, {{2, 2}}, std::move(named));
}

// L = {2}, f(2) = 2, char = 2: seven terms with three splittings
RealizationCertificate build_two_pairs_char2(const Target& t) {
    FqSpace sp(2, 4);
    GroupElem a1 = sp.e(0), a2 = sp.e(1), a3 = sp.e(2), a4 = sp.e(3);
    GroupElem e0 = sp.add(sp.add(a1, a2), sp.add(a3, a4));
    GroupElem p = sp.add(a1, a2), r = sp.add(a3, a4), c = sp.add(e0, a4);
    Sequence S = sp.seq({p, r, e0, a1, a2, a3, c});
    std::vector<NamedFactorization> named{
        {"Z_1", sorted_atoms({sp.seq({p, r, e0}), sp.seq({a1, a2, a3, c})})},
        {"Z_2", sorted_atoms({sp.seq({a1, a2, p}), sp.seq({a3, c, r, e0})})},
        {"Z_3", sorted_atoms({sp.seq({p, a3, c}), sp.seq({a1, a2, r, e0})})}};
    return finish(t, 2, "two_pairs_char2", sp, S, {{2, 3}}, std::move(named));
}

// L = {2, r}, f = 1, char != 2: a chain atom and its negation
RealizationCertificate build_pair_chain(const Target& t, std::int64_t q, std::int64_t r) {
    FqSpace sp(q, static_cast<int>(r) - 1);
    std::vector<GroupElem> chain;
    GroupElem sum = sp.g.zero();
    for (int i = 0; i + 1 < static_cast<int>(r); ++i) {
        chain.push_back(sp.e(i));
        sum = sp.add(sum, sp.e(i));
    }
    chain.push_back(sp.neg(sum));  // e_0 closes the chain
    Sequence u = sp.seq(chain);
    Sequence nu = u.negated();
    Sequence S = u.mul(nu);
    std::vector<Sequence> pairs;
    for (const GroupElem& g : chain) pairs.push_back(sp.seq({g, sp.neg(g)}));
    std::vector<NamedFactorization> named{{"Z_1", sorted_atoms({u, nu})},
                                          {"Z_2", sorted_atoms(std::move(pairs))}};
    return finish(t, q, "pair_chain", sp, S, {{2, 1}, {r, 1}}, std::move(named));
}

// L = {2, r}, f = 1, char = 2: r glued triangles with two long splittings
RealizationCertificate build_pair_chain_char2(const Target& t, std::int64_t r) {
    const int dim = static_cast<int>(2 * r - 1);
    FqSpace sp(2, dim);
    std::vector<GroupElem> b(dim);
    for (int i = 0; i < dim; ++i) b[i] = sp.e(i);
    GroupElem e0 = sp.g.zero();
    for (int i = 0; i + 1 < dim; ++i) e0 = sp.add(e0, b[i]);

    std::vector<GroupElem> u1 = b;
    u1.push_back(sp.add(e0, b[dim - 1]));
    std::vector<GroupElem> u2, v2;
    for (int i = 0; i + 1 < dim; i += 2) u2.push_back(sp.add(b[i], b[i + 1]));
    v2 = u2;
    u2.push_back(e0);
    std::vector<GroupElem> v1(b.begin(), b.end() - 1);
    v1.push_back(e0);
    v2.push_back(b[dim - 1]);
    v2.push_back(sp.add(b[dim - 1], e0));

    std::vector<Sequence> triples;
    for (int i = 0; i + 1 < dim; i += 2)
        triples.push_back(sp.seq({b[i], b[i + 1], sp.add(b[i], b[i + 1])}));
    triples.push_back(sp.seq({b[dim - 1], e0, sp.add(b[dim - 1], e0)}));

    Sequence U1 = sp.seq(u1), U2 = sp.seq(u2), V1 = sp.seq(v1), V2 = sp.seq(v2);
    Sequence S = U1.mul(U2);
    if (S != V1.mul(V2)) throw std::logic_error("pair_chain_char2: splittings disagree");
    std::vector<NamedFactorization> named{{"Z_1", sorted_atoms({U1, U2})},
                                          {"Z_2", sorted_atoms({V1, V2})},
                                          {"Z_3", sorted_atoms(std::move(triples))}};
    return finish(t, 2, "pair_chain_char2", sp, S, {{2, 2}, {r, 1}}, std::move(named));
}

// 2 not in L: realize the shifted target and append independent triangles,
// one per unit of shift
RealizationCertificate build_shifted(const Target& t, std::int64_t q) {
    const std::int64_t m = t.min_length() - 2;
    std::set<std::int64_t> L0;
    std::map<std::int64_t, std::int64_t> f0;
    for (std::int64_t k : t.L) L0.insert(k - m);
    for (auto& [k, v] : t.f) f0[k - m] = v;
    RealizationCertificate inner = realize(Target::make(std::move(L0), std::move(f0)), q);

    const int inner_dim = static_cast<int>(inner.group.torsion().size());
    const int dim = inner_dim + static_cast<int>(2 * m);
    FqSpace sp(q, dim);
    auto embed = [&](const GroupElem& e) {
        std::vector<std::int64_t> c(dim, 0);
        std::copy(e.c.begin(), e.c.end(), c.begin());
        return sp.g.make(std::move(c));
    };

    std::vector<GroupElem> terms;
    for (const GroupElem& e : inner.sequence.flat()) terms.push_back(embed(e));
    std::vector<Sequence> triples;
    for (std::int64_t j = 0; j < m; ++j) {
        GroupElem x = sp.e(inner_dim + static_cast<int>(2 * j));
        GroupElem y = sp.e(inner_dim + static_cast<int>(2 * j) + 1);
        triples.push_back(sp.seq({x, y, sp.neg(sp.add(x, y))}));
        for (const GroupElem& e : triples.back().flat()) terms.push_back(e);
    }
    Sequence S = sp.seq(terms);

    LengthCounts counts;
    for (auto& [k, v] : inner.predicted.counts) counts[k + m] = v;
    std::vector<NamedFactorization> named;
    for (const NamedFactorization& nf : inner.predicted.factorizations) {
        std::vector<Sequence> atoms;
        for (const Sequence& a : nf.atoms) {
            std::vector<GroupElem> es;
            for (const GroupElem& e : a.flat()) es.push_back(embed(e));
            atoms.push_back(sp.seq(es));
        }
        atoms.insert(atoms.end(), triples.begin(), triples.end());
        named.push_back(NamedFactorization{nf.name, sorted_atoms(std::move(atoms))});
    }
    RealizationCertificate cert = finish(t, q, "shifted:" + inner.construction, sp, S,
                                         std::move(counts), std::move(named));
    cert.predicted.exact_at_min = inner.predicted.exact_at_min;
    return cert;
}

}  // namespace

RealizationCertificate realize_grid(const Target& t, std::int64_t q) {
    Target checked = Target::make(t.L, t.f);
    GridSetting gs(checked, q);
    const std::size_t total = gs.points().size();
    std::vector<GroupElem> imgs;
    imgs.reserve(total);
    for (std::size_t i = 0; i < total; ++i) imgs.push_back(gs.coset(gs.chi_point(i)));
    std::set<GroupElem> distinct(imgs.begin(), imgs.end());
    if (distinct.size() != total) throw std::logic_error("grid realization: cosets collide");
    if (!gs.in_V(gs.chi_all())) throw std::logic_error("grid realization: chi_X is not in V");

    Sequence S(gs.group(), imgs);
    std::vector<NamedFactorization> named;
    for (std::size_t i = 0; i < gs.sizes().size(); ++i) {
        std::vector<Sequence> atoms;
        for (int y = 0; y < gs.sizes()[i]; ++y) {
            std::vector<GroupElem> part;
            for (std::size_t p = 0; p < total; ++p)
                if (gs.points()[p][i] == y) part.push_back(imgs[p]);
            atoms.emplace_back(gs.group(), part);
        }
        named.push_back(NamedFactorization{"Z_" + std::to_string(i + 1), sorted_atoms(std::move(atoms))});
    }
    RealizationCertificate cert{checked,    q, "grid", gs.group(), S,
                                PredictedData{checked.L, checked.f, false, std::move(named)},
                                std::nullopt};
    validate_certificate(cert);
    return cert;
}

RealizationCertificate realize(const Target& t, std::int64_t q) {
    Target checked = Target::make(t.L, t.f);
    if (!is_prime(q)) throw std::invalid_argument("realize: q must be prime");
    if (!checked.L.count(2)) return build_shifted(checked, q);
    const std::int64_t s = checked.s();
    if (s >= 3) return realize_grid(checked, q);
    if (s == 1) return build_one_pair(checked, q);
    if (checked.L.size() == 1)
        return q == 2 ? build_two_pairs_char2(checked) : build_two_pairs(checked, q);
    const std::int64_t r = *checked.L.rbegin();
    return q == 2 ? build_pair_chain_char2(checked, r) : build_pair_chain(checked, q, r);
}

}  // namespace zslab
