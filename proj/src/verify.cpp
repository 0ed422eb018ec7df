#include "zslab/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "zslab/errors.hpp"

namespace zslab {

VerifyStatus VerificationReport::status() const {
    for (const CheckResult& c : checks)
        if (!c.pass) return VerifyStatus::fail;
    if (budget_exhausted) return VerifyStatus::inconclusive;
    return VerifyStatus::pass;
}

namespace {

std::string join_lengths(const LengthSet& L) {
    std::ostringstream os;
    bool first = true;
    for (std::int64_t v : L) {
        if (!first) os << ",";
        os << v;
        first = false;
    }
    return os.str();
}

std::string join_counts(const LengthCounts& c) {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : c) {
        if (!first) os << " ";
        os << k << ":" << v;
        first = false;
    }
    return os.str();
}

}  // namespace

VerificationReport verify_realization(const GroupSpec& group, const Sequence& S, const Target& t,
                                      bool exhaustive, const RunConfig& cfg,
                                      RealizationCheckData* data) {
    VerificationReport rep;
    rep.subject = "realization over " + group.to_string();
    rep.mode = exhaustive ? "exhaustive" : "bounded";
    if (S.group() != group)
        throw std::invalid_argument("verify_realization: sequence group mismatch");
    if (exhaustive && S.length() > cfg.exhaustive_bound)
        throw std::invalid_argument("verify_realization: |S| exceeds the exhaustive bound " +
                                    std::to_string(cfg.exhaustive_bound));

    rep.add("squarefree", S.is_squarefree());
    rep.add("zero_sum", is_zero_sum(S));

    AtomCache cache(cfg);
    EnumerationLimits lim = EnumerationLimits::from_config(cfg);
    LengthCounts counts_b, counts_pm;
    try {
        for (const Factorization& f : factorizations(S, MonoidTag::B, cache, lim))
            ++counts_b[f.length()];
        for (const Factorization& f : factorizations(S, MonoidTag::Bpm, cache, lim))
            ++counts_pm[f.length()];
    } catch (const EnumerationBudgetError& e) {
        rep.budget_exhausted = true;
        rep.nodes = e.nodes_spent;
        return rep;
    }
    LengthSet lb, lpm;
    for (auto& [k, v] : counts_b) lb.insert(k);
    for (auto& [k, v] : counts_pm) lpm.insert(k);
    if (data) *data = RealizationCheckData{lb, lpm, counts_b, counts_pm};

    rep.add("lengths_B_equal_target", lb == t.L, "got {" + join_lengths(lb) + "}");
    rep.add("lengths_Bpm_equal_target", lpm == t.L, "got {" + join_lengths(lpm) + "}");
    bool floor_ok = true, equal_above_min = true;
    for (std::int64_t k : t.L) {
        std::int64_t cb = counts_b.count(k) ? counts_b[k] : 0;
        std::int64_t cpm = counts_pm.count(k) ? counts_pm[k] : 0;
        std::int64_t fk = t.f.at(k);
        if (!(cpm >= cb && cb >= fk)) floor_ok = false;
        if (k > t.min_length() && !(cpm == cb && cb == fk)) equal_above_min = false;
    }
    rep.add("count_inequalities", floor_ok,
            "B {" + join_counts(counts_b) + "}  Bpm {" + join_counts(counts_pm) + "}");
    rep.add("count_equalities_above_min", equal_above_min);
    return rep;
}

VerificationReport verify_certificate(RealizationCertificate& cert, bool exhaustive,
                                      const RunConfig& cfg) {
    RealizationCheckData data;
    VerificationReport rep =
        verify_realization(cert.group, cert.sequence, cert.target, exhaustive, cfg, &data);
    rep.subject = "certificate " + cert.construction;
    if (rep.status() != VerifyStatus::inconclusive) {
        cert.verified = VerifiedData{rep.mode, data.lengths_b, data.lengths_pm, data.counts_b,
                                     data.counts_pm, rep.status() == VerifyStatus::pass};
    }
    return rep;
}

VerificationReport verify_transfer(const Sequence& S, const TransferFamily& fam,
                                   const RunConfig& cfg) {
    VerificationReport rep;
    rep.subject = "transfer of " + S.to_string() + " over " + S.group().to_string();
    rep.mode = "exhaustive";

    const bool in_b = is_zero_sum(S);
    rep.add("source_in_B", in_b);

    AtomCache cache(cfg);
    EnumerationLimits lim = EnumerationLimits::from_config(cfg);
    SumSet sums = signed_sum_set(S, cfg);

    std::vector<std::int64_t> moduli{0, fam.threshold, fam.threshold + 1, fam.threshold + 5};
    try {
        LengthCounts src_b = counts_by_length(S, MonoidTag::B, cache, lim);
        LengthCounts src_pm = counts_by_length(S, MonoidTag::Bpm, cache, lim);
        for (std::int64_t n : moduli) {
            const std::string tag = "n" + std::to_string(n);
            TransferMap map = make_transfer_map(fam, n);
            Sequence img = apply_transfer(S, map);
            AtomCache img_cache(cfg);
            rep.add("length_preserved_" + tag, img.length() == S.length());

            LengthCounts img_b = counts_by_length(img, MonoidTag::B, img_cache, lim);
            LengthCounts img_pm = counts_by_length(img, MonoidTag::Bpm, img_cache, lim);
            rep.add("counts_Bpm_agree_" + tag, img_pm == src_pm,
                    "source {" + join_counts(src_pm) + "} image {" + join_counts(img_pm) + "}");
            if (in_b)
                rep.add("counts_B_agree_" + tag, img_b == src_b,
                        "source {" + join_counts(src_b) + "} image {" + join_counts(img_b) + "}");

            std::set<GroupElem> images;
            for (const GroupElem& e : sums) images.insert(apply_transfer_elem(map, e));
            rep.add("injective_on_signed_sums_" + tag, images.size() == sums.size());
        }
    } catch (const EnumerationBudgetError& e) {
        rep.budget_exhausted = true;
        rep.nodes = e.nodes_spent;
    }
    return rep;
}

namespace {

/// Enumerates every multiset over `elems` (ordered ascending) with length
/// in [1, max_len] and support size at most max_support; calls fn on each.
void for_each_multiset(const GroupSpec& g, const std::vector<GroupElem>& elems,
                       std::int64_t max_len, std::int64_t max_support,
                       const std::function<void(const Sequence&)>& fn) {
    std::vector<Sequence::Term> stack;
    std::function<void(std::size_t, std::int64_t, std::int64_t)> rec =
        [&](std::size_t from, std::int64_t len_left, std::int64_t supp_left) {
            if (!stack.empty()) fn(Sequence::from_terms(g, stack));
            if (len_left == 0 || supp_left == 0) return;
            for (std::size_t i = from; i < elems.size(); ++i) {
                for (std::int64_t m = 1; m <= len_left; ++m) {
                    stack.emplace_back(elems[i], m);
                    rec(i + 1, len_left - m, supp_left - 1);
                    stack.pop_back();
                }
            }
        };
    rec(0, max_len, max_support);
}

}  // namespace

VerificationReport verify_atom_equivalence(const GroupSpec& group, std::int64_t max_len,
                                           std::int64_t max_support, const RunConfig& cfg) {
    if (!group.is_finite())
        throw std::invalid_argument("atom equivalence check requires a finite group");
    if (group.has_two_torsion())
        throw std::invalid_argument("atom equivalence check requires a group without 2-torsion");

    VerificationReport rep;
    rep.subject = "atom equivalence over " + group.to_string();
    rep.mode = "exhaustive";

    AtomCache cache(cfg);
    std::vector<GroupElem> elems = group.enumerate_elements();
    std::int64_t checked = 0;
    std::string counterexample;
    for_each_multiset(group, elems, max_len, max_support, [&](const Sequence& S) {
        if (!is_zero_sum(S)) return;
        ++checked;
        bool a_b = cache.is_atom(S, MonoidTag::B);
        bool a_pm = cache.is_atom(S, MonoidTag::Bpm);
        if (a_b != a_pm && counterexample.empty()) counterexample = S.to_string();
    });
    rep.nodes = static_cast<std::uint64_t>(checked);
    rep.add("atom_sets_agree", counterexample.empty(),
            counterexample.empty()
                ? std::to_string(checked) + " zero-sum sequences checked"
                : "counterexample: " + counterexample);
    return rep;
}

VerificationReport verify_elementary3_witness(const GroupSpec& group, const RunConfig& cfg) {
    if (!group.is_finite() || group.torsion().empty())
        throw std::invalid_argument("elementary-3 witness requires a finite nontrivial group");
    for (std::int64_t n : group.torsion())
        if (n != 3)
            throw std::invalid_argument("elementary-3 witness requires every modulus to be 3");

    VerificationReport rep;
    rep.subject = "elementary-3 witness over " + group.to_string();
    rep.mode = "exhaustive";

    std::vector<std::int64_t> c(group.arity(), 0);
    c[0] = 1;
    GroupElem g = group.make(std::move(c));

    AtomCache cache(cfg);
    Sequence g2 = Sequence::from_terms(group, {{g, 2}});
    Sequence g3 = Sequence::from_terms(group, {{g, 3}});
    Sequence g6 = Sequence::from_terms(group, {{g, 6}});
    rep.add("g2_atom_in_Bpm", cache.is_atom(g2, MonoidTag::Bpm));
    rep.add("g3_atom_in_Bpm", cache.is_atom(g3, MonoidTag::Bpm));
    LengthSet L = lengths(g6, MonoidTag::Bpm, cache, EnumerationLimits::from_config(cfg));
    rep.add("lengths_g6", L == LengthSet{2, 3}, "got {" + join_lengths(L) + "}");
    auto delta = delta_of_lengths(L);
    rep.add("distance_one", delta.count(1) == 1);
    return rep;
}

namespace {

/// Exhaustive search for the atoms of B(G): extends canonical nondecreasing
/// sequences, tracking the sums of all nonempty subsets (A) and of all
/// nonempty proper subsets (P) as bitsets over G. A node is an atom iff it
/// sums to zero and P misses zero; once P contains zero, no extension can
/// be an atom.
struct BAtomSearch {
    const GroupSpec& g;
    std::vector<GroupElem> elems;
    std::vector<std::vector<int>> add_idx;
    int zero_idx = 0;
    std::int64_t max_len;
    std::vector<std::vector<int>> atoms;  // element indices, nondecreasing
    std::vector<int> stack;

    explicit BAtomSearch(const GroupSpec& spec, std::int64_t cap) : g(spec), max_len(cap) {
        elems = g.enumerate_elements();
        const int n = static_cast<int>(elems.size());
        add_idx.assign(n, std::vector<int>(n));
        std::map<GroupElem, int> index;
        for (int i = 0; i < n; ++i) index[elems[i]] = i;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) add_idx[i][j] = index.at(g.add(elems[i], elems[j]));
        zero_idx = index.at(g.zero());
    }

    std::uint64_t shift(std::uint64_t bits, int e) const {
        std::uint64_t out = 0;
        while (bits) {
            int i = std::countr_zero(bits);
            bits &= bits - 1;
            out |= std::uint64_t{1} << add_idx[i][e];
        }
        return out;
    }

    void rec(int min_idx, int sigma, std::uint64_t all, std::uint64_t proper) {
        if (static_cast<std::int64_t>(stack.size()) >= max_len) return;
        for (int i = min_idx; i < static_cast<int>(elems.size()); ++i) {
            std::uint64_t all2 = all | shift(all, i) | (std::uint64_t{1} << i);
            std::uint64_t proper2 = all | shift(proper, i) | (std::uint64_t{1} << i);
            if (proper2 >> zero_idx & 1) continue;  // splittable now and forever
            int sigma2 = add_idx[sigma][i];
            stack.push_back(i);
            if (sigma2 == zero_idx) atoms.push_back(stack);
            rec(i, sigma2, all2, proper2);
            stack.pop_back();
        }
    }

    void run() { rec(0, zero_idx, 0, 0); }

    Sequence materialize(const std::vector<int>& idxs) const {
        std::vector<GroupElem> es;
        for (int i : idxs) es.push_back(elems[i]);
        return Sequence(g, es);
    }
};

}  // namespace

DavenportResult davenport(const GroupSpec& group, MonoidTag m, const RunConfig& cfg) {
    if (!group.is_finite()) throw std::invalid_argument("davenport: group must be finite");
    auto size = group.size();
    if (*size > static_cast<std::uint64_t>(cfg.davenport_bound))
        throw ResourceError("davenport: |G| exceeds the configured bound " +
                            std::to_string(cfg.davenport_bound));

    BAtomSearch search(group, static_cast<std::int64_t>(*size));
    search.run();

    DavenportResult best{0, Sequence(group)};
    if (m == MonoidTag::B) {
        for (const auto& idxs : search.atoms) {
            if (static_cast<std::int64_t>(idxs.size()) > best.value) {
                best.value = static_cast<std::int64_t>(idxs.size());
                best.witness = search.materialize(idxs);
            }
        }
        return best;
    }

    // Every atom of B_pm, signed through one of its witnesses, becomes an
    // atom of B; so the sign-flip variants of the B-atoms exhaust all
    // candidates.
    AtomCache cache(cfg);
    std::set<Sequence> candidates;
    for (const auto& idxs : search.atoms) {
        const std::size_t l = idxs.size();
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << l); ++bits) {
            std::vector<GroupElem> es;
            es.reserve(l);
            for (std::size_t j = 0; j < l; ++j) {
                const GroupElem& e = search.elems[idxs[j]];
                es.push_back(bits >> j & 1 ? group.neg(e) : e);
            }
            candidates.insert(Sequence(group, es));
        }
    }
    for (const Sequence& cand : candidates) {
        if (cand.length() <= best.value) continue;
        if (cache.is_atom(cand, MonoidTag::Bpm)) {
            best.value = cand.length();
            best.witness = cand;
        }
    }
    return best;
}

}  // namespace zslab
