#include "zslab/abelian.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace zslab {

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 addition overflow");
    return r;
}

std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 subtraction overflow");
    return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 multiplication overflow");
    return r;
}

}  // namespace checked

std::size_t hash_value(const GroupElem& e) {
    // FNV-1a over the coordinate words.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(e.c.size()));
    for (std::int64_t v : e.c) mix(static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
}

GroupSpec::GroupSpec(int free_rank, std::vector<std::int64_t> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
    if (free_rank_ < 0) throw std::invalid_argument("free rank must be nonnegative");
    for (std::int64_t n : torsion_)
        if (n < 2) throw std::invalid_argument("torsion moduli must be >= 2");
}

std::optional<std::uint64_t> GroupSpec::size() const {
    if (free_rank_ > 0) return std::nullopt;
    std::uint64_t s = 1;
    for (std::int64_t n : torsion_) {
        if (s > UINT64_MAX / static_cast<std::uint64_t>(n))
            throw std::overflow_error("group order overflows uint64");
        s *= static_cast<std::uint64_t>(n);
    }
    return s;
}

bool GroupSpec::has_two_torsion() const {
    for (std::int64_t n : torsion_)
        if (n % 2 == 0) return true;
    return false;
}

GroupElem GroupSpec::zero() const { return GroupElem{std::vector<std::int64_t>(arity(), 0)}; }

GroupElem GroupSpec::make(std::vector<std::int64_t> coords) const {
    if (coords.size() != arity()) throw std::invalid_argument("element arity mismatch");
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        std::int64_t n = torsion_[i];
        std::int64_t& v = coords[free_rank_ + i];
        v %= n;
        if (v < 0) v += n;
    }
    return GroupElem{std::move(coords)};
}

void GroupSpec::check_arity(const GroupElem& a) const {
    if (a.c.size() != arity()) throw std::invalid_argument("element does not belong to this group");
}

GroupElem GroupSpec::add(const GroupElem& a, const GroupElem& b) const {
    check_arity(a);
    check_arity(b);
    GroupElem r;
    r.c.resize(arity());
    for (int i = 0; i < free_rank_; ++i) r.c[i] = checked::add(a.c[i], b.c[i]);
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        std::size_t k = free_rank_ + i;
        r.c[k] = (a.c[k] + b.c[k]) % torsion_[i];
    }
    return r;
}

GroupElem GroupSpec::neg(const GroupElem& a) const {
    check_arity(a);
    GroupElem r;
    r.c.resize(arity());
    for (int i = 0; i < free_rank_; ++i) r.c[i] = checked::sub(0, a.c[i]);
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        std::size_t k = free_rank_ + i;
        r.c[k] = a.c[k] == 0 ? 0 : torsion_[i] - a.c[k];
    }
    return r;
}

GroupElem GroupSpec::sub(const GroupElem& a, const GroupElem& b) const { return add(a, neg(b)); }

GroupElem GroupSpec::scale(std::int64_t k, const GroupElem& a) const {
    check_arity(a);
    GroupElem r;
    r.c.resize(arity());
    for (int i = 0; i < free_rank_; ++i) r.c[i] = checked::mul(k, a.c[i]);
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        std::size_t j = free_rank_ + i;
        std::int64_t n = torsion_[i];
        std::int64_t v = ((k % n) * (a.c[j] % n)) % n;
        if (v < 0) v += n;
        r.c[j] = v;
    }
    return r;
}

std::optional<std::uint64_t> GroupSpec::order(const GroupElem& a) const {
    check_arity(a);
    for (int i = 0; i < free_rank_; ++i)
        if (a.c[i] != 0) return std::nullopt;
    std::uint64_t m = 1;
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        std::uint64_t n = static_cast<std::uint64_t>(torsion_[i]);
        std::uint64_t c = static_cast<std::uint64_t>(a.c[free_rank_ + i]);
        std::uint64_t o = n / std::gcd(n, c);  // gcd(n, 0) = n, so o = 1 for c = 0
        m = std::lcm(m, o);
    }
    return m;
}

std::vector<GroupElem> GroupSpec::enumerate_elements() const {
    if (!is_finite()) throw std::invalid_argument("cannot enumerate an infinite group");
    std::vector<GroupElem> out;
    out.reserve(static_cast<std::size_t>(*size()));
    GroupElem cur = zero();
    while (true) {
        out.push_back(cur);
        // mixed-radix increment, last coordinate fastest: yields lexicographic order
        std::size_t i = torsion_.size();
        while (i > 0) {
            --i;
            if (++cur.c[i] < torsion_[i]) break;
            cur.c[i] = 0;
            if (i == 0) return out;
        }
        if (torsion_.empty()) return out;  // trivial group
    }
}

std::string GroupSpec::to_string() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank_ > 0) {
        os << "Z^" << free_rank_;
        first = false;
    }
    for (std::int64_t n : torsion_) {
        if (!first) os << "x";
        os << "C_" << n;
        first = false;
    }
    if (first) os << "C_1";
    return os.str();
}

std::string GroupSpec::elem_to_string(const GroupElem& a) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (i) os << ":";
        os << a.c[i];
    }
    return os.str();
}

}  // namespace zslab
