#include "neron/abgroup.hpp"

#include "neron/errors.hpp"
#include "neron/linalg.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace neron {

AbGroup AbGroup::from_primary(const std::map<std::int64_t, Partition>& primary)
{
    AbGroup g;
    for (const auto& [l, p] : primary) {
        require_prime(l, "AbGroup");
        if (!p.empty())
            g.primary_[l] = p;
    }
    return g;
}

AbGroup AbGroup::from_invariant_factors(const std::vector<Integer>& ns)
{
    std::map<std::int64_t, std::vector<int>> parts;
    for (const Integer& n : ns) {
        if (n <= 0)
            throw InvalidArgument("from_invariant_factors: entries must be positive");
        if (!n.fits_slong_p())
            throw InvalidArgument("from_invariant_factors: entry too large to factor");
        for (auto [l, e] : factorize(n.get_si()))
            parts[l].push_back(static_cast<int>(e));
    }
    std::map<std::int64_t, Partition> primary;
    for (auto& [l, v] : parts)
        primary[l] = Partition::from_unsorted(std::move(v));
    return from_primary(primary);
}

AbGroup AbGroup::from_invariant_factors(const std::vector<long>& ns)
{
    std::vector<Integer> z;
    for (long n : ns)
        z.emplace_back(n);
    return from_invariant_factors(z);
}

std::vector<Integer> AbGroup::to_invariant_factors() const
{
    std::size_t len = 0;
    for (const auto& [l, p] : primary_)
        len = std::max(len, p.length());
    std::vector<Integer> out(len, Integer(1));
    for (const auto& [l, p] : primary_)
        for (std::size_t i = 0; i < p.length(); ++i)
            out[i] *= ipow(l, static_cast<unsigned>(p[i]));
    return out;
}

Partition AbGroup::part(std::int64_t l) const
{
    auto it = primary_.find(l);
    return it == primary_.end() ? Partition{} : it->second;
}

Integer AbGroup::order() const
{
    Integer n = 1;
    for (const auto& [l, p] : primary_)
        n *= ipow(l, static_cast<unsigned>(p.total()));
    return n;
}

std::set<std::int64_t> AbGroup::primes() const
{
    std::set<std::int64_t> s;
    for (const auto& kv : primary_)
        s.insert(kv.first);
    return s;
}

std::string AbGroup::str() const
{
    std::string out = "{";
    bool first = true;
    for (const auto& [l, p] : primary_) {
        if (!first)
            out += ",";
        first = false;
        out += std::to_string(l) + ":" + p.str();
    }
    return out + "}";
}

Integer delta(const AbGroup& g)
{
    Integer s = 0;
    for (const auto& [l, p] : g.primary())
        s += delta_l(l, p);
    return s;
}

Integer delta_prime(const AbGroup& g)
{
    Integer s = 0;
    for (const auto& [l, p] : g.primary())
        s += delta_prime_l(l, p);
    return s;
}

AbGroup direct_sum(const AbGroup& g, const AbGroup& h)
{
    std::map<std::int64_t, Partition> m = g.primary();
    for (const auto& [l, p] : h.primary())
        m[l] = merge(m[l], p);
    return AbGroup::from_primary(m);
}

std::vector<AbGroup> groups_of_order(std::int64_t n)
{
    auto fac = factorize(n);
    std::vector<AbGroup> out;
    std::map<std::int64_t, Partition> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == fac.size()) {
            out.push_back(AbGroup::from_primary(cur));
            return;
        }
        for (const auto& p : partitions_of(static_cast<int>(fac[k].second))) {
            cur[fac[k].first] = p;
            rec(k + 1);
        }
        cur.erase(fac[k].first);
    };
    rec(0);
    return out;
}

ConcreteLGroup::ConcreteLGroup(std::int64_t l, Partition shape, std::uint64_t budget) : l_(l), shape_(std::move(shape))
{
    require_prime(l, "ConcreteLGroup");
    Integer ord = ipow(l, static_cast<unsigned>(shape_.total()));
    if (ord > Integer(static_cast<unsigned long>(budget)) || ord > 65536)
        throw BudgetExceeded("ConcreteLGroup: order " + ord.get_str() + " exceeds budget " + std::to_string(budget));
    order_ = static_cast<std::uint32_t>(ord.get_ui());
    const std::size_t k = shape_.length();
    std::vector<std::uint32_t> radix(k), stride(k);
    std::uint32_t s = 1;
    for (std::size_t i = 0; i < k; ++i) {
        radix[i] = static_cast<std::uint32_t>(ipow(l, static_cast<unsigned>(shape_[i])).get_ui());
        stride[i] = s;
        s *= radix[i];
    }
    table_.resize(static_cast<std::size_t>(order_) * order_);
    exps_.resize(order_);
    std::vector<std::uint32_t> cx(k), cy(k);
    for (std::uint32_t x = 0; x < order_; ++x) {
        for (std::size_t i = 0; i < k; ++i)
            cx[i] = (x / stride[i]) % radix[i];
        unsigned e = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (cx[i] == 0)
                continue;
            unsigned v = 0;
            for (std::uint32_t c = cx[i]; c % static_cast<std::uint32_t>(l) == 0; c /= static_cast<std::uint32_t>(l))
                ++v;
            e = std::max(e, static_cast<unsigned>(shape_[i]) - v);
        }
        exps_[x] = static_cast<unsigned char>(e);
        for (std::uint32_t y = 0; y < order_; ++y) {
            std::uint32_t z = 0;
            for (std::size_t i = 0; i < k; ++i) {
                std::uint32_t cyi = (y / stride[i]) % radix[i];
                z += ((cx[i] + cyi) % radix[i]) * stride[i];
            }
            table_[static_cast<std::size_t>(x) * order_ + y] = static_cast<std::uint16_t>(z);
        }
    }
}

std::uint32_t ConcreteLGroup::multiple(std::uint32_t x, std::uint64_t k) const
{
    std::uint32_t r = 0, b = x;
    while (k) {
        if (k & 1)
            r = add(r, b);
        b = add(b, b);
        k >>= 1;
    }
    return r;
}

std::vector<long> ConcreteLGroup::coordinates(std::uint32_t x) const
{
    std::vector<long> c;
    for (int s : shape_.parts()) {
        long r = ipow(l_, static_cast<unsigned>(s)).get_si();
        c.push_back(static_cast<long>(x % static_cast<std::uint32_t>(r)));
        x /= static_cast<std::uint32_t>(r);
    }
    return c;
}

std::vector<std::uint32_t> Subgroup::members() const
{
    std::vector<std::uint32_t> out;
    out.reserve(size);
    for (std::size_t w = 0; w < bits.size(); ++w) {
        std::uint64_t word = bits[w];
        while (word) {
            int b = __builtin_ctzll(word);
            out.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(b)));
            word &= word - 1;
        }
    }
    return out;
}

namespace {

struct BitsHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : v) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

inline void set_bit(std::vector<std::uint64_t>& b, std::uint32_t x) { b[x >> 6] |= std::uint64_t(1) << (x & 63); }
inline bool get_bit(const std::vector<std::uint64_t>& b, std::uint32_t x) { return (b[x >> 6] >> (x & 63)) & 1U; }

} // namespace

std::vector<Subgroup> enumerate_subgroups(const ConcreteLGroup& g, std::size_t max_count)
{
    const std::uint32_t n = g.order();
    const std::size_t words = (n + 63) / 64;
    std::vector<Subgroup> subs;
    std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, BitsHash> index;
    Subgroup zero;
    zero.bits.assign(words, 0);
    set_bit(zero.bits, 0);
    index.emplace(zero.bits, 0);
    subs.push_back(zero);

    std::vector<std::uint64_t> seen(words);
    for (std::size_t k = 0; k < subs.size(); ++k) {
        const std::vector<std::uint32_t> mem = subs[k].members();
        const std::vector<std::uint64_t> base = subs[k].bits;
        std::fill(seen.begin(), seen.end(), 0);
        for (std::uint32_t x = 1; x < n; ++x) {
            if (get_bit(base, x) || get_bit(seen, x))
                continue;
            // One representative per coset of the current subgroup.
            for (std::uint32_t s : mem)
                set_bit(seen, g.add(x, s));
            std::vector<std::uint64_t> bits = base;
            std::uint32_t cur = x;
            std::uint32_t size = subs[k].size;
            while (!get_bit(base, cur)) {
                for (std::uint32_t s : mem)
                    set_bit(bits, g.add(cur, s));
                size += subs[k].size;
                cur = g.add(cur, x);
            }
            auto [it, inserted] = index.emplace(std::move(bits), static_cast<std::uint32_t>(subs.size()));
            if (!inserted)
                continue;
            if (subs.size() >= max_count)
                throw BudgetExceeded("enumerate_subgroups: more than " + std::to_string(max_count) + " subgroups");
            Subgroup s;
            s.bits = it->first;
            s.gens = subs[k].gens;
            s.gens.push_back(x);
            s.size = size;
            subs.push_back(std::move(s));
        }
    }
    return subs;
}

Partition subgroup_invariant(const ConcreteLGroup& g, const Subgroup& b)
{
    std::vector<std::uint64_t> count(16, 0);
    unsigned maxe = 0;
    for (std::uint32_t x : b.members()) {
        unsigned e = g.exponent(x);
        ++count[e];
        maxe = std::max(maxe, e);
    }
    // |B[l^j]| = l^{b'_1 + ... + b'_j} where b' is the conjugate invariant.
    std::vector<int> conj;
    std::uint64_t prev = count[0];
    std::uint64_t cum = count[0];
    const std::uint64_t l = static_cast<std::uint64_t>(g.prime());
    for (unsigned j = 1; j <= maxe; ++j) {
        cum += count[j];
        std::uint64_t ratio = cum / prev;
        int v = 0;
        while (ratio > 1) {
            ratio /= l;
            ++v;
        }
        conj.push_back(v);
        prev = cum;
    }
    return conjugate(Partition(std::move(conj)));
}

Partition quotient_invariant(const ConcreteLGroup& g, const Subgroup& b)
{
    const std::size_t k = g.shape().length();
    IntMatrix rel(k, k + b.gens.size());
    for (std::size_t i = 0; i < k; ++i)
        rel(i, i) = ipow(g.prime(), static_cast<unsigned>(g.shape()[i]));
    for (std::size_t j = 0; j < b.gens.size(); ++j) {
        auto c = g.coordinates(b.gens[j]);
        for (std::size_t i = 0; i < k; ++i)
            rel(i, k + j) = c[i];
    }
    return cokernel_l_part(rel, g.prime()).torsion;
}

std::set<std::pair<Partition, Partition>> enumerate_subgroup_pairs(const ConcreteLGroup& g)
{
    std::set<std::pair<Partition, Partition>> out;
    for (const auto& s : enumerate_subgroups(g))
        out.emplace(subgroup_invariant(g, s), quotient_invariant(g, s));
    return out;
}

bool check_extension_bounds(const Partition& a, const Partition& b, const Partition& e)
{
    if (a.total() + b.total() != e.total())
        return false;
    Partition m = merge(a, b);
    Partition n = componentwise_sum(a, b);
    return lex_compare(m, e) <= 0 && lex_compare(e, n) <= 0;
}

bool check_subquotient_shift(const Partition& a, const Partition& e, std::size_t t)
{
    return dominates(shift_d(e, t), a);
}

Lemma44Report check_lemma44(const Partition& e, const Partition& a, const Partition& b, std::int64_t l)
{
    Integer de = delta_l(l, e);
    Integer sum = delta_l(l, a) + delta_l(l, b);
    Lemma44Report r;
    r.subadditive = de >= sum;
    bool equal = de == sum;
    bool split = e == merge(a, b);
    r.equality_iff_split = equal == split;
    return r;
}

bool check_lemma44_part3(const Partition& e, const Partition& epp, std::int64_t l, int a_exp, int b_log)
{
    require_prime(l, "check_lemma44_part3");
    if (a_exp < 1 || e[0] > a_exp)
        throw PreconditionError("check_lemma44_part3: l^a must kill M with a >= 1");
    if (b_log < 0 || e.total() != epp.total() + b_log)
        throw PreconditionError("check_lemma44_part3: |M| must equal |M''| * l^b");
    Integer rhs = delta_l(l, epp) + Integer(b_log) * (ipow(l, static_cast<unsigned>(a_exp)) - ipow(l, static_cast<unsigned>(a_exp - 1)));
    return delta_l(l, e) <= rhs;
}

bool cyclic_from_two_step(const std::vector<Partition>& two_step)
{
    if (two_step.empty())
        throw InvalidArgument("cyclic_from_two_step: empty chain");
    for (const auto& q : two_step)
        if (q.length() > 1)
            return false;
    return true;
}

Lemma48Search lemma48_search(const ConcreteLGroup& g)
{
    Lemma48Search res;
    auto subs = enumerate_subgroups(g);
    res.subgroups = subs.size();
    const std::size_t n = subs.size();
    std::size_t top = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (subs[i].size == g.order())
            top = i;
    if (g.shape().length() <= 1)
        return res; // M cyclic: the conclusion holds for every chain.

    // strict_subs[i] = indices of proper subgroups of subs[i].
    std::vector<std::vector<std::uint32_t>> strict_subs(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || subs[j].size >= subs[i].size)
                continue;
            bool inside = true;
            for (std::size_t w = 0; w < subs[i].bits.size() && inside; ++w)
                inside = (subs[j].bits[w] & ~subs[i].bits[w]) == 0;
            if (inside)
                strict_subs[i].push_back(static_cast<std::uint32_t>(j));
        }
    const std::uint64_t l = static_cast<std::uint64_t>(g.prime());
    std::vector<std::vector<std::uint32_t>> members(n);
    for (std::size_t i = 0; i < n; ++i)
        members[i] = subs[i].members();
    // P/Y is cyclic iff its l-torsion has order <= l.
    auto cyclic_quotient = [&](std::size_t p, std::size_t y) {
        std::uint64_t cnt = 0;
        for (std::uint32_t x : members[p])
            if (subs[y].contains(g.multiple(x, l)))
                ++cnt;
        return cnt <= l * subs[y].size;
    };
    // good(P, X): a chain X ⊋ Y ⊋ ... ⊋ 0 exists with every two-step
    // quotient cyclic, P ⊋ X being the previous step.
    std::unordered_map<std::uint64_t, std::int64_t> memo; // -1 false, else next index
    std::function<bool(std::size_t, std::size_t)> good = [&](std::size_t p, std::size_t x) -> bool {
        if (subs[x].size == 1)
            return true;
        std::uint64_t key = static_cast<std::uint64_t>(p) * n + x;
        if (auto it = memo.find(key); it != memo.end())
            return it->second >= 0;
        ++res.states;
        std::int64_t found = -1;
        for (std::uint32_t y : strict_subs[x])
            if (cyclic_quotient(p, y) && good(x, y)) {
                found = y;
                break;
            }
        memo[key] = found;
        return found >= 0;
    };
    for (std::uint32_t x : strict_subs[top]) {
        if (subs[x].size == 1)
            continue; // r >= 2 needs M^1 != 0
        if (good(top, x)) {
            std::vector<std::uint32_t> chain{subs[top].size, subs[x].size};
            std::size_t p = top, c = x;
            while (subs[c].size != 1) {
                std::size_t nxt = static_cast<std::size_t>(memo[static_cast<std::uint64_t>(p) * n + c]);
                chain.push_back(subs[nxt].size);
                p = c;
                c = nxt;
            }
            res.counterexample = chain;
            return res;
        }
    }
    return res;
}

} // namespace neron
