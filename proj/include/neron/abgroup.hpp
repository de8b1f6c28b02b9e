#pragma once

#include "neron/partition.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace neron {

// Finite abelian group as prime -> invariant partition of its l-part.
class AbGroup {
public:
    AbGroup() = default;
    // Validates primes and drops empty parts.
    static AbGroup from_primary(const std::map<std::int64_t, Partition>& primary);
    // Direct sum of the Z/n_i; entries need not form a divisibility chain.
    static AbGroup from_invariant_factors(const std::vector<Integer>& ns);
    static AbGroup from_invariant_factors(const std::vector<long>& ns);
    static AbGroup cyclic(const Integer& n) { return from_invariant_factors(std::vector<Integer>{n}); }

    // n_1, n_2, ... with n_{i+1} | n_i and every n_i > 1.
    std::vector<Integer> to_invariant_factors() const;

    const std::map<std::int64_t, Partition>& primary() const { return primary_; }
    Partition part(std::int64_t l) const;
    Integer order() const;
    bool trivial() const { return primary_.empty(); }
    std::set<std::int64_t> primes() const;

    bool operator==(const AbGroup&) const = default;
    std::string str() const;

private:
    std::map<std::int64_t, Partition> primary_;
};

Integer delta(const AbGroup& g);
Integer delta_prime(const AbGroup& g);
// Invariants of G (+) H.
AbGroup direct_sum(const AbGroup& g, const AbGroup& h);
// Every group of order n, up to isomorphism.
std::vector<AbGroup> groups_of_order(std::int64_t n);

// (Z/l^{s_1}) x ... x (Z/l^{s_k}) with elements indexed in mixed radix.
class ConcreteLGroup {
public:
    static constexpr std::uint64_t default_budget = 1024;

    ConcreteLGroup(std::int64_t l, Partition shape, std::uint64_t budget = default_budget);

    std::int64_t prime() const { return l_; }
    const Partition& shape() const { return shape_; }
    std::uint32_t order() const { return order_; }

    std::uint32_t add(std::uint32_t x, std::uint32_t y) const { return table_[static_cast<std::size_t>(x) * order_ + y]; }
    std::uint32_t multiple(std::uint32_t x, std::uint64_t k) const;
    // v with l^v = order of x.
    unsigned exponent(std::uint32_t x) const { return exps_[x]; }
    std::vector<long> coordinates(std::uint32_t x) const;

private:
    std::int64_t l_;
    Partition shape_;
    std::uint32_t order_ = 1;
    std::vector<std::uint16_t> table_;
    std::vector<unsigned char> exps_;
};

// A subgroup as a membership bitset, with a minimal generating set.
struct Subgroup {
    std::vector<std::uint64_t> bits;
    std::vector<std::uint32_t> gens;
    std::uint32_t size = 1;

    bool contains(std::uint32_t x) const { return (bits[x >> 6] >> (x & 63)) & 1U; }
    std::vector<std::uint32_t> members() const;
};

// All subgroups, breadth first from 0, so that each subgroup is stored with
// a generating set of minimal size. Throws BudgetExceeded past max_count.
std::vector<Subgroup> enumerate_subgroups(const ConcreteLGroup& g, std::size_t max_count = 20'000'000);

// Invariant of the subgroup, from the sizes |B[l^j]|.
Partition subgroup_invariant(const ConcreteLGroup& g, const Subgroup& b);
// Invariant of G/B from the Smith form of [diag(l^shape) | gens(B)].
Partition quotient_invariant(const ConcreteLGroup& g, const Subgroup& b);

// {(inv(B), inv(G/B))} over all subgroups B.
std::set<std::pair<Partition, Partition>> enumerate_subgroup_pairs(const ConcreteLGroup& g);

// Lemma 4.1: merge(a, b) <= e <= a + b lexicographically, and sums agree.
bool check_extension_bounds(const Partition& a, const Partition& b, const Partition& e);
// Lemma 4.10: a >= d^t(e) componentwise.
bool check_subquotient_shift(const Partition& a, const Partition& e, std::size_t t);

struct Lemma44Report {
    bool subadditive = false;
    bool equality_iff_split = false;
};
// Lemma 4.4(2) for an extension 0 -> B -> E -> A -> 0.
Lemma44Report check_lemma44(const Partition& e, const Partition& a, const Partition& b, std::int64_t l);
// Lemma 4.4(3); throws PreconditionError when e_1 > a_exp or a_exp < 1.
bool check_lemma44_part3(const Partition& e, const Partition& epp, std::int64_t l, int a_exp, int b_log);

// Lemma 4.8 as a predicate on the invariants of the two-step quotients
// M^i/M^{i+2}: true when all of them are cyclic, i.e. when the lemma
// asserts that M is cyclic. Throws InvalidArgument on an empty list.
bool cyclic_from_two_step(const std::vector<Partition>& two_step);

struct Lemma48Search {
    std::uint64_t subgroups = 0;
    std::uint64_t states = 0;
    // A chain M^0 ⊋ ... ⊋ M^r = 0 with r >= 2, cyclic two-step quotients
    // and M^0 not cyclic, given as subgroup sizes; empty when none exists.
    std::optional<std::vector<std::uint32_t>> counterexample;
};
Lemma48Search lemma48_search(const ConcreteLGroup& g);

} // namespace neron
