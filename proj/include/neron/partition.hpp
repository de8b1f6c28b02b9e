#pragma once

#include "neron/integer.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace neron {

// A weakly decreasing finite sequence of non-negative integers, stored
// without trailing zeros. Reads past the end return 0.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts);
    explicit Partition(std::vector<int> parts);

    // Sorts descending before normalizing; negatives are still rejected.
    static Partition from_unsorted(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    std::size_t length() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    int total() const;

    bool operator==(const Partition&) const = default;

    std::string str() const;

private:
    std::vector<int> parts_;
};

// Total order used for map keys (lexicographic with implicit zeros).
bool operator<(const Partition& p, const Partition& q);

Partition conjugate(const Partition& p);

std::strong_ordering lex_compare(const Partition& p, const Partition& q);

// True iff q[i] >= p[i] for every i, i.e. q dominates p componentwise.
bool dominates(const Partition& p, const Partition& q);
// Majorization: every partial sum of q is >= the matching one of p.
bool majorizes(const Partition& q, const Partition& p);

Integer delta_l(std::int64_t l, const Partition& p);
Integer delta_prime_l(std::int64_t l, const Partition& p);

// d^t: drops the t largest parts.
Partition shift_d(const Partition& p, std::size_t t);
// d': decrements every part.
Partition shift_dprime(const Partition& p);

Rational f_l(std::int64_t l, const Partition& p);

// (ceil halves, floor halves), each renormalized.
std::pair<Partition, Partition> balanced_split(const Partition& p);

// Parts of a and b merged and re-sorted: the invariant of A (+) B.
Partition merge(const Partition& a, const Partition& b);
// (a_1 + b_1, a_2 + b_2, ...).
Partition componentwise_sum(const Partition& a, const Partition& b);

// All partitions of n, in lexicographically decreasing order.
std::vector<Partition> partitions_of(int n);

constexpr std::uint64_t kDefaultSplitBudget = 10'000'000;

// Minimum of delta_l(r) + delta_l(s) over all partition pairs with
// sum(r) + sum(s) = sum(e) and r + s >= e lexicographically.
Integer min_split_delta_bruteforce(std::int64_t l, const Partition& e,
                                   std::uint64_t budget = kDefaultSplitBudget);

} // namespace neron
