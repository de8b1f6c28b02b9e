#include "neron/errors.hpp"
#include "neron/partition.hpp"

#include "doctest.h"

#include <random>

using namespace neron;

TEST_SUITE("partitions")
{
    TEST_CASE("construction and normalization")
    {
        CHECK(Partition{3, 1, 0, 0}.parts() == std::vector<int>{3, 1});
        CHECK(Partition{}.empty());
        CHECK_THROWS_AS(Partition({1, 2}), InvalidArgument);
        CHECK_THROWS_AS(Partition({2, -1}), InvalidArgument);
        CHECK(Partition::from_unsorted({1, 3, 0, 2}) == Partition{3, 2, 1});
        CHECK(Partition{2, 1}[5] == 0);
    }

    TEST_CASE("conjugate")
    {
        CHECK(conjugate(Partition{}) == Partition{});
        CHECK(conjugate(Partition{2, 2}) == Partition{2, 2});
        CHECK(conjugate(Partition{3, 1}) == Partition{2, 1, 1});
        for (int n = 0; n <= 10; ++n)
            for (const auto& p : partitions_of(n)) {
                CHECK(conjugate(conjugate(p)) == p);
                CHECK(conjugate(p).total() == n);
            }
    }

    TEST_CASE("lex_compare")
    {
        CHECK(lex_compare(Partition{2}, Partition{1, 1}) == std::strong_ordering::greater);
        CHECK(lex_compare(Partition{1, 1}, Partition{1, 1}) == std::strong_ordering::equal);
        CHECK(lex_compare(Partition{2, 1}, Partition{2, 2}) == std::strong_ordering::less);
    }

    TEST_CASE("dominates")
    {
        CHECK(dominates(Partition{1, 1}, Partition{2, 1}));
        CHECK_FALSE(dominates(Partition{2}, Partition{1, 1}));
        CHECK(dominates(Partition{}, Partition{5}));
    }

    TEST_CASE("delta_l and delta_prime_l")
    {
        CHECK(delta_l(2, Partition{}) == 0);
        CHECK(delta_l(2, Partition{3, 1}) == 8);
        CHECK(delta_l(3, Partition{2, 1}) == 10);
        CHECK(delta_prime_l(2, Partition{3, 1}) == 8);
        CHECK(delta_prime_l(2, Partition{2, 2}) == 5);
        CHECK(delta_l(2, Partition{2, 2}) == 6);
        CHECK(delta_prime_l(5, Partition{1}) == 4);
        CHECK(delta_prime_l(5, Partition{}) == 0);
        CHECK_THROWS_AS(delta_l(4, Partition{1}), InvalidArgument);
        CHECK_THROWS_AS(delta_prime_l(1, Partition{1}), InvalidArgument);
    }

    TEST_CASE("shift_d and shift_dprime")
    {
        CHECK(shift_d(Partition{3, 2, 1}, 1) == Partition{2, 1});
        CHECK(shift_d(Partition{3, 2, 1}, 0) == Partition{3, 2, 1});
        CHECK(shift_d(Partition{2, 1}, 5) == Partition{});
        CHECK(shift_dprime(Partition{3, 1}) == Partition{2});
        CHECK(shift_dprime(Partition{1, 1, 1}) == Partition{});
        CHECK(shift_dprime(Partition{}) == Partition{});
    }

    TEST_CASE("d and d' commute and are conjugate to each other")
    {
        for (int n = 0; n <= 9; ++n)
            for (const auto& p : partitions_of(n)) {
                CHECK(shift_d(shift_dprime(p), 1) == shift_dprime(shift_d(p, 1)));
                CHECK(shift_dprime(p) == conjugate(shift_d(conjugate(p), 1)));
            }
    }

    TEST_CASE("f_l")
    {
        CHECK(f_l(3, Partition{2}) == 2);
        CHECK(f_l(2, Partition{3, 1}) == Rational(5, 2));
        CHECK(f_l(2, Partition{}) == 0);
        CHECK_THROWS_AS(f_l(6, Partition{1}), InvalidArgument);
    }

    TEST_CASE("balanced_split")
    {
        CHECK(balanced_split(Partition{2}) == std::pair{Partition{1}, Partition{1}});
        CHECK(balanced_split(Partition{3, 1}) == std::pair{Partition{2, 1}, Partition{1}});
        CHECK(balanced_split(Partition{}) == std::pair{Partition{}, Partition{}});
        auto [r, s] = balanced_split(Partition{3, 1});
        CHECK(delta_l(2, r) + delta_l(2, s) == 5);
    }

    TEST_CASE("min_split_delta_bruteforce")
    {
        CHECK(min_split_delta_bruteforce(2, Partition{2}) == 2);
        CHECK(min_split_delta_bruteforce(2, Partition{}) == 0);
        CHECK(min_split_delta_bruteforce(2, Partition{3, 1}) == 5);
        CHECK_THROWS_AS(min_split_delta_bruteforce(2, Partition{6, 4}, 100), BudgetExceeded);
        // Sum 10 must still be feasible within the default budget.
        CHECK(min_split_delta_bruteforce(2, Partition{4, 3, 2, 1}) == 2 * f_l(2, Partition{4, 3, 2, 1}));
    }

    TEST_CASE("min split equals the balanced split and 2 f_l")
    {
        for (std::int64_t l : {2, 3})
            for (int n = 0; n <= 8; ++n)
                for (const auto& e : partitions_of(n)) {
                    Integer brute = min_split_delta_bruteforce(l, e);
                    auto [r, s] = balanced_split(e);
                    CHECK(brute == delta_l(l, r) + delta_l(l, s));
                    CHECK(Rational(brute) == 2 * f_l(l, e));
                    CHECK(Rational(brute) >= f_l(l, e));
                    CHECK(componentwise_sum(r, s) == e);
                }
    }

    TEST_CASE("Lemma 4.3: delta_l strictly increasing under majorization")
    {
        for (std::int64_t l : {2, 3})
            for (int n = 0; n <= 10; ++n) {
                auto ps = partitions_of(n);
                for (std::size_t i = 0; i + 1 < ps.size(); ++i)
                    REQUIRE(lex_compare(ps[i], ps[i + 1]) == std::strong_ordering::greater);
                for (const auto& p : ps)
                    for (const auto& q : ps)
                        if (!(p == q) && majorizes(p, q))
                            CHECK(delta_l(l, p) > delta_l(l, q));
            }
    }

    TEST_CASE("Lemma 4.3 in lex order: smallest counterexamples")
    {
        // Lex order is weaker than majorization; delta_l is not monotone for it.
        CHECK(lex_compare(Partition{3, 1, 1, 1, 1, 1}, Partition{2, 2, 2, 2}) == std::strong_ordering::greater);
        CHECK(delta_l(2, Partition{3, 1, 1, 1, 1, 1}) == 12);
        CHECK(delta_l(2, Partition{2, 2, 2, 2}) == 12);
        CHECK(delta_l(2, Partition{4, 1, 1, 1, 1, 1}) < delta_l(2, Partition{3, 3, 3}));
        CHECK(delta_l(3, Partition{3, 1, 1, 1, 1, 1, 1, 1}) == delta_l(3, Partition{2, 2, 2, 2, 2}));
        // No counterexample below N = 8 for l = 2, or below N = 10 for l = 3.
        for (std::int64_t l : {2, 3})
            for (int n = 0; n < (l == 2 ? 8 : 10); ++n) {
                auto ps = partitions_of(n);
                for (std::size_t i = 0; i + 1 < ps.size(); ++i)
                    CHECK(delta_l(l, ps[i]) > delta_l(l, ps[i + 1]));
            }
        CHECK_FALSE(majorizes(Partition{4, 1, 1, 1, 1, 1}, Partition{3, 3, 3}));
        CHECK(majorizes(Partition{3, 3, 2}, Partition{3, 3, 1, 1}));
    }

    TEST_CASE("delta_l >= delta'_l with equality iff tail parts <= 1")
    {
        for (std::int64_t l : {2, 3, 5})
            for (int n = 0; n <= 10; ++n)
                for (const auto& p : partitions_of(n)) {
                    bool tail = true;
                    for (std::size_t i = 1; i < p.length(); ++i)
                        tail = tail && p[i] <= 1;
                    CHECK(delta_l(l, p) >= delta_prime_l(l, p));
                    CHECK((delta_l(l, p) == delta_prime_l(l, p)) == tail);
                }
    }

    TEST_CASE("partitions_of counts")
    {
        const int counts[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
        for (int n = 0; n <= 10; ++n)
            CHECK(partitions_of(n).size() == static_cast<std::size_t>(counts[n]));
    }

    TEST_CASE("merge and componentwise_sum")
    {
        CHECK(merge(Partition{3, 1}, Partition{2}) == Partition{3, 2, 1});
        CHECK(componentwise_sum(Partition{3, 1}, Partition{2}) == Partition{5, 1});
        std::mt19937_64 rng(7);
        for (int k = 0; k < 200; ++k) {
            std::vector<int> a, b;
            for (int j = 0; j < 4; ++j) {
                a.push_back(static_cast<int>(rng() % 4));
                b.push_back(static_cast<int>(rng() % 4));
            }
            Partition pa = Partition::from_unsorted(a), pb = Partition::from_unsorted(b);
            // Lemma 4.1's bounds hold for the split extension itself.
            CHECK(lex_compare(merge(pa, pb), componentwise_sum(pa, pb)) != std::strong_ordering::greater);
            CHECK(merge(pa, pb).total() == pa.total() + pb.total());
        }
    }
}
