#include "neron/abgroup.hpp"
#include "neron/errors.hpp"

#include "doctest.h"

#include <random>

using namespace neron;

namespace {

AbGroup G(std::map<std::int64_t, Partition> m) { return AbGroup::from_primary(m); }

// Independent oracle: invariants of a subgroup from element orders only.
Partition invariant_by_orders(const ConcreteLGroup& g, const std::vector<std::uint32_t>& elems)
{
    // |B[l^j]| = l^{sum_i min(b_i, j)}; differences give the conjugate partition.
    std::vector<int> counts;
    for (unsigned j = 1;; ++j) {
        std::size_t c = 0;
        for (auto x : elems)
            if (g.exponent(x) <= j)
                ++c;
        int lg = 0;
        for (std::size_t v = c; v > 1; v /= static_cast<std::size_t>(g.prime()))
            ++lg;
        counts.push_back(lg);
        if (c == elems.size())
            break;
    }
    std::vector<int> conj;
    int prev = 0;
    for (int c : counts) {
        conj.push_back(c - prev);
        prev = c;
    }
    return conjugate(Partition::from_unsorted(conj));
}

} // namespace

TEST_SUITE("abgroups")
{
    TEST_CASE("from_invariant_factors")
    {
        CHECK(AbGroup::from_invariant_factors(std::vector<long>{12, 2}) == G({{2, Partition{2, 1}}, {3, Partition{1}}}));
        CHECK(AbGroup::from_invariant_factors(std::vector<long>{1}).trivial());
        CHECK(AbGroup::from_invariant_factors(std::vector<long>{6, 6}) ==
              G({{2, Partition{1, 1}}, {3, Partition{1, 1}}}));
        CHECK_THROWS_AS(AbGroup::from_invariant_factors(std::vector<long>{0}), InvalidArgument);
        CHECK_THROWS_AS(AbGroup::from_invariant_factors(std::vector<long>{-3}), InvalidArgument);
        CHECK_THROWS_AS(G({{4, Partition{1}}}), InvalidArgument);
    }

    TEST_CASE("invariant factors round trip")
    {
        for (std::int64_t n = 1; n <= 300; ++n)
            for (const auto& g : groups_of_order(n)) {
                auto ns = g.to_invariant_factors();
                for (std::size_t i = 0; i + 1 < ns.size(); ++i)
                    CHECK(ns[i] % ns[i + 1] == 0);
                CHECK(AbGroup::from_invariant_factors(ns) == g);
                CHECK(g.order() == n);
            }
    }

    TEST_CASE("groups_of_order counts")
    {
        CHECK(groups_of_order(1).size() == 1);
        CHECK(groups_of_order(8).size() == 3);
        CHECK(groups_of_order(16).size() == 5);
        CHECK(groups_of_order(72).size() == 6);
        CHECK(groups_of_order(64).size() == 11);
    }

    TEST_CASE("delta")
    {
        CHECK(delta(AbGroup()) == 0);
        CHECK(delta(G({{2, Partition{2, 1}}})) == 4);
        CHECK(delta(G({{2, Partition{1}}, {3, Partition{1}}})) == 3);
        CHECK(delta_prime(G({{2, Partition{2, 2}}})) == 5);
        CHECK(direct_sum(G({{2, Partition{1}}}), G({{2, Partition{2}}, {5, Partition{1}}})) ==
              G({{2, Partition{2, 1}}, {5, Partition{1}}}));
    }

    TEST_CASE("concrete group basics")
    {
        ConcreteLGroup g(2, Partition{2, 1});
        CHECK(g.order() == 8);
        std::size_t identity_count = 0;
        for (std::uint32_t x = 0; x < g.order(); ++x) {
            CHECK(g.add(x, 0) == x);
            CHECK(g.multiple(x, 4) == 0);
            if (g.exponent(x) == 0)
                ++identity_count;
        }
        CHECK(identity_count == 1);
        CHECK_THROWS_AS(ConcreteLGroup(2, Partition{11}), BudgetExceeded);
    }

    TEST_CASE("enumerate_subgroup_pairs examples")
    {
        using P = std::pair<Partition, Partition>;
        CHECK(enumerate_subgroup_pairs(ConcreteLGroup(2, Partition{1})) == std::set<P>{{Partition{}, Partition{1}}, {Partition{1}, Partition{}}});
        CHECK(enumerate_subgroup_pairs(ConcreteLGroup(2, Partition{2})) ==
              std::set<P>{{Partition{}, Partition{2}}, {Partition{1}, Partition{1}}, {Partition{2}, Partition{}}});
        CHECK(enumerate_subgroup_pairs(ConcreteLGroup(2, Partition{1, 1})) ==
              std::set<P>{{Partition{}, Partition{1, 1}}, {Partition{1}, Partition{1}}, {Partition{1, 1}, Partition{}}});
        CHECK(enumerate_subgroups(ConcreteLGroup(2, Partition{1, 1})).size() == 5);
    }

    TEST_CASE("subgroup counts match known values")
    {
        // Number of subgroups of (Z/2)^k: 1, 2, 5, 16, 67, 374.
        const std::size_t elem2[] = {1, 2, 5, 16, 67, 374};
        for (int k = 0; k <= 5; ++k) {
            std::vector<int> ones(static_cast<std::size_t>(k), 1);
            CHECK(enumerate_subgroups(ConcreteLGroup(2, Partition(ones))).size() == elem2[k]);
        }
        CHECK(enumerate_subgroups(ConcreteLGroup(3, Partition{1, 1})).size() == 6);
        CHECK(enumerate_subgroups(ConcreteLGroup(2, Partition{2, 1})).size() == 8);
    }

    TEST_CASE("subgroup and quotient invariants agree with independent oracles")
    {
        for (std::int64_t l : {2, 3})
            for (int k = 0; k <= 4; ++k)
                for (const auto& shape : partitions_of(k)) {
                    ConcreteLGroup g(l, shape);
                    for (const auto& sub : enumerate_subgroups(g)) {
                        auto elems = sub.members();
                        CHECK(elems.size() == sub.size);
                        Partition b = subgroup_invariant(g, sub);
                        CHECK(b == invariant_by_orders(g, elems));
                        Partition a = quotient_invariant(g, sub);
                        CHECK(a.total() + b.total() == shape.total());
                        CHECK(sub.gens.size() == b.length());
                    }
                }
    }

    TEST_CASE("check_extension_bounds")
    {
        CHECK(check_extension_bounds(Partition{1}, Partition{1}, Partition{2}));
        CHECK(check_extension_bounds(Partition{1}, Partition{1}, Partition{1, 1}));
        CHECK_FALSE(check_extension_bounds(Partition{2}, Partition{2}, Partition{3, 2}));
        CHECK_FALSE(check_extension_bounds(Partition{2}, Partition{1}, Partition{1, 1, 1}));
    }

    TEST_CASE("check_subquotient_shift")
    {
        CHECK(check_subquotient_shift(Partition{1}, Partition{2, 1}, 1));
        CHECK(check_subquotient_shift(Partition{}, Partition{2, 1}, 2));
        CHECK_FALSE(check_subquotient_shift(Partition{}, Partition{2, 1}, 1));
    }

    TEST_CASE("check_lemma44")
    {
        auto r1 = check_lemma44(Partition{2}, Partition{1}, Partition{1}, 2);
        CHECK(r1.subadditive);
        CHECK(r1.equality_iff_split);
        auto r2 = check_lemma44(Partition{1, 1}, Partition{1}, Partition{1}, 2);
        CHECK(r2.subadditive);
        CHECK(r2.equality_iff_split);
        auto r3 = check_lemma44(Partition{2, 1}, Partition{1}, Partition{2}, 2);
        CHECK(r3.subadditive);
        CHECK(r3.equality_iff_split);
        // An impossible triple is caught.
        CHECK_FALSE(check_lemma44(Partition{1}, Partition{1}, Partition{1}, 2).subadditive);
    }

    TEST_CASE("check_lemma44_part3")
    {
        CHECK(check_lemma44_part3(Partition{2}, Partition{1}, 2, 2, 1));
        CHECK(check_lemma44_part3(Partition{1, 1}, Partition{1}, 2, 1, 1));
        CHECK(check_lemma44_part3(Partition{2, 1}, Partition{2, 1}, 3, 2, 0));
        CHECK_THROWS_AS(check_lemma44_part3(Partition{3}, Partition{1}, 2, 2, 2), PreconditionError);
        CHECK_THROWS_AS(check_lemma44_part3(Partition{1}, Partition{}, 2, 0, 1), PreconditionError);
        CHECK_THROWS_AS(check_lemma44_part3(Partition{2}, Partition{}, 2, 2, 1), PreconditionError);
    }

    TEST_CASE("cyclic_from_two_step")
    {
        CHECK(cyclic_from_two_step({Partition{2}, Partition{2}, Partition{1}}));
        CHECK(cyclic_from_two_step({Partition{1}}));
        CHECK_FALSE(cyclic_from_two_step({Partition{1, 1}}));
        CHECK_THROWS_AS(cyclic_from_two_step({}), InvalidArgument);
    }

    TEST_CASE("Lemma 4.8 search finds no counterexample on small groups")
    {
        for (std::int64_t l : {2, 3})
            for (int k = 0; k <= 3; ++k)
                for (const auto& shape : partitions_of(k)) {
                    auto res = lemma48_search(ConcreteLGroup(l, shape));
                    CHECK_FALSE(res.counterexample.has_value());
                }
    }

    TEST_CASE("Lemma 4.1 / 4.4 / 4.10 exhaustively on groups of order <= 32")
    {
        for (int k = 0; k <= 5; ++k)
            for (const auto& e : partitions_of(k)) {
                ConcreteLGroup g(2, e);
                for (const auto& sub : enumerate_subgroups(g)) {
                    Partition b = subgroup_invariant(g, sub), a = quotient_invariant(g, sub);
                    CHECK(check_extension_bounds(a, b, e));
                    auto r = check_lemma44(e, a, b, 2);
                    CHECK(r.subadditive);
                    CHECK(r.equality_iff_split);
                    for (std::size_t t = b.length(); t <= 2; ++t)
                        CHECK(check_subquotient_shift(a, e, t));
                    // e_i >= a_i and e_i >= b_i (subquotients are dominated).
                    CHECK(dominates(a, e));
                    CHECK(dominates(b, e));
                }
            }
    }
}
