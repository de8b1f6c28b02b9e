#include "neron/classify.hpp"
#include "neron/errors.hpp"

#include "doctest.h"

using namespace neron;

namespace {

AbGroup G(std::map<std::int64_t, Partition> m) { return AbGroup::from_primary(m); }
AbGroup Z(std::initializer_list<long> ns) { return AbGroup::from_invariant_factors(std::vector<long>(ns)); }

std::vector<BlockKind> kinds(const ConstructionPlan& p)
{
    std::vector<BlockKind> out;
    for (const auto& b : p.blocks)
        out.push_back(b.kind);
    return out;
}

// Independent oracle for the realizability bound: sum over primes of
// sum_{i > t} ((l^floor(m/2) + l^ceil(m/2))/2 - 1).
Rational rhs_oracle(const AbGroup& g, long t, std::int64_t p)
{
    Rational s = 0;
    for (const auto& [l, part] : g.primary()) {
        if (l == p)
            continue;
        for (std::size_t i = static_cast<std::size_t>(t); i < part.length(); ++i) {
            unsigned m = static_cast<unsigned>(part[i]);
            Rational term(ipow(l, m / 2) + ipow(l, (m + 1) / 2), 2);
            term.canonicalize();
            s += term - 1;
        }
    }
    return s;
}

} // namespace

TEST_SUITE("classify")
{
    TEST_CASE("rhs_bound examples")
    {
        CHECK(rhs_bound(G({{3, Partition{2}}}), 0, 0) == 2);
        CHECK(rhs_bound(G({{2, Partition{1, 1}}}), 0, 0) == 1);
        CHECK(rhs_bound(G({{2, Partition{3, 1}}, {3, Partition{2}}}), 2, 0) == 0);
        CHECK(rhs_bound(G({{2, Partition{1}}}), 0, 0) == Rational(1, 2));
        for (std::int64_t n = 1; n <= 200; ++n)
            for (const auto& g : groups_of_order(n))
                for (long t = 0; t <= 2; ++t)
                    CHECK(rhs_bound(g, t, 0) == rhs_oracle(g, t, 0));
    }

    TEST_CASE("is_realizable examples")
    {
        CHECK(is_realizable(make_query(Z({4}), 0, 0, 1)));
        CHECK_FALSE(is_realizable(make_query(Z({9}), 0, 0, 1)));
        CHECK(is_realizable(make_query(Z({9}), 0, 0, 2)));
        CHECK(is_realizable(make_query(Z({2}), 1, 0, 0)));
        CHECK_FALSE(is_realizable(make_query(Z({2}), 0, 1, 0)));
        CHECK(is_realizable(make_query(Z({2}), 0, 0, 1)));
        CHECK_THROWS_AS(is_realizable(make_query(Z({9}), 0, 0, 2, 3)), InvalidArgument);
        CHECK_FALSE(is_realizable(make_query(Z({25}), 0, 0, 0, 3)));
        CHECK(is_realizable(make_query(Z({25}), 0, 0, 4, 3)));
        CHECK_FALSE(is_realizable(make_query(Z({25}), 0, 0, 3, 3)));
    }

    TEST_CASE("validate_query")
    {
        CHECK_THROWS_AS(validate_query(RealizabilityQuery{Z({2}), 0, 3, 1, 1, 0}), InvalidArgument);
        CHECK_THROWS_AS(validate_query(make_query(Z({2}), -1, 1, 1)), InvalidArgument);
        CHECK_THROWS_AS(validate_query(make_query(Z({5}), 0, 0, 4, 5)), InvalidArgument);
        CHECK_THROWS_AS(validate_query(make_query(Z({5}), 0, 0, 4, 4)), InvalidArgument);
        CHECK_NOTHROW(validate_query(make_query(Z({5}), 0, 0, 4, 7)));
    }

    TEST_CASE("plan examples")
    {
        auto q1 = make_query(Z({12, 2}), 1, 0, 2);
        auto p1 = plan(q1);
        CHECK(kinds(p1) == std::vector<BlockKind>{BlockKind::tate_product, BlockKind::cyclic2_single, BlockKind::unipotent_pad});
        CHECK(p1.blocks[0].ns == std::vector<Integer>{12});
        CHECK(p1.blocks[0].dim == 1);
        CHECK(p1.blocks[1].dim == 1);
        CHECK(p1.blocks[2].dim == 1);
        CHECK(verify_plan(p1, q1).ok);

        auto q2 = make_query(Z({9}), 0, 0, 2);
        auto p2 = plan(q2);
        REQUIRE(p2.blocks.size() == 1);
        CHECK(p2.blocks[0].kind == BlockKind::ex55);
        CHECK(p2.blocks[0].l == 3);
        CHECK(p2.blocks[0].r == 1);
        CHECK(p2.blocks[0].dim == 2);
        CHECK(verify_plan(p2, q2).ok);

        auto q3 = make_query(AbGroup(), 0, 1, 1);
        CHECK(kinds(plan(q3)) == std::vector<BlockKind>{BlockKind::abelian_pad, BlockKind::unipotent_pad});
        CHECK(verify_plan(plan(q3), q3).ok);

        CHECK_THROWS_AS(plan(make_query(Z({9}), 0, 0, 1)), NotRealizable);
    }

    TEST_CASE("plan block choices")
    {
        // odd m > 1 -> ex54, l = 2 singletons pooled into klein pairs.
        auto p = plan(make_query(Z({8}), 0, 0, 3));
        REQUIRE(!p.blocks.empty());
        CHECK(p.blocks[0].kind == BlockKind::ex54);
        CHECK(p.blocks[0].r == 1);
        CHECK(p.blocks[0].s == 1);
        auto k = plan(make_query(Z({2, 2, 2}), 0, 0, 2));
        CHECK(kinds(k) == std::vector<BlockKind>{BlockKind::klein_pair, BlockKind::cyclic2_single});
        auto e53 = plan(make_query(Z({3, 3}), 0, 0, 2));
        CHECK(kinds(e53) == std::vector<BlockKind>{BlockKind::ex53, BlockKind::ex53});
    }

    TEST_CASE("verify_plan negative cases")
    {
        auto q = make_query(Z({12, 2}), 1, 0, 2);
        auto p = plan(q);
        auto missing = p;
        missing.blocks.erase(missing.blocks.begin() + 1);
        auto v1 = verify_plan(missing, q);
        CHECK_FALSE(v1.ok);
        CHECK_FALSE(v1.diagnostics.empty());
        auto inflated = p;
        inflated.blocks.back().dim += 1;
        inflated.blocks.back().ranks.u += 1;
        CHECK_FALSE(verify_plan(inflated, q).ok);
        auto wrong_phi = p;
        wrong_phi.blocks[1].predicted_phi = Z({3});
        CHECK_FALSE(verify_plan(wrong_phi, q).ok);
        auto bad_dim = p;
        bad_dim.blocks[1].dim = 2;
        CHECK_FALSE(verify_plan(bad_dim, q).ok);
    }

    TEST_CASE("end_to_end_check examples")
    {
        auto p4 = plan(make_query(Z({4}), 0, 0, 1));
        REQUIRE(p4.blocks.size() == 1);
        CHECK(p4.blocks[0].kind == BlockKind::ex55);
        CHECK(end_to_end_check(p4).ok);
        auto pk = plan(make_query(Z({2, 2}), 0, 0, 1));
        REQUIRE(pk.blocks.size() == 1);
        CHECK(pk.blocks[0].kind == BlockKind::klein_pair);
        CHECK(end_to_end_check(pk).ok);
        auto p8 = plan(make_query(Z({8}), 0, 0, 3));
        CHECK(end_to_end_check(p8).ok);
        BlockPhiCache cache;
        auto big = plan(make_query(Z({12, 6, 3}), 1, 1, 6));
        CHECK(verify_plan(big, make_query(Z({12, 6, 3}), 1, 1, 6)).ok);
        CHECK(end_to_end_check(big, &cache).ok);
        CHECK(cache.size() > 0);
        // A block whose prediction is wrong is caught.
        auto lie = p8;
        lie.blocks[0].predicted_phi = Z({4});
        CHECK_FALSE(end_to_end_check(lie).ok);
    }

    TEST_CASE("plan iff realizable, monotone, verified (order <= 60, d <= 5)")
    {
        for (std::int64_t n = 1; n <= 60; ++n)
            for (const auto& g : groups_of_order(n))
                for (std::int64_t p : {0, 5}) {
                    if (p && n % p == 0)
                        continue;
                    for (long d = 0; d <= 5; ++d)
                        for (long t = 0; t <= d; ++t)
                            for (long a = 0; t + a <= d; ++a) {
                                auto q = make_query(g, t, a, d - t - a, p);
                                bool r = is_realizable(q);
                                if (r) {
                                    auto pl = plan(q);
                                    CHECK(verify_plan(pl, q).ok);
                                    CHECK(is_realizable(make_query(g, t, a, d - t - a + 1, p)));
                                    CHECK(is_realizable(make_query(g, t, a + 1, d - t - a, p)));
                                } else {
                                    CHECK_THROWS_AS(plan(q), NotRealizable);
                                }
                            }
                }
    }

    TEST_CASE("block kind names round trip")
    {
        for (auto k : {BlockKind::tate_product, BlockKind::ex52, BlockKind::ex53, BlockKind::ex54, BlockKind::ex55,
                       BlockKind::klein_pair, BlockKind::cyclic2_single, BlockKind::abelian_pad, BlockKind::unipotent_pad})
            CHECK(block_kind_from_string(to_string(k)) == k);
        CHECK_THROWS_AS(block_kind_from_string("nope"), InvalidArgument);
    }
}
