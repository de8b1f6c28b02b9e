#include "neron/errors.hpp"
#include "neron/model.hpp"

#include "doctest.h"

#include <random>

using namespace neron;

namespace {

std::vector<Integer> ns(std::initializer_list<long> v)
{
    std::vector<Integer> out;
    for (long x : v)
        out.emplace_back(x);
    return out;
}

Integer order_of(std::int64_t l, const Partition& p) { return ipow(l, static_cast<unsigned>(p.total())); }

void check_consistent(const GaloisLatticeModel& m, const PhiReport& r)
{
    CHECK(r.layer(0, 4) == r.phi);
    int total = 0;
    for (const auto& g : r.graded)
        total += g.total();
    CHECK(total == r.phi.total());
    for (int i = 0; i < 4; ++i)
        CHECK(r.layer(i, i + 1) == r.graded[static_cast<std::size_t>(i)]);
    // Thm 3.3(1): Φ³ needs at most t generators.
    CHECK(static_cast<long>(r.graded[3].length()) <= m.ranks.t);
    CHECK(check_thm33(m, r).all_ok());
}

} // namespace

TEST_SUITE("models")
{
    TEST_CASE("Example 5.1")
    {
        auto m = model_example51(ns({6}), 3);
        CHECK_NOTHROW(validate_model(m));
        auto r = compute_phi(m);
        CHECK(r.phi == Partition{1});
        CHECK(r.graded[3] == Partition{1});
        check_consistent(m, r);
        CHECK(compute_phi(model_example51(ns({2, 4}), 2)).phi == Partition{2, 1});
        CHECK(compute_phi(model_example51(ns({1}), 2)).phi == Partition{});
        auto z = compute_phi(model_example51(ns({12, 8, 3}), 2));
        CHECK(z.phi == Partition{3, 2});
        check_consistent(model_example51(ns({12, 8, 3}), 2), z);
        CHECK_THROWS_AS(model_example51(ns({0}), 2), InvalidArgument);
    }

    TEST_CASE("Example 5.2")
    {
        CHECK(compute_phi(model_example52(3, 1)).phi == Partition{1, 1});
        CHECK(compute_phi(model_example52(2, 1)).phi == Partition{2});
        CHECK(compute_phi(model_example52(2, 2)).phi == Partition{3, 1});
        for (std::int64_t l : {2, 3, 5})
            for (unsigned i = 1; i <= 3; ++i) {
                if (l == 5 && i == 3)
                    continue;
                auto m = model_example52(l, i);
                CHECK_NOTHROW(validate_model(m));
                auto r = compute_phi(m);
                Partition want = l == 2 ? Partition::from_unsorted({int(i) + 1, int(i) - 1}) : Partition{int(i), int(i)};
                CHECK(r.phi == want);
                CHECK(r.graded[0] == Partition{int(i)});
                CHECK(r.graded[2] == Partition{int(i)});
                CHECK(r.graded[1].empty());
                CHECK(r.graded[3].empty());
                check_consistent(m, r);
                CHECK(graded_by_intersection(m) == r.graded);
            }
    }

    TEST_CASE("Example 5.2 bound is tight at l = 3")
    {
        auto m = model_example52(3, 1);
        auto v = check_thm33(m, compute_phi(m));
        REQUIRE(v.all_ok());
        CHECK(v.parts[1].lhs == 2);
        CHECK(v.parts[1].mid == 2);
        CHECK(v.parts[1].rhs == 2);
    }

    TEST_CASE("Example 5.3")
    {
        CHECK(compute_phi(model_example53(3, 1)).phi == Partition{1});
        CHECK(compute_phi(model_example53(3, 2)).phi == Partition{2});
        CHECK(compute_phi(model_example53(5, 1)).phi == Partition{1});
        auto m = model_example53(3, 1);
        auto r = compute_phi(m);
        CHECK(r.graded == std::array<Partition, 4>{Partition{}, Partition{1}, Partition{}, Partition{}});
        check_consistent(m, r);
        auto m2 = model_example53(3, 2);
        auto v = check_thm33(m2, compute_phi(m2));
        REQUIRE(v.all_ok());
        CHECK(v.parts[2].lhs == 8);
        CHECK(v.parts[2].rhs == 8);
        auto m3 = model_example53(2, 1);
        CHECK_FALSE(m3.rank_identities);
        CHECK_FALSE(m3.warnings.empty());
    }

    TEST_CASE("Example 5.4")
    {
        struct Case {
            std::int64_t l;
            unsigned r, s, N;
            int order;
        };
        for (Case c : {Case{2, 1, 1, 8, 3}, Case{3, 1, 1, 8, 3}, Case{2, 1, 2, 10, 4}, Case{2, 2, 1, 10, 5}}) {
            auto m = model_example54(c.l, c.r, c.s, c.N);
            CHECK_NOTHROW(validate_model(m));
            auto r = compute_phi(m);
            CHECK(r.phi == Partition{c.order});
            CHECK(r.graded[0] == Partition{int(c.r)});
            CHECK(r.graded[1] == Partition{int(c.s)});
            CHECK(r.graded[2] == Partition{int(c.r)});
            CHECK(r.graded[3].empty());
            // Lemma 4.8 hypotheses: Φ/Φ² and Φ¹/Φ³ cyclic.
            CHECK(r.layer(0, 2).length() == 1);
            CHECK(r.layer(1, 3).length() == 1);
            check_consistent(m, r);
            // N -> N + 2 stability.
            CHECK(compute_phi(model_example54(c.l, c.r, c.s, c.N + 2)) == r);
        }
        CHECK_THROWS_AS(compute_phi(model_example54(2, 1, 1, 3)), PrecisionError);
    }

    TEST_CASE("Example 5.4 self checks")
    {
        auto t = twisted_self_checks(3, 2, 1);
        CHECK(t.integral);
        CHECK(t.intertwines);
        CHECK(t.sub_block);
        CHECK(t.quotient_block);
        CHECK(t.corank_mod_l == 1);
        CHECK(t.resultant_valuation == 8);
        for (std::int64_t l : {2, 3})
            for (unsigned r = 1; r <= 2; ++r) {
                auto c = twisted_self_checks(l, r, 1);
                CHECK((c.integral && c.intertwines && c.sub_block && c.quotient_block));
                CHECK(c.corank_mod_l == 1);
            }
    }

    TEST_CASE("Example 5.5")
    {
        struct Case {
            std::int64_t l;
            unsigned r, N;
            int order;
        };
        for (Case c : {Case{2, 1, 8, 2}, Case{3, 1, 8, 2}, Case{2, 2, 10, 4}}) {
            auto m = model_example55(c.l, c.r, c.N);
            CHECK_NOTHROW(validate_model(m));
            auto r = compute_phi(m);
            CHECK(r.phi == Partition{c.order});
            check_consistent(m, r);
            CHECK(compute_phi(model_example55(c.l, c.r, c.N + 2)) == r);
        }
    }

    TEST_CASE("unipotent elliptic models and pads")
    {
        CHECK(compute_phi(model_unipotent_elliptic(EllipticKind::klein)).phi == Partition{1, 1});
        CHECK(compute_phi(model_unipotent_elliptic(EllipticKind::cyclic2)).phi == Partition{1});
        CHECK(compute_phi(model_unipotent_elliptic(EllipticKind::klein, 3)).phi == Partition{});
        for (long n : {1, 2, 3}) {
            auto a = model_abelian_pad(n, 2);
            auto u = model_unipotent_pad(n, 3);
            CHECK_NOTHROW(validate_model(a));
            CHECK_NOTHROW(validate_model(u));
            CHECK(compute_phi(a).phi.empty());
            CHECK(compute_phi(u).phi.empty());
            CHECK(a.ranks.a == n);
            CHECK(u.ranks.u == n);
        }
    }

    TEST_CASE("direct_sum")
    {
        CHECK(compute_phi(direct_sum({model_example53(3, 1), model_example53(3, 1)})).phi == Partition{1, 1});
        auto e52 = model_example52(2, 1);
        CHECK(compute_phi(direct_sum({e52, model_abelian_pad(1, 2)})) == compute_phi(e52));
        CHECK(compute_phi(direct_sum({model_example51(ns({2}), 2), e52})).phi == Partition{2, 1});
        CHECK(compute_phi(direct_sum({e52, model_example55(2, 1, 8), model_abelian_pad(1, 2)})).phi == Partition{2, 2});
        CHECK_THROWS_AS(direct_sum({model_example55(2, 1, 8), model_example55(2, 1, 10)}), InvalidArgument);
    }

    TEST_CASE("direct_sum merges graded pieces (random)")
    {
        std::mt19937_64 rng(5);
        std::vector<GaloisLatticeModel> pool = {model_example51(ns({2, 4}), 2), model_example52(2, 1), model_example52(2, 2),
                                                model_example53(3, 1), model_unipotent_elliptic(EllipticKind::klein),
                                                model_unipotent_elliptic(EllipticKind::cyclic2), model_abelian_pad(1, 2),
                                                model_unipotent_pad(1, 2)};
        for (int it = 0; it < 25; ++it) {
            auto& a = pool[rng() % pool.size()];
            auto& b = pool[rng() % pool.size()];
            auto A = at_prime(a, 2), B = at_prime(b, 2);
            auto s = direct_sum({A, B});
            CHECK_NOTHROW(validate_model(s));
            auto ra = compute_phi(A), rb = compute_phi(B), rs = compute_phi(s);
            CHECK(rs.phi == merge(ra.phi, rb.phi));
            for (std::size_t k = 0; k < 4; ++k)
                CHECK(rs.graded[k] == merge(ra.graded[k], rb.graded[k]));
            check_consistent(s, rs);
        }
    }

    TEST_CASE("at_prime and Cor 3.4")
    {
        auto m = model_example51(ns({6, 10}), 2);
        auto m3 = at_prime(m, 3);
        CHECK(compute_phi(m3).phi == Partition{1});
        CHECK(compute_phi(at_prime(m, 5)).phi == Partition{1});
        CHECK(check_cor34_model(m, {2, 3, 5}).all_ok());
        auto s = direct_sum({model_example52(2, 1), at_prime(model_example53(3, 1), 2)});
        CHECK(check_cor34_model(s, {2, 3}).all_ok());
        CHECK(check_cor34({}).all_ok());
    }

    TEST_CASE("validate_model rejects broken models")
    {
        auto m = model_example52(3, 1);
        auto bad = m;
        bad.tau(0, 0) += 1;
        CHECK_THROWS_AS(validate_model(bad), ModelError);
        auto bad2 = m;
        bad2.ranks.t += 1;
        CHECK_THROWS_AS(validate_model(bad2), ModelError);
        auto bad3 = m;
        std::swap(bad3.filtration[1], bad3.filtration[3]);
        CHECK_THROWS_AS(validate_model(bad3), ModelError);
    }
}
