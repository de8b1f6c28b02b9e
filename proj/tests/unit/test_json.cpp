#include "neron/errors.hpp"
#include "neron/json_io.hpp"

#include "doctest.h"

using namespace neron;
using namespace neron::json_io;

TEST_SUITE("json")
{
    TEST_CASE("integers")
    {
        CHECK(integer_to_json(Integer(42)) == Json(42));
        CHECK(integer_to_json(Integer("123456789012345678901234567890")) == Json("123456789012345678901234567890"));
        CHECK(integer_to_string_json(Integer(-7)) == Json("-7"));
        CHECK(integer_from_json(Json(-3)) == -3);
        CHECK(integer_from_json(Json("-123456789012345678901234567890")) == Integer("-123456789012345678901234567890"));
        CHECK_THROWS_AS(integer_from_json(Json("12a")), InvalidArgument);
        CHECK_THROWS_AS(integer_from_json(Json("")), InvalidArgument);
        CHECK_THROWS_AS(integer_from_json(Json(1.5)), InvalidArgument);
        CHECK_THROWS_AS(integer_from_json(Json::array()), InvalidArgument);
    }

    TEST_CASE("partitions and groups")
    {
        CHECK(partition_from_json(parse("[3,1,1]")) == Partition{3, 1, 1});
        CHECK(to_json(Partition{2, 1}) == parse("[2,1]"));
        CHECK_THROWS_AS(partition_from_json(parse("[1,2]")), InvalidArgument);
        CHECK_THROWS_AS(partition_from_json(parse("[-1]")), InvalidArgument);
        CHECK_THROWS_AS(partition_from_json(parse("{}")), InvalidArgument);
        AbGroup g = abgroup_from_json(parse(R"({"2":[2,1],"3":[1]})"));
        CHECK(g == AbGroup::from_invariant_factors(std::vector<long>{12, 2}));
        CHECK(abgroup_from_json(to_json(g)) == g);
        CHECK(abgroup_from_json(parse("{}")).trivial());
        CHECK_THROWS_AS(abgroup_from_json(parse(R"({"4":[1]})")), InvalidArgument);
        CHECK_THROWS_AS(abgroup_from_json(parse(R"({"x":[1]})")), InvalidArgument);
        CHECK_THROWS_AS(abgroup_from_json(parse("[1]")), InvalidArgument);
    }

    TEST_CASE("matrices and polynomials")
    {
        IntMatrix m = IntMatrix::from_rows({{1, -2}, {3, 4}});
        m(1, 1) = Integer("99999999999999999999999");
        Json j = to_json(m);
        CHECK(j["entries"][1][1] == Json("99999999999999999999999"));
        CHECK(matrix_from_json(j) == m);
        CHECK(matrix_from_json(parse(R"({"rows":1,"cols":2,"entries":[[1,"2"]]})")) == IntMatrix::from_rows({{1, 2}}));
        CHECK_THROWS_AS(matrix_from_json(parse(R"({"rows":2,"cols":2,"entries":[[1,2]]})")), InvalidArgument);
        CHECK_THROWS_AS(matrix_from_json(parse(R"({"rows":1,"cols":2,"entries":[[1]]})")), InvalidArgument);
        CHECK_THROWS_AS(matrix_from_json(parse(R"({"cols":2,"entries":[[1]]})")), InvalidArgument);
        ZPoly p{Integer(1), Integer(0), Integer(-1)};
        CHECK(poly_from_json(poly_to_json(p)) == p);
        CHECK_THROWS_AS(poly_from_json(parse("3")), InvalidArgument);
    }

    TEST_CASE("models round trip")
    {
        for (const auto& m : {model_example52(3, 1), model_example53(3, 2), model_example54(2, 1, 1, 8),
                              model_example55(3, 1, 8), model_unipotent_elliptic(EllipticKind::klein),
                              model_abelian_pad(2, 5), model_example53(2, 1)}) {
            Json j = to_json(m);
            GaloisLatticeModel back = model_from_json(parse(j.dump()));
            CHECK(back.name == m.name);
            CHECK(back.l == m.l);
            CHECK(back.mode == m.mode);
            CHECK(back.precision == m.precision);
            CHECK(back.tau == m.tau);
            CHECK(back.filtration == m.filtration);
            CHECK(back.ranks == m.ranks);
            CHECK(back.m_t == m.m_t);
            CHECK(back.m_a == m.m_a);
            CHECK(back.charpoly_t == m.charpoly_t);
            CHECK(back.rank_identities == m.rank_identities);
            CHECK(compute_phi(back) == compute_phi(m));
        }
        Json j = to_json(model_example52(3, 1));
        j["mode"] = "fuzzy";
        CHECK_THROWS_AS(model_from_json(j), InvalidArgument);
        Json k = to_json(model_example52(3, 1));
        k["rank"] = 7;
        CHECK_THROWS_AS(model_from_json(k), InvalidArgument);
        Json f = to_json(model_example52(3, 1));
        f["filtration"].erase(0);
        CHECK_THROWS_AS(model_from_json(f), InvalidArgument);
    }

    TEST_CASE("phi report layout")
    {
        auto m = model_example54(2, 1, 1, 8);
        Json r = to_json(compute_phi(m), 2);
        CHECK(r["phi"] == parse("[3]"));
        CHECK(r["order"] == Json("8"));
        CHECK(r["graded"] == parse("[[1],[1],[1],[]]"));
        CHECK(r["layers"]["0/4"] == parse("[3]"));
        CHECK(r["layers"]["1/3"] == parse("[2]"));
        CHECK(r["corank"] == 0);
    }

    TEST_CASE("queries and plans round trip")
    {
        auto q = query_from_json(parse(R"({"group":{"2":[2,1],"3":[1]},"t":1,"a":0,"u":2})"));
        CHECK(q.d == 3);
        CHECK(q.p == 0);
        auto back = query_from_json(to_json(q));
        CHECK(back.G == q.G);
        CHECK(back.d == q.d);
        CHECK_THROWS_AS(query_from_json(parse(R"({"group":{},"t":1,"a":0,"u":2,"d":5})")), InvalidArgument);
        CHECK_THROWS_AS(query_from_json(parse(R"({"group":{"5":[1]},"t":0,"a":0,"u":2,"p":5})")), InvalidArgument);
        CHECK_THROWS_AS(query_from_json(parse(R"({"group":{},"a":0,"u":2})")), InvalidArgument);

        auto pl = plan(make_query(AbGroup::from_invariant_factors(std::vector<long>{12, 6, 3}), 1, 1, 6));
        Json pj = to_json(pl, q);
        auto pl2 = plan_from_json(parse(pj.dump()));
        REQUIRE(pl2.blocks.size() == pl.blocks.size());
        for (std::size_t i = 0; i < pl.blocks.size(); ++i)
            CHECK(pl2.blocks[i] == pl.blocks[i]);
        CHECK_THROWS_AS(plan_from_json(parse(R"({"blocks":3})")), InvalidArgument);
        CHECK_THROWS_AS(block_from_json(parse(R"({"kind":"ex99","dim":1})")), InvalidArgument);
    }

    TEST_CASE("malformed text")
    {
        CHECK_THROWS_AS(parse("{"), InvalidArgument);
        CHECK_THROWS_AS(parse(""), InvalidArgument);
        CHECK_THROWS_AS(parse("[1,]"), InvalidArgument);
        CHECK(parse(" {\"a\": 1} ")["a"] == 1);
    }
}
