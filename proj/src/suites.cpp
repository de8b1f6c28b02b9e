#include "neron/suites.hpp"

#include "neron/classify.hpp"
#include "neron/errors.hpp"
#include "neron/lattice_auto.hpp"

#include <functional>
#include <random>

namespace neron {

using json_io::Json;

namespace {

constexpr std::size_t kMaxWitnesses = 20;

SuiteReport make(const std::string& name, std::uint64_t seed, std::uint64_t budget)
{
    SuiteReport r;
    r.name = name;
    r.seed = seed;
    r.budget = budget;
    return r;
}

void record(SuiteReport& r, bool ok, const std::function<Json()>& witness)
{
    ++r.checks;
    if (ok)
        return;
    ++r.violations;
    if (r.witnesses.size() < kMaxWitnesses)
        r.witnesses.push_back(witness());
}

Json pj(const Partition& p) { return json_io::to_json(p); }

// Shapes of all l-groups of order <= max_order.
std::vector<Partition> lgroup_shapes(std::int64_t l, std::uint64_t max_order)
{
    std::vector<Partition> out;
    std::uint64_t ord = 1;
    for (int k = 0; ord <= max_order; ++k, ord *= static_cast<std::uint64_t>(l))
        for (auto& p : partitions_of(k))
            out.push_back(p);
    return out;
}

} // namespace

Json SuiteReport::to_json() const
{
    return {{"suite", name},   {"seed", seed},           {"budget", budget}, {"passed", passed()},
            {"checks", checks}, {"violations", violations}, {"witnesses", witnesses}, {"stats", stats}};
}

SubgroupSweep subgroup_sweep(std::uint64_t max_order)
{
    SubgroupSweep s;
    s.lemma41 = make("lemma41", 0, max_order);
    s.lemma44 = make("lemma44", 0, max_order);
    s.lemma410 = make("lemma410", 0, max_order);
    s.lemma411_pairs = make("lemma411", 0, max_order);
    std::uint64_t split_pairs = 0, part3_checks = 0;
    Json pairs_by_group = Json::object();
    for (std::int64_t l : {2, 3}) {
        for (const Partition& e : lgroup_shapes(l, max_order)) {
            ConcreteLGroup g(l, e, max_order);
            auto subs = enumerate_subgroups(g);
            ++s.groups;
            s.subgroups += subs.size();
            const Integer de = delta_l(l, e);
            const Rational fe = f_l(l, e);
            // Lemma 4.4(1) on the group itself.
            record(s.lemma44, (de >= 0) && ((de == 0) == e.empty()),
                   [&] { return Json{{"part", 1}, {"l", l}, {"e", pj(e)}}; });
            for (const Subgroup& sub : subs) {
                Partition b = subgroup_invariant(g, sub);
                Partition a = quotient_invariant(g, sub);
                auto w = [&](const char* what) {
                    return Json{{"check", what}, {"l", l}, {"e", pj(e)}, {"a", pj(a)}, {"b", pj(b)}};
                };
                record(s.lemma41, check_extension_bounds(a, b, e), [&] { return w("m <= e <= n"); });

                auto r44 = check_lemma44(e, a, b, l);
                record(s.lemma44, r44.subadditive, [&] { return w("subadditive"); });
                record(s.lemma44, r44.equality_iff_split, [&] { return w("equality iff split"); });
                if (e == merge(a, b))
                    ++split_pairs;
                // Part 3 with M' = B, M'' = A: l^{max(e_1,1)} kills M, |B| = l^{sum b}.
                ++part3_checks;
                record(s.lemma44, check_lemma44_part3(e, a, l, std::max(e[0], 1), b.total()),
                       [&] { return w("part 3"); });
                // Part 3 also with a looser exponent bound.
                record(s.lemma44, check_lemma44_part3(e, a, l, std::max(e[0], 1) + 1, b.total()),
                       [&] { return w("part 3, a+1"); });

                // B needs exactly len(b) generators.
                if (sub.gens.size() != b.length())
                    record(s.lemma410, false, [&] { return w("minimal generator count"); });
                for (std::size_t t = b.length(); t <= 2; ++t)
                    record(s.lemma410, check_subquotient_shift(a, e, t),
                           [&] { return Json{{"l", l}, {"e", pj(e)}, {"a", pj(a)}, {"t", t}}; });

                Rational lhs(delta_l(l, a) + delta_l(l, b));
                record(s.lemma411_pairs, lhs >= fe, [&] { return w(">= f_l(e)"); });
                record(s.lemma411_pairs, lhs >= 2 * fe, [&] { return w(">= 2 f_l(e)"); });
            }
        }
    }
    for (SuiteReport* r : {&s.lemma41, &s.lemma44, &s.lemma410, &s.lemma411_pairs}) {
        r->stats["groups"] = s.groups;
        r->stats["subgroups"] = s.subgroups;
    }
    s.lemma44.stats["split_pairs"] = split_pairs;
    s.lemma44.stats["part3_checks"] = part3_checks;
    return s;
}

SuiteReport suite_lemma43(std::uint64_t max_n)
{
    SuiteReport r = make("lemma43", 0, max_n);
    std::uint64_t pairs = 0, dom_pairs = 0, dom_violations = 0;
    for (std::int64_t l : {2, 3}) {
        for (int n = 0; n <= static_cast<int>(max_n); ++n) {
            auto ps = partitions_of(n);
            std::vector<Integer> d;
            for (const auto& p : ps)
                d.push_back(delta_l(l, p));
            for (std::size_t i = 0; i < ps.size(); ++i)
                for (std::size_t j = 0; j < ps.size(); ++j) {
                    auto c = lex_compare(ps[i], ps[j]);
                    bool ok = true;
                    if (c == std::strong_ordering::greater)
                        ok = d[i] > d[j];
                    else if (c == std::strong_ordering::equal)
                        ok = d[i] == d[j];
                    ++pairs;
                    record(r, ok, [&] {
                        return Json{{"l", l}, {"a", pj(ps[i])}, {"b", pj(ps[j])}, {"delta_a", d[i].get_str()},
                                    {"delta_b", d[j].get_str()}};
                    });
                    // The exchange argument only gives monotonicity for majorization.
                    if (i != j && majorizes(ps[i], ps[j])) {
                        ++dom_pairs;
                        if (!(d[i] > d[j]))
                            ++dom_violations;
                    }
                }
        }
    }
    r.stats["pairs"] = pairs;
    r.stats["majorization_pairs"] = dom_pairs;
    r.stats["majorization_violations"] = dom_violations;
    return r;
}

SuiteReport suite_lemma411_partitions(std::uint64_t max_sum)
{
    SuiteReport r = make("lemma411", 0, max_sum);
    Json table = Json::array();
    for (std::int64_t l : {2, 3}) {
        for (int n = 0; n <= static_cast<int>(max_sum); ++n) {
            for (const auto& e : partitions_of(n)) {
                Integer brute = min_split_delta_bruteforce(l, e);
                Rational f = f_l(l, e);
                auto [rr, ss] = balanced_split(e);
                Integer bal = delta_l(l, rr) + delta_l(l, ss);
                auto w = [&](const char* what) {
                    return Json{{"check", what}, {"l", l}, {"e", pj(e)}, {"min", brute.get_str()},
                                {"f", to_string(f)}};
                };
                record(r, Rational(brute) == 2 * f, [&] { return w("min == 2 f_l(e)"); });
                record(r, Rational(brute) >= f, [&] { return w("min >= f_l(e)"); });
                record(r, bal == brute, [&] { return w("balanced split attains min"); });
                if (n <= 4)
                    table.push_back({{"l", l}, {"e", pj(e)}, {"min", brute.get_str()}, {"two_f", to_string(2 * f)}});
            }
        }
    }
    r.stats["sample"] = table;
    return r;
}

SuiteReport suite_lemma45(std::uint64_t seed, std::uint64_t per_prime)
{
    SuiteReport r = make("lemma45", seed, per_prime);
    std::mt19937_64 rng(seed);
    std::uint64_t equalities = 0, skipped = 0;
    for (std::int64_t l : {2, 3}) {
        for (std::uint64_t k = 0; k < per_prime; ++k) {
            LatticeAuto a = random_lattice_auto(l, rng, 12);
            CoinvariantReport c;
            try {
                c = check_coinvariant_bound(a, l);
            } catch (const PreconditionError&) {
                ++skipped; // 1 is an eigenvalue: outside the lemma's hypothesis
                continue;
            }
            auto w = [&](const char* what) {
                return Json{{"check", what}, {"l", l}, {"sigma", json_io::to_json(a.sigma())}, {"coinv", pj(c.coinv)},
                            {"p", pj(c.p)}};
            };
            record(r, c.rank_bound_ok, [&] { return w("delta(coinv) <= delta(p) <= cyclo rank <= rank"); });
            if (c.equality) {
                ++equalities;
                record(r, c.structure_ok, [&] { return w("equality case structure"); });
            }
        }
    }
    r.stats["equality_cases"] = equalities;
    r.stats["skipped_eigenvalue_one"] = skipped;
    return r;
}

SuiteReport suite_lemma48(std::uint64_t max_order)
{
    SuiteReport r = make("lemma48", 0, max_order);
    std::uint64_t subgroups = 0, states = 0, groups = 0;
    for (std::int64_t l = 2; static_cast<std::uint64_t>(l) <= max_order; ++l) {
        if (!is_prime(l))
            continue;
        for (const Partition& e : lgroup_shapes(l, max_order)) {
            ConcreteLGroup g(l, e, max_order);
            auto res = lemma48_search(g);
            ++groups;
            subgroups += res.subgroups;
            states += res.states;
            record(r, !res.counterexample.has_value(), [&] {
                return Json{{"l", l}, {"e", pj(e)}, {"chain_sizes", *res.counterexample}};
            });
        }
    }
    r.stats["groups"] = groups;
    r.stats["subgroups"] = subgroups;
    r.stats["states"] = states;
    return r;
}

namespace {

void thm33_on(SuiteReport& r, const GaloisLatticeModel& m, const std::string& label)
{
    PhiReport rep;
    try {
        validate_model(m);
        rep = compute_phi(m);
    } catch (const Error& e) {
        record(r, false, [&] { return Json{{"model", label}, {"error", e.what()}}; });
        return;
    }
    auto v = check_thm33(m, rep);
    for (int k = 0; k < 6; ++k) {
        const auto& part = v.parts[static_cast<std::size_t>(k)];
        record(r, part.ok, [&] { return Json{{"model", label}, {"l", m.l}, {"part", k + 1}, {"text", part.text}}; });
    }
}

void lists_with_sum_at_most(int max_sum, int max_part, std::vector<Integer>& cur, std::vector<std::vector<Integer>>& out,
                            int remaining)
{
    if (!cur.empty())
        out.push_back(cur);
    for (int n = std::min(max_part, remaining); n >= 1; --n) {
        cur.push_back(n);
        lists_with_sum_at_most(max_sum, n, cur, out, remaining - n);
        cur.pop_back();
    }
}

} // namespace

SuiteReport suite_thm33(std::uint64_t seed, std::uint64_t random_sums)
{
    SuiteReport r = make("thm33", seed, random_sums);
    std::uint64_t models = 0;
    auto run = [&](const GaloisLatticeModel& m, const std::string& label) {
        ++models;
        thm33_on(r, m, label);
    };
    for (std::int64_t l : {3, 5})
        for (unsigned i : {1u, 2u}) {
            run(model_example52(l, i), "ex52");
            run(model_example53(l, i), "ex53");
        }
    for (unsigned i : {1u, 2u, 3u})
        run(model_example52(2, i), "ex52");
    for (auto [l, rr, s] : std::vector<std::tuple<int, unsigned, unsigned>>{{2, 1, 1}, {2, 1, 2}, {2, 2, 1}, {3, 1, 1}})
        run(model_example54(l, rr, s, 2 * (2 * rr + s) + 2), "ex54");
    for (auto [l, rr] : std::vector<std::pair<int, unsigned>>{{2, 1}, {2, 2}, {3, 1}})
        run(model_example55(l, rr, 4 * rr + 2), "ex55");

    // Example 5.1 for every invariant-factor list with entries summing to <= 12.
    std::vector<std::vector<Integer>> lists;
    std::vector<Integer> cur;
    lists_with_sum_at_most(12, 12, cur, lists, 12);
    std::uint64_t cor34 = 0;
    for (const auto& ns : lists) {
        for (std::int64_t l : {2, 3, 5, 7, 11})
            run(model_example51(ns, l), "ex51");
        auto v = check_cor34_model(model_example51(ns, 2), {2, 3, 5, 7, 11});
        ++cor34;
        record(r, v.all_ok(), [&] {
            Json j = Json::array();
            for (const auto& n : ns)
                j.push_back(n.get_str());
            return Json{{"model", "ex51"}, {"check", "cor34"}, {"ns", j}};
        });
    }

    // Seeded random direct sums at l in {2, 3}.
    std::mt19937_64 rng(seed);
    const unsigned N = 16;
    for (std::uint64_t k = 0; k < random_sums; ++k) {
        std::int64_t l = (rng() & 1) ? 2 : 3;
        int count = 1 + static_cast<int>(rng() % 3);
        std::vector<GaloisLatticeModel> parts;
        Json kinds = Json::array();
        for (int c = 0; c < count; ++c) {
            unsigned pick = static_cast<unsigned>(rng() % 9);
            switch (pick) {
            case 0: {
                std::vector<Integer> ns;
                int len = 1 + static_cast<int>(rng() % 3);
                for (int q = 0; q < len; ++q)
                    ns.push_back(1 + static_cast<long>(rng() % 12));
                parts.push_back(model_example51(ns, l));
                break;
            }
            case 1: parts.push_back(model_example52(l, 1)); break;
            case 2:
                parts.push_back(l == 2 ? model_example52(2, 2) : model_example53(l, 1 + static_cast<unsigned>(rng() % 2)));
                break;
            case 3: parts.push_back(model_example54(l, 1, 1, N)); break;
            case 4: parts.push_back(model_example55(l, 1, N)); break;
            case 5:
                parts.push_back(model_unipotent_elliptic((rng() & 1) ? EllipticKind::klein : EllipticKind::cyclic2, l));
                break;
            case 6: parts.push_back(model_abelian_pad(1 + static_cast<long>(rng() % 2), l)); break;
            case 7: parts.push_back(model_unipotent_pad(1, l)); break;
            default: parts.push_back(l == 2 ? model_example54(2, 1, 2, N) : model_example52(3, 1)); break;
            }
            kinds.push_back(parts.back().name);
        }
        GaloisLatticeModel sum = direct_sum(parts);
        run(sum, "sum" + kinds.dump());
    }
    r.stats["models"] = models;
    r.stats["cor34_checks"] = cor34;
    r.stats["ex51_lists"] = lists.size();
    return r;
}

SuiteReport suite_thm61(std::uint64_t max_d, std::uint64_t max_order)
{
    SuiteReport r = make("thm61", 0, max_d);
    BlockPhiCache cache;
    std::uint64_t queries = 0, realizable = 0, e2e = 0;
    const long D = static_cast<long>(max_d);
    for (std::int64_t ord = 1; static_cast<std::uint64_t>(ord) <= max_order; ++ord) {
        for (const AbGroup& G : groups_of_order(ord)) {
            for (std::int64_t p : {0, 5}) {
                if (p && ord % p == 0)
                    continue;
                for (long d = 0; d <= D; ++d)
                    for (long t = 0; t <= d; ++t)
                        for (long a = 0; a + t <= d; ++a) {
                            const long u = d - t - a;
                            RealizabilityQuery q = make_query(G, t, a, u, p);
                            ++queries;
                            auto w = [&](const std::string& what) {
                                return Json{{"check", what}, {"query", json_io::to_json(q)}};
                            };
                            const bool real = is_realizable(q);
                            realizable += real;
                            bool planned = false;
                            ConstructionPlan P;
                            try {
                                P = plan(q);
                                planned = true;
                            } catch (const NotRealizable&) {
                            }
                            record(r, planned == real, [&] { return w("plan succeeds iff realizable"); });
                            if (real) {
                                // Monotonicity: one more abelian or unipotent dimension stays realizable.
                                record(r, is_realizable(make_query(G, t, a + 1, u, p)) &&
                                              is_realizable(make_query(G, t, a, u + 1, p)),
                                       [&] { return w("monotone in a and u"); });
                            }
                            if (!planned)
                                continue;
                            auto v = verify_plan(P, q);
                            record(r, v.ok, [&] {
                                Json j = w("verify_plan");
                                j["diagnostics"] = v.diagnostics;
                                return j;
                            });
                            bool small = true;
                            for (const auto& b : P.blocks)
                                for (const auto& [l, part] : b.predicted_phi.primary())
                                    if (ipow(l, static_cast<unsigned>(part.total())) > 256)
                                        small = false;
                            if (!small)
                                continue;
                            ++e2e;
                            auto e = end_to_end_check(P, &cache);
                            record(r, e.ok, [&] {
                                Json j = w("end_to_end_check");
                                j["diagnostics"] = e.diagnostics;
                                return j;
                            });
                        }
            }
        }
    }
    // Spot values from the bound itself.
    AbGroup z9 = AbGroup::cyclic(9);
    record(r, !is_realizable(make_query(z9, 0, 0, 1)), [] { return Json{{"check", "Z/9 with u=1 is not realizable"}}; });
    record(r, is_realizable(make_query(z9, 0, 0, 2)), [] { return Json{{"check", "Z/9 with u=2 is realizable"}}; });
    r.stats["queries"] = queries;
    r.stats["realizable"] = realizable;
    r.stats["end_to_end"] = e2e;
    r.stats["distinct_block_computations"] = cache.size();
    r.stats["max_order"] = max_order;
    return r;
}

SuiteReport suite_delta_vs_prime(unsigned max_log2)
{
    SuiteReport r = make("delta_vs_prime", 0, max_log2);
    const std::int64_t max_order = std::int64_t{1} << max_log2;
    std::uint64_t groups = 0;
    for (std::int64_t n = 1; n <= max_order; ++n)
        for (const AbGroup& g : groups_of_order(n)) {
            ++groups;
            for (const auto& [l, p] : g.primary()) {
                Integer d = delta_l(l, p), dp = delta_prime_l(l, p);
                bool tail_small = true;
                for (std::size_t i = 1; i < p.length(); ++i)
                    if (p[i] > 1)
                        tail_small = false;
                record(r, d >= dp && ((d == dp) == tail_small),
                       [&] { return Json{{"l", l}, {"p", pj(p)}, {"delta", d.get_str()}, {"delta_prime", dp.get_str()}}; });
            }
            record(r, delta(g) >= delta_prime(g), [&] { return Json{{"group", json_io::to_json(g)}}; });
        }
    r.stats["groups"] = groups;
    return r;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"lemma41", "lemma43", "lemma44", "lemma45", "lemma48",
                                                "lemma410", "lemma411", "thm33",   "thm61"};
    return names;
}

std::uint64_t default_budget(const std::string& suite)
{
    if (suite == "lemma41" || suite == "lemma44" || suite == "lemma410")
        return 256; // max group order
    if (suite == "lemma43")
        return 10; // max N
    if (suite == "lemma411")
        return 8; // max sum of e
    if (suite == "lemma45")
        return 200; // random automorphisms per prime
    if (suite == "lemma48")
        return 64; // max group order
    if (suite == "thm33")
        return 500; // random direct sums
    if (suite == "thm61")
        return 8; // max d
    throw InvalidArgument("unknown suite '" + suite + "'");
}

SuiteReport run_suite(const std::string& suite, std::uint64_t seed, std::uint64_t budget)
{
    (void)default_budget(suite);
    SuiteReport r;
    if (suite == "lemma41" || suite == "lemma44" || suite == "lemma410") {
        auto s = subgroup_sweep(budget);
        r = suite == "lemma41" ? s.lemma41 : suite == "lemma44" ? s.lemma44 : s.lemma410;
    } else if (suite == "lemma43") {
        r = suite_lemma43(budget);
    } else if (suite == "lemma411") {
        r = suite_lemma411_partitions(budget);
        // Subgroup pairs of groups of order <= l^budget, capped at the sweep range.
        auto s = subgroup_sweep(std::min<std::uint64_t>(256, std::uint64_t{1} << std::min<std::uint64_t>(budget, 8)));
        r.checks += s.lemma411_pairs.checks;
        r.violations += s.lemma411_pairs.violations;
        for (auto& w : s.lemma411_pairs.witnesses)
            if (r.witnesses.size() < kMaxWitnesses)
                r.witnesses.push_back(w);
        r.stats["subgroup_pairs"] = s.lemma411_pairs.checks / 2;
    } else if (suite == "lemma45") {
        r = suite_lemma45(seed, budget);
    } else if (suite == "lemma48") {
        r = suite_lemma48(budget);
    } else if (suite == "thm33") {
        r = suite_thm33(seed, budget);
    } else if (suite == "thm61") {
        r = suite_thm61(budget);
    }
    r.seed = seed;
    r.budget = budget;
    return r;
}

} // namespace neron
