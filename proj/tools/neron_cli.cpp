#include "neron/classify.hpp"
#include "neron/errors.hpp"
#include "neron/json_io.hpp"
#include "neron/suites.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace neron;
using json_io::Json;

namespace {

enum Exit { ok = 0, is_false = 1, input_error = 2, precision_error = 3 };

struct Input {
    std::string json;
    std::string file;
};

void add_input(CLI::App* cmd, Input& in, const std::string& what)
{
    cmd->add_option("--json", in.json, "inline " + what + " JSON");
    cmd->add_option("--file", in.file, what + " JSON file ('-' for stdin)");
}

Json read_input(const Input& in)
{
    if (!in.json.empty() && !in.file.empty())
        throw InvalidArgument("give either --json or --file, not both");
    if (!in.json.empty())
        return json_io::parse(in.json);
    std::stringstream ss;
    if (in.file.empty() || in.file == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(in.file);
        if (!f)
            throw InvalidArgument("cannot open " + in.file);
        ss << f.rdbuf();
    }
    return json_io::parse(ss.str());
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

struct QueryArgs {
    std::string group;
    long t = 0, a = 0, u = 0, d = -1;
    std::int64_t p = 0;
    Input in;
};

void add_query(CLI::App* cmd, QueryArgs& q)
{
    cmd->add_option("--group", q.group, "group JSON, e.g. '{\"2\":[2,1]}'");
    cmd->add_option("--t", q.t, "toric rank");
    cmd->add_option("--a", q.a, "abelian rank");
    cmd->add_option("--u", q.u, "unipotent rank");
    cmd->add_option("--d", q.d, "dimension (defaults to t+a+u)");
    cmd->add_option("--p", q.p, "residue characteristic (0 or prime)");
    add_input(cmd, q.in, "query");
}

RealizabilityQuery read_query(const QueryArgs& a)
{
    if (!a.group.empty()) {
        RealizabilityQuery q{json_io::abgroup_from_json(json_io::parse(a.group)), a.p, a.d < 0 ? a.t + a.a + a.u : a.d,
                             a.t, a.a, a.u};
        validate_query(q);
        return q;
    }
    return json_io::query_from_json(read_input(a.in));
}

RealizabilityQuery plan_query(const Json& j)
{
    if (!j.contains("query"))
        throw InvalidArgument("plan JSON must carry its 'query'");
    return json_io::query_from_json(j["query"]);
}

std::vector<Integer> parse_ns(const std::string& s)
{
    std::vector<Integer> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(json_io::integer_from_json(Json(item)));
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Component groups of Néron models from Galois-lattice data"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    unsigned precision = 0;
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--budget", budget, "suite budget (0 = suite default)");
    app.add_option("--precision", precision, "precision N for modular models (0 = default)");

    Input delta_in;
    std::string delta_group;
    auto* c_delta = app.add_subcommand("delta", "delta and delta' of a finite abelian group");
    c_delta->add_option("--group", delta_group, "group JSON");
    add_input(c_delta, delta_in, "group");

    QueryArgs rq, pq;
    auto* c_real = app.add_subcommand("realizable", "decide the classification inequality");
    add_query(c_real, rq);
    auto* c_plan = app.add_subcommand("plan", "emit a construction plan");
    add_query(c_plan, pq);

    Input vp_in, e2e_in, phi_in, smith_in, coker_in;
    auto* c_vp = app.add_subcommand("verify-plan", "check a plan's invariants against its query");
    add_input(c_vp, vp_in, "plan");
    auto* c_e2e = app.add_subcommand("end-to-end", "build each block's model and compare Φ");
    add_input(c_e2e, e2e_in, "plan");

    auto* c_phi = app.add_subcommand("phi", "compute Φ and its filtration for a model");
    add_input(c_phi, phi_in, "model");
    bool phi_check = false;
    c_phi->add_flag("--check", phi_check, "also check the six bounds of Theorem 3.3");

    auto* c_smith = app.add_subcommand("smith", "Smith normal form of an integer matrix");
    add_input(c_smith, smith_in, "matrix");
    auto* c_coker = app.add_subcommand("coker", "cokernel of an integer matrix");
    add_input(c_coker, coker_in, "matrix");
    std::int64_t coker_l = 0;
    c_coker->add_option("--l", coker_l, "report only the l-primary part");

    std::string ex_name, ex_ns;
    std::int64_t ex_l = 2;
    unsigned ex_i = 1, ex_r = 1, ex_s = 1;
    long ex_n = 1;
    auto* c_ex = app.add_subcommand("example", "emit a model as JSON");
    c_ex->add_option("name", ex_name, "ex51|ex52|ex53|ex54|ex55|klein|cyclic2|abelian_pad|unipotent_pad")->required();
    c_ex->add_option("--l", ex_l, "prime");
    c_ex->add_option("--i", ex_i, "i for ex52/ex53");
    c_ex->add_option("--r", ex_r, "r for ex54/ex55");
    c_ex->add_option("--s", ex_s, "s for ex54");
    c_ex->add_option("--ns", ex_ns, "comma separated n_i for ex51");
    c_ex->add_option("--n", ex_n, "dimension for pads");

    std::string suite;
    auto* c_verify = app.add_subcommand("verify", "run a verification suite");
    c_verify->add_option("suite", suite, "suite name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return input_error;
    }

    try {
        if (*c_delta) {
            Json g = delta_group.empty() ? read_input(delta_in) : json_io::parse(delta_group);
            AbGroup G = json_io::abgroup_from_json(g);
            emit({{"delta", json_io::integer_to_json(delta(G))}, {"delta_prime", json_io::integer_to_json(delta_prime(G))}});
            return ok;
        }
        if (*c_real) {
            RealizabilityQuery q = read_query(rq);
            bool r = is_realizable(q);
            emit({{"realizable", r}, {"rhs", to_string(rhs_bound(q.G, q.t, q.p))}, {"u", q.u}, {"query", json_io::to_json(q)}});
            return r ? ok : is_false;
        }
        if (*c_plan) {
            RealizabilityQuery q = read_query(pq);
            if (!is_realizable(q)) {
                emit({{"realizable", false}, {"rhs", to_string(rhs_bound(q.G, q.t, q.p))}, {"query", json_io::to_json(q)}});
                return is_false;
            }
            emit(json_io::to_json(plan(q), q));
            return ok;
        }
        if (*c_vp) {
            Json j = read_input(vp_in);
            auto v = verify_plan(json_io::plan_from_json(j), plan_query(j));
            emit({{"ok", v.ok}, {"diagnostics", v.diagnostics}});
            return v.ok ? ok : is_false;
        }
        if (*c_e2e) {
            Json j = read_input(e2e_in);
            auto v = end_to_end_check(json_io::plan_from_json(j), nullptr, precision);
            emit({{"ok", v.ok}, {"diagnostics", v.diagnostics}});
            return v.ok ? ok : is_false;
        }
        if (*c_phi) {
            GaloisLatticeModel m = json_io::model_from_json(read_input(phi_in));
            if (precision) {
                if (m.mode != Arithmetic::modular || precision > m.precision)
                    throw InvalidArgument("--precision can only lower N of a modular model");
                m.precision = precision;
                m.tau = ModMatrix(m.l, precision, m.tau).lift();
            }
            validate_model(m);
            PhiReport r = compute_phi(m);
            Json out = json_io::to_json(r, m.l);
            bool good = true;
            if (phi_check) {
                auto v = check_thm33(m, r);
                Json parts = Json::array();
                for (const auto& p : v.parts)
                    parts.push_back({{"ok", p.ok}, {"text", p.text}});
                out["thm33"] = parts;
                good = v.all_ok();
            }
            emit(out);
            return good ? ok : is_false;
        }
        if (*c_smith) {
            auto d = smith_decompose(json_io::matrix_from_json(read_input(smith_in)), false);
            Json diag = Json::array();
            for (const auto& x : d.diagonal)
                diag.push_back(x.get_str());
            emit({{"diagonal", diag}, {"rank", d.rank}});
            return ok;
        }
        if (*c_coker) {
            IntMatrix m = json_io::matrix_from_json(read_input(coker_in));
            if (coker_l) {
                auto g = cokernel_l_part(m, coker_l);
                emit({{"l", coker_l}, {"torsion", json_io::to_json(g.torsion)}, {"corank", g.corank}});
            } else {
                auto d = smith_decompose(m, false);
                Json inv = Json::array();
                for (const auto& x : d.diagonal)
                    if (x != 0 && x != 1)
                        inv.push_back(x.get_str());
                emit({{"invariants", inv}, {"free_rank", m.rows() - d.rank}});
            }
            return ok;
        }
        if (*c_ex) {
            auto prec = [&](unsigned m) { return precision ? precision : 2 * m + 2; };
            GaloisLatticeModel m;
            if (ex_name == "ex51")
                m = model_example51(parse_ns(ex_ns), ex_l);
            else if (ex_name == "ex52")
                m = model_example52(ex_l, ex_i);
            else if (ex_name == "ex53")
                m = model_example53(ex_l, ex_i);
            else if (ex_name == "ex54")
                m = model_example54(ex_l, ex_r, ex_s, prec(2 * ex_r + ex_s));
            else if (ex_name == "ex55")
                m = model_example55(ex_l, ex_r, prec(2 * ex_r));
            else if (ex_name == "klein")
                m = model_unipotent_elliptic(EllipticKind::klein, ex_l);
            else if (ex_name == "cyclic2")
                m = model_unipotent_elliptic(EllipticKind::cyclic2, ex_l);
            else if (ex_name == "abelian_pad")
                m = model_abelian_pad(ex_n, ex_l);
            else if (ex_name == "unipotent_pad")
                m = model_unipotent_pad(ex_n, ex_l);
            else
                throw InvalidArgument("unknown example '" + ex_name + "'");
            emit(json_io::to_json(m));
            return ok;
        }
        if (*c_verify) {
            std::uint64_t b = budget ? budget : default_budget(suite);
            SuiteReport r = run_suite(suite, seed, b);
            emit(r.to_json());
            return r.passed() ? ok : is_false;
        }
    } catch (const PrecisionError& e) {
        std::cerr << "precision error: " << e.what() << '\n';
        return precision_error;
    } catch (const NotRealizable& e) {
        std::cerr << e.what() << '\n';
        return is_false;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad JSON: " << e.what() << '\n';
        return input_error;
    }
    return input_error;
}
