#include "neron/classify.hpp"
#include "neron/errors.hpp"
#include "neron/json_io.hpp"
#include "neron/suites.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace neron;
using json_io::Json;

// JSON text crosses the boundary; the Python wrapper decodes it.
namespace {

std::string dump(const Json& j) { return j.dump(); }

IntMatrix matrix_from_rows(const std::vector<std::vector<std::string>>& rows)
{
    Json entries = Json::array();
    for (const auto& r : rows)
        entries.push_back(r);
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    return json_io::matrix_from_json({{"rows", rows.size()}, {"cols", cols}, {"entries", entries}});
}

RealizabilityQuery query(const std::string& group, long t, long a, long u, std::int64_t p)
{
    return make_query(json_io::abgroup_from_json(json_io::parse(group)), t, a, u, p);
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact component-group computations (JSON-in, JSON-out core)";

    // Python classes mirror the C++ hierarchy: each subclasses Error and a builtin.
    static PyObject* base = PyErr_NewException("neronphi._core.Error", PyExc_RuntimeError, nullptr);
    m.add_object("Error", py::handle(base));
    auto sub = [&m](const char* name, PyObject* builtin) {
        std::string full = std::string("neronphi._core.") + name;
        py::tuple bases = py::make_tuple(py::handle(base), py::handle(builtin));
        PyObject* cls = PyErr_NewException(full.c_str(), bases.ptr(), nullptr);
        m.add_object(name, py::handle(cls));
        return cls;
    };
    static PyObject* invalid = sub("InvalidArgument", PyExc_ValueError);
    static PyObject* precondition = sub("PreconditionError", PyExc_ValueError);
    static PyObject* precision = sub("PrecisionError", PyExc_ArithmeticError);
    static PyObject* model = sub("ModelError", PyExc_ValueError);
    static PyObject* not_realizable = sub("NotRealizable", PyExc_ValueError);
    static PyObject* budget = sub("BudgetExceeded", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const InvalidArgument& e) {
            PyErr_SetString(invalid, e.what());
        } catch (const PreconditionError& e) {
            PyErr_SetString(precondition, e.what());
        } catch (const PrecisionError& e) {
            PyErr_SetString(precision, e.what());
        } catch (const ModelError& e) {
            PyErr_SetString(model, e.what());
        } catch (const NotRealizable& e) {
            PyErr_SetString(not_realizable, e.what());
        } catch (const BudgetExceeded& e) {
            PyErr_SetString(budget, e.what());
        } catch (const Error& e) {
            PyErr_SetString(base, e.what());
        } catch (const Json::exception& e) {
            PyErr_SetString(invalid, e.what());
        }
    });

    m.def("delta", [](const std::string& group) {
        AbGroup g = json_io::abgroup_from_json(json_io::parse(group));
        return dump({{"delta", delta(g).get_str()}, {"delta_prime", delta_prime(g).get_str()}});
    });
    m.def("smith_form", [](const std::vector<std::vector<std::string>>& rows) {
        std::vector<std::string> out;
        for (const auto& d : smith_form(matrix_from_rows(rows)))
            out.push_back(d.get_str());
        return out;
    });
    m.def("cokernel_l_part", [](const std::vector<std::vector<std::string>>& rows, std::int64_t l) {
        auto g = cokernel_l_part(matrix_from_rows(rows), l);
        return py::make_tuple(g.torsion.parts(), g.corank);
    });
    m.def("rhs_bound", [](const std::string& group, long t, std::int64_t p) {
        return to_string(rhs_bound(json_io::abgroup_from_json(json_io::parse(group)), t, p));
    });
    m.def("is_realizable", [](const std::string& group, long t, long a, long u, std::int64_t p) {
        return is_realizable(query(group, t, a, u, p));
    });
    m.def("plan", [](const std::string& group, long t, long a, long u, std::int64_t p) {
        auto q = query(group, t, a, u, p);
        return dump(json_io::to_json(plan(q), q));
    });
    m.def("verify_plan", [](const std::string& plan_json) {
        Json j = json_io::parse(plan_json);
        auto v = verify_plan(json_io::plan_from_json(j), json_io::query_from_json(j.at("query")));
        return py::make_tuple(v.ok, v.diagnostics);
    });
    m.def("end_to_end_check", [](const std::string& plan_json) {
        auto v = end_to_end_check(json_io::plan_from_json(json_io::parse(plan_json)));
        return py::make_tuple(v.ok, v.diagnostics);
    });
    m.def("example", [](const std::string& name, std::int64_t l, unsigned i, unsigned r, unsigned s, unsigned n_prec,
                        const std::vector<std::string>& ns, long dim) {
        GaloisLatticeModel g;
        auto prec = [&](unsigned k) { return n_prec ? n_prec : 2 * k + 2; };
        if (name == "ex51") {
            std::vector<Integer> v;
            for (const auto& x : ns)
                v.push_back(json_io::integer_from_json(Json(x)));
            g = model_example51(v, l);
        } else if (name == "ex52") {
            g = model_example52(l, i);
        } else if (name == "ex53") {
            g = model_example53(l, i);
        } else if (name == "ex54") {
            g = model_example54(l, r, s, prec(2 * r + s));
        } else if (name == "ex55") {
            g = model_example55(l, r, prec(2 * r));
        } else if (name == "klein") {
            g = model_unipotent_elliptic(EllipticKind::klein, l);
        } else if (name == "cyclic2") {
            g = model_unipotent_elliptic(EllipticKind::cyclic2, l);
        } else if (name == "abelian_pad") {
            g = model_abelian_pad(dim, l);
        } else if (name == "unipotent_pad") {
            g = model_unipotent_pad(dim, l);
        } else {
            throw InvalidArgument("unknown example '" + name + "'");
        }
        return dump(json_io::to_json(g));
    });
    m.def("compute_phi", [](const std::string& model_json) {
        GaloisLatticeModel g = json_io::model_from_json(json_io::parse(model_json));
        validate_model(g);
        return dump(json_io::to_json(compute_phi(g), g.l));
    });
    m.def("check_thm33", [](const std::string& model_json) {
        GaloisLatticeModel g = json_io::model_from_json(json_io::parse(model_json));
        auto v = check_thm33(g, compute_phi(g));
        std::vector<bool> ok;
        for (const auto& p : v.parts)
            ok.push_back(p.ok);
        return ok;
    });
    m.def("run_suite", [](const std::string& name, std::uint64_t seed, std::uint64_t budget) {
        std::uint64_t b = budget ? budget : default_budget(name);
        py::gil_scoped_release release;
        return dump(run_suite(name, seed, b).to_json());
    });
    m.def("suite_names", &suite_names);
}
