#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wamsley/hallwitt.hpp"
#include "wamsley/pc_json.hpp"
#include "wamsley/wamsley.hpp"

namespace py = pybind11;
using namespace wamsley;

namespace pybind11::detail {

// Python int <-> cpp_int through the decimal string.
template <>
struct type_caster<Int> {
    PYBIND11_TYPE_CASTER(Int, const_name("int"));

    bool load(handle src, bool convert) {
        if (!src || (!convert && !PyLong_Check(src.ptr()))) return false;
        if (!PyLong_Check(src.ptr()) && !PyIndex_Check(src.ptr())) return false;
        object as_long = reinterpret_steal<object>(PyNumber_Index(src.ptr()));
        if (!as_long) {
            PyErr_Clear();
            return false;
        }
        value = Int(str(as_long).cast<std::string>());
        return true;
    }

    static handle cast(const Int& v, return_value_policy, handle) {
        return PyLong_FromString(to_string(v).c_str(), nullptr, 10);
    }
};

}  // namespace pybind11::detail

namespace {

py::dict params_dict(const Params& p) {
    py::dict d;
    d["alpha"] = p.alpha;
    d["gamma"] = p.gamma;
    d["p"] = p.p;
    d["case"] = case_name(p.tag);
    d["m"] = p.m;
    d["n"] = p.n;
    d["h"] = p.h;
    d["k"] = p.k;
    d["ell"] = p.ell;
    d["q"] = p.q;
    d["h0"] = p.h0 ? py::object(py::int_(*p.h0)) : py::object(py::none());
    return d;
}

WpGroup build_W(const Int& alpha, const Int& gamma, const Int& p, std::uint64_t seed) {
    Params pr = classify(alpha, gamma, p);
    if (pr.tag == CaseTag::GammaOnly) throw Error(ErrorKind::Usage, "W_p is cyclic for this prime");
    JGroup J = build_J(pr);
    return build_Wp(J, compute_Np(J, seed).np);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Prime-by-prime structure checks for W(alpha, alpha, gamma)";
    py::register_exception<Error>(m, "WamsleyError", PyExc_ValueError);

    m.def("classify", [](const Int& a, const Int& g, const Int& p) { return params_dict(classify(a, g, p)); },
          py::arg("alpha"), py::arg("gamma"), py::arg("p"));
    m.def("relevant_primes", &relevant_primes, py::arg("alpha"), py::arg("gamma"));
    m.def("v_exponent", &v_exponent, py::arg("p"), py::arg("alpha"), py::arg("gamma"));
    m.def("order_of_W", &order_of_W, py::arg("alpha"), py::arg("gamma"));
    m.def("derived_length_W", &derived_length_W, py::arg("alpha"), py::arg("gamma"));
    m.def(
        "nilpotency_class",
        [](const Int& a, const Int& g, const Int& p) {
            NilpotencyForm f = nilpotency_class_Wp(classify(a, g, p));
            return py::make_tuple(f.cls, f.branch);
        },
        py::arg("alpha"), py::arg("gamma"), py::arg("p"));
    m.def("witt_rank", &witt_rank, py::arg("r"), py::arg("w"));

    m.def(
        "verify_instance_json",
        [](const Int& a, const Int& g, const Int& p, bool formulas, bool np, bool series, bool oracle,
           std::size_t max_cosets, std::uint64_t max_enumerate, std::uint64_t seed) {
            ReportOptions o;
            o.formulas = formulas;
            o.np = np;
            o.series = series;
            o.oracle = oracle;
            o.max_cosets = max_cosets;
            o.max_enumerate = max_enumerate;
            o.seed = seed;
            py::gil_scoped_release release;
            return report_to_json(verify_instance(a, g, p, o));
        },
        py::arg("alpha"), py::arg("gamma"), py::arg("p"), py::arg("formulas") = false, py::arg("np") = true,
        py::arg("series") = true, py::arg("oracle") = true, py::arg("max_cosets") = 2000000,
        py::arg("max_enumerate") = 2000000, py::arg("seed") = 1);

    m.def(
        "hall_identity",
        [](Exp i, Exp j) {
            static const HallCover cover = build_cover();
            return check_hall_identity(cover, i, j).pass;
        },
        py::arg("i"), py::arg("j"));
    m.def("witt_table", [] {
        std::vector<py::tuple> rows;
        for (const auto& r : witt_table()) rows.push_back(py::make_tuple(r.weight, r.witt, r.basis_count, r.table_count));
        return rows;
    });

    m.def(
        "fp_text",
        [](const Int& a, const Int& g, const Int& p, const std::string& target, std::uint64_t seed) {
            if (target == "J") return j_fp_text(classify(a, g, p));
            WpGroup W = build_W(a, g, p, seed);
            if (target == "quotient") return quotient_fp_text(W);
            if (target == "Wp") return wp_fp_text(W);
            throw Error(ErrorKind::Usage, "target must be J, quotient or Wp");
        },
        py::arg("alpha"), py::arg("gamma"), py::arg("p"), py::arg("target") = "quotient", py::arg("seed") = 1);
    m.def("general_fp_text", &general_fp_text, py::arg("alpha"), py::arg("beta"), py::arg("gamma"));
    m.def(
        "pc_json",
        [](const Int& a, const Int& g, const Int& p, const std::string& target, std::uint64_t seed) {
            if (target == "J") {
                Params pr = classify(a, g, p);
                if (pr.tag == CaseTag::GammaOnly) throw Error(ErrorKind::Usage, "W_p is cyclic for this prime");
                return pc_to_json(build_J(pr).pres);
            }
            WpGroup W = build_W(a, g, p, seed);
            if (target == "quotient") return pc_to_json(W.quotient.pres);
            if (target == "Wp") return pc_to_json(W.pres);
            throw Error(ErrorKind::Usage, "target must be J, quotient or Wp");
        },
        py::arg("alpha"), py::arg("gamma"), py::arg("p"), py::arg("target") = "Wp", py::arg("seed") = 1);
}
