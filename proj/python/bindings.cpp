#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "friedrichs/serialization.hpp"

namespace py = pybind11;
using namespace friedrichs;

namespace {

RationalFn rational_from_pairs(const std::vector<std::tuple<Complex, int, Complex>>& terms) {
    std::vector<PoleTerm> out;
    for (const auto& [pole, order, coeff] : terms) out.push_back({pole, order, coeff});
    return RationalFn::from_terms(std::move(out));
}

py::dict report_dict(const DefectReport& report) {
    py::dict d;
    d["N"] = report.n;
    d["P"] = report.p;
    d["M"] = report.m;
    d["M0"] = report.m0;
    d["defect"] = report.defect;
    d["infinite"] = report.infinite;
    py::list roots;
    for (const RootClassification& rc : report.roots) {
        py::dict r;
        r["root"] = rc.root;
        r["multiplicity"] = rc.multiplicity;
        r["half_plane"] = halfplane_name(rc.half_plane);
        r["cancelled"] = rc.cancelled;
        roots.append(r);
    }
    d["roots"] = roots;
    return d;
}

}  // namespace

PYBIND11_MODULE(_friedrichs, m) {
    m.doc() = "Friedrichs-model spectral toolkit (C++ core)";

    py::register_exception<Error>(m, "FriedrichsError");

    py::class_<RationalFn>(m, "RationalFn")
        .def(py::init(&rational_from_pairs), py::arg("terms"),
             "Build from [(pole, order, coeff), ...] partial-fraction terms")
        .def_static("from_json", &rational_from_json)
        .def("__call__", [](const RationalFn& f, Complex x) { return f.eval(x); })
        .def("terms",
             [](const RationalFn& f) {
                 std::vector<std::tuple<Complex, int, Complex>> out;
                 for (const PoleTerm& t : f.terms()) out.push_back({t.pole, t.order, t.coeff});
                 return out;
             })
        .def("is_l2", &RationalFn::is_l2)
        .def("to_json", &rational_to_json);

    py::class_<FriedrichsModel>(m, "Model")
        .def(py::init<RationalFn, RationalFn, Complex, Complex>(), py::arg("phi"), py::arg("psi"),
             py::arg("B"), py::arg("alpha") = Complex(1.0))
        .def_static("from_json", [](const std::string& text) { return model_from_json(text).build(); })
        .def_property_readonly("B", &FriedrichsModel::b)
        .def_property_readonly("alpha", &FriedrichsModel::alpha)
        .def("with_alpha", &FriedrichsModel::with_alpha);

    m.def("cauchy_transform",
          [](const RationalFn& f, Complex lambda) { return cauchy_transform(f, lambda); });
    m.def("boundary_cauchy", [](const RationalFn& f, double k, bool upper) {
        return boundary_cauchy(f, k, upper ? HalfPlane::Upper : HalfPlane::Lower);
    });
    m.def("riesz_project", &riesz_project, py::arg("f"), py::arg("sign"));
    m.def("inner_product", &inner_product);
    m.def("conj_on_real", &conj_on_real);
    m.def("trace_gamma1", &trace_gamma1);
    m.def("trace_gamma2", &trace_gamma2);

    m.def("d_function", &d_function);
    m.def("m_function", [](const FriedrichsModel& model, Complex lambda) {
        const MValue v = m_function(model, lambda);
        return py::make_tuple(v.value, v.d_value);
    });
    m.def("resolvent_apply", [](const FriedrichsModel& model, Complex lambda, const RationalFn& g) {
        const DomainElement f = resolvent_apply(model, lambda, g);
        return py::make_tuple(f.f, f.c_f);
    });

    m.def("defect", [](const FriedrichsModel& model) { return report_dict(defect_hplus(model)); });
    m.def("defect_mixed", [](const FriedrichsModel& model) { return report_dict(defect_mixed(model)); });
    m.def("sperp_basis", [](const FriedrichsModel& model) {
        const DefectReport report = defect_hplus(model);
        const SperpBasis basis = sperp_basis(model, report);
        return basis.vectors;
    });
    m.def("membership_test", &membership_test);

    m.def("oracle_compare", [](const FriedrichsModel& model) {
        const OracleComparison cmp = oracle_compare(model);
        py::dict d;
        d["analytic_defect"] = cmp.analytic_defect;
        d["oracle_nullity"] = cmp.oracle_nullity;
        d["margin"] = cmp.margin;
        d["entries_cond"] = cmp.entries_cond;
        return d;
    });

    m.def(
        "petal_atlas",
        [](const FriedrichsModel& model, const std::string& plane, int grid) {
            CurveAtlas atlas = real_root_locus(model, plane_from_name(plane));
            region_defects(model, atlas, grid);
            py::dict d;
            py::list locus;
            for (size_t i = 0; i < atlas.locus.size(); ++i)
                if (atlas.locus_kept[i]) locus.append(atlas.locus[i]);
            d["locus"] = locus;
            py::list regions;
            for (const RegionLabel& r : atlas.regions) {
                py::dict entry;
                entry["representative"] = r.representative;
                entry["defect"] = r.defect;
                regions.append(entry);
            }
            d["regions"] = regions;
            return d;
        },
        py::arg("model"), py::arg("plane") = "mu", py::arg("grid") = 300);

    m.def("reconstruct_scores", [](const FriedrichsModel& model) {
        const ReconstructionResult result = reconstruct_m(make_hidden_provider(model));
        const ReconstructionScores scores = score_reconstruction(model, result);
        py::dict d;
        d["B_error"] = scores.b_error;
        d["M_max_rel_error"] = scores.m_max_rel_error;
        d["psi_collinearity_residual"] = scores.psi_collinearity_residual;
        return d;
    });
}
