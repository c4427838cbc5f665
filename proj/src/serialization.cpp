#include "friedrichs/serialization.hpp"

#include <json.hpp>

namespace friedrichs {

namespace {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail("BadModelFile", std::string(what) + " must be a [re, im] array");
    return {j[0].get<double>(), j[1].get<double>()};
}

json rational_json_value(const RationalFn& f) {
    json terms = json::array();
    for (const PoleTerm& t : f.terms())
        terms.push_back({{"pole", complex_json(t.pole)}, {"order", t.order}, {"coeff", complex_json(t.coeff)}});
    return terms;
}

RationalFn rational_from_value(const json& j, const char* what) {
    if (!j.is_array()) fail("BadModelFile", std::string(what) + " must be an array of pole terms");
    std::vector<PoleTerm> terms;
    for (const json& term : j) {
        if (!term.is_object()) fail("BadModelFile", "pole terms must be objects");
        for (const auto& [key, value] : term.items()) {
            (void)value;
            if (key != "pole" && key != "order" && key != "coeff")
                fail("BadModelFile", "unknown key in pole term: " + key);
        }
        if (!term.contains("pole") || !term.contains("coeff"))
            fail("BadModelFile", "pole terms need 'pole' and 'coeff'");
        PoleTerm t;
        t.pole = complex_from(term["pole"], "pole");
        t.coeff = complex_from(term["coeff"], "coeff");
        t.order = term.contains("order") ? term["order"].get<int>() : 1;
        if (t.order < 1) fail("BadModelFile", "pole order must be >= 1");
        terms.push_back(t);
    }
    return RationalFn::from_terms(std::move(terms));
}

}  // namespace

ModelSpecFile model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& err) {
        fail("BadModelFile", std::string("JSON parse error: ") + err.what());
    }
    if (!j.is_object()) fail("BadModelFile", "model file must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "phi" && key != "psi" && key != "B" && key != "alpha" && key != "alpha_sweep")
            fail("BadModelFile", "unknown key in model file: " + key);
    }
    if (!j.contains("phi") || !j.contains("psi") || !j.contains("B"))
        fail("BadModelFile", "model file needs 'phi', 'psi' and 'B'");

    ModelSpecFile spec;
    spec.phi = rational_from_value(j["phi"], "phi");
    spec.psi = rational_from_value(j["psi"], "psi");
    spec.b = complex_from(j["B"], "B");
    if (j.contains("alpha")) spec.alpha = complex_from(j["alpha"], "alpha");
    if (j.contains("alpha_sweep")) {
        const json& sweep = j["alpha_sweep"];
        if (!sweep.is_object()) fail("BadModelFile", "alpha_sweep must be an object");
        for (const auto& [key, value] : sweep.items()) {
            (void)value;
            if (key != "plane" && key != "resolution" && key != "bounds")
                fail("BadModelFile", "unknown key in alpha_sweep: " + key);
        }
        spec.sweep.present = true;
        if (sweep.contains("plane")) spec.sweep.plane = plane_from_name(sweep["plane"].get<std::string>());
        if (sweep.contains("resolution")) {
            spec.sweep.resolution = sweep["resolution"].get<int>();
            if (spec.sweep.resolution < 16) fail("BadModelFile", "alpha_sweep resolution is too coarse");
        }
        if (sweep.contains("bounds")) {
            const json& b = sweep["bounds"];
            if (!b.is_array() || b.size() != 2 || !b[0].is_array() || !b[1].is_array() ||
                b[0].size() != 2 || b[1].size() != 2)
                fail("BadModelFile", "bounds must be [[re_min, re_max], [im_min, im_max]]");
            spec.sweep.has_bounds = true;
            spec.sweep.re_min = b[0][0].get<double>();
            spec.sweep.re_max = b[0][1].get<double>();
            spec.sweep.im_min = b[1][0].get<double>();
            spec.sweep.im_max = b[1][1].get<double>();
            if (spec.sweep.re_min >= spec.sweep.re_max || spec.sweep.im_min >= spec.sweep.im_max)
                fail("BadModelFile", "empty sweep bounds");
        }
    }
    return spec;
}

std::string model_to_json(const ModelSpecFile& spec) {
    json j;
    j["phi"] = rational_json_value(spec.phi);
    j["psi"] = rational_json_value(spec.psi);
    j["B"] = complex_json(spec.b);
    j["alpha"] = complex_json(spec.alpha);
    if (spec.sweep.present) {
        json sweep = {{"plane", plane_name(spec.sweep.plane)}, {"resolution", spec.sweep.resolution}};
        if (spec.sweep.has_bounds)
            sweep["bounds"] = json::array({json::array({spec.sweep.re_min, spec.sweep.re_max}),
                                           json::array({spec.sweep.im_min, spec.sweep.im_max})});
        j["alpha_sweep"] = sweep;
    }
    return j.dump(2) + "\n";
}

std::string rational_to_json(const RationalFn& f) { return rational_json_value(f).dump(2) + "\n"; }

RationalFn rational_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& err) {
        fail("BadModelFile", std::string("JSON parse error: ") + err.what());
    }
    return rational_from_value(j, "rational function");
}

std::string defect_report_json(const DefectReport& report, const SperpBasis* basis) {
    json j;
    j["N"] = report.n;
    j["P"] = report.p;
    j["M"] = report.m;
    j["M0"] = report.m0;
    j["defect"] = report.defect;
    j["infinite"] = report.infinite;
    json roots = json::array();
    for (const RootClassification& rc : report.roots)
        roots.push_back({{"root", complex_json(rc.root)},
                         {"multiplicity", rc.multiplicity},
                         {"half_plane", halfplane_name(rc.half_plane)},
                         {"cancelled", rc.cancelled}});
    j["roots"] = roots;
    if (basis) {
        json vectors = json::array();
        for (const RationalFn& v : basis->vectors) vectors.push_back(rational_json_value(v));
        j["sperp"] = vectors;
    }
    return j.dump(2) + "\n";
}

std::string oracle_report_json(const OracleComparison& cmp) {
    json j;
    j["analytic_defect"] = cmp.analytic_defect;
    j["oracle_nullity"] = cmp.oracle_nullity;
    j["margin"] = cmp.margin;
    j["entries_cond"] = cmp.entries_cond;
    return j.dump(2) + "\n";
}

std::string atlas_json(const CurveAtlas& atlas) {
    json j;
    j["plane"] = plane_name(atlas.plane);
    json locus = json::array();
    for (size_t i = 0; i < atlas.locus.size(); ++i)
        if (atlas.locus_kept[i]) locus.push_back(complex_json(atlas.locus[i]));
    j["locus"] = locus;
    json regions = json::array();
    for (const RegionLabel& r : atlas.regions)
        regions.push_back({{"representative", complex_json(r.representative)}, {"defect", r.defect}});
    j["regions"] = regions;
    json xi = json::array();
    for (const auto& [a, z] : atlas.xi_data) xi.push_back({{"a", complex_json(a)}, {"z", complex_json(z)}});
    j["xi_data"] = xi;
    json on_curve = json::array();
    for (const auto& [idx, defect] : atlas.locus_defects) on_curve.push_back({{"index", idx}, {"defect", defect}});
    j["locus_defects"] = on_curve;
    return j.dump(2) + "\n";
}

std::string reconstruction_report_json(const ReconstructionScores& scores) {
    json j;
    j["B_error"] = scores.b_error;
    j["M_max_rel_error"] = scores.m_max_rel_error;
    j["psi_collinearity_residual"] = scores.psi_collinearity_residual;
    return j.dump(2) + "\n";
}

ReconstructionScores score_reconstruction(const FriedrichsModel& hidden, const ReconstructionResult& result) {
    ReconstructionScores scores;
    scores.b_error = std::abs(result.b_recovered - hidden.b());
    if (hidden.psi_eff().is_zero()) {
        scores.psi_collinearity_residual = result.psi_recovered.is_zero() ? 0.0 : 1.0;
    } else {
        scores.psi_collinearity_residual = collinearity_residual(result.psi_recovered, hidden.psi_eff());
    }
    for (const auto& [lambda, m_value] : result.m_assembled) {
        const Complex direct = m_function(hidden, lambda).value;
        scores.m_max_rel_error =
            std::max(scores.m_max_rel_error, std::abs(m_value - direct) / std::abs(direct));
    }
    return scores;
}

}  // namespace friedrichs
