// Command-line front end: model ingestion, subcommand dispatch, structured
// output. Exit codes: 0 success, 2 typed mathematical refusal, 64 usage,
// 74 I/O.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "friedrichs/serialization.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefused = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

using friedrichs::Complex;
using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) friedrichs::fail("IoError", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

friedrichs::ModelSpecFile load_model(const std::string& path) {
    return friedrichs::model_from_json(read_file(path));
}

bool parse_complex_flag(const std::string& text, Complex& out) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return false;
    try {
        size_t used = 0;
        const double re = std::stod(text.substr(0, comma), &used);
        if (used != comma) return false;
        const std::string imtext = text.substr(comma + 1);
        const double im = std::stod(imtext, &used);
        if (used != imtext.size()) return false;
        out = Complex(re, im);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

int cmd_mfun(const std::string& model_path, const std::vector<std::string>& lambda_flags, bool as_json) {
    const friedrichs::FriedrichsModel model = load_model(model_path).build();
    std::vector<Complex> lambdas;
    for (const std::string& text : lambda_flags) {
        Complex lambda;
        if (!parse_complex_flag(text, lambda)) {
            std::cerr << "usage: --lambda expects re,im\n";
            return kExitUsage;
        }
        if (friedrichs::classify_halfplane(lambda) == friedrichs::HalfPlane::Real) {
            std::cerr << "usage: lambda must lie off the real axis\n";
            return kExitUsage;
        }
        lambdas.push_back(lambda);
    }
    if (lambdas.empty()) {
        std::cerr << "usage: at least one --lambda re,im is required\n";
        return kExitUsage;
    }

    json records = json::array();
    bool refused = false;
    for (Complex lambda : lambdas) {
        try {
            const friedrichs::MValue m = friedrichs::m_function(model, lambda);
            records.push_back(
                {{"lambda", complex_json(lambda)}, {"M", complex_json(m.value)}, {"D", complex_json(m.d_value)}});
        } catch (const friedrichs::Error& err) {
            records.push_back({{"lambda", complex_json(lambda)}, {"error", err.code()}});
            refused = true;
        }
    }
    if (as_json) {
        std::cout << json({{"records", records}}).dump(2) << "\n";
    } else {
        for (const json& rec : records) {
            if (rec.contains("error")) {
                std::cout << "lambda=(" << rec["lambda"][0].get<double>() << "," << rec["lambda"][1].get<double>()
                          << ") refused: " << rec["error"].get<std::string>() << "\n";
            } else {
                std::cout << "lambda=(" << rec["lambda"][0].get<double>() << "," << rec["lambda"][1].get<double>()
                          << ") M=(" << rec["M"][0].get<double>() << "," << rec["M"][1].get<double>() << ") D=("
                          << rec["D"][0].get<double>() << "," << rec["D"][1].get<double>() << ")\n";
            }
        }
    }
    return refused ? kExitRefused : kExitOk;
}

int cmd_defect(const std::string& model_path, bool with_sperp, bool as_json) {
    const friedrichs::FriedrichsModel model = load_model(model_path).build();
    const friedrichs::DefectReport report = friedrichs::defect_hplus(model);
    friedrichs::SperpBasis basis;
    if (with_sperp) basis = friedrichs::sperp_basis(model, report);
    const std::string payload = friedrichs::defect_report_json(report, with_sperp ? &basis : nullptr);
    if (as_json) {
        std::cout << payload;
    } else {
        std::cout << "N=" << report.n << " P=" << report.p << " M=" << report.m << " M0=" << report.m0
                  << " defect=" << report.defect << "\n";
        if (with_sperp) std::cout << "sperp dimension " << basis.vectors.size() << "\n";
    }
    return kExitOk;
}

int cmd_petal(const std::string& model_path, const std::string& plane_flag, const std::string& out_path,
              int grid, const std::string& builtin) {
    friedrichs::CurveAtlas atlas;
    if (builtin == "figure2") {
        atlas = friedrichs::figure2_harness(grid > 0 ? grid : 600);
    } else if (!builtin.empty()) {
        std::cerr << "usage: unknown builtin " << builtin << "\n";
        return kExitUsage;
    } else {
        const friedrichs::ModelSpecFile spec = load_model(model_path);
        const friedrichs::FriedrichsModel model = spec.build();
        friedrichs::Plane plane = spec.sweep.present ? spec.sweep.plane : friedrichs::Plane::Mu;
        if (!plane_flag.empty()) plane = friedrichs::plane_from_name(plane_flag);
        const int resolution = grid > 0 ? grid : (spec.sweep.present ? spec.sweep.resolution : 600);
        atlas = friedrichs::real_root_locus(model, plane);
        if (spec.sweep.has_bounds) {
            const friedrichs::GridWindow window{spec.sweep.re_min, spec.sweep.re_max, spec.sweep.im_min,
                                                spec.sweep.im_max};
            friedrichs::region_defects(model, atlas, resolution, &window);
        } else {
            friedrichs::region_defects(model, atlas, resolution);
        }
    }

    friedrichs::AtlasFormat format;
    if (out_path.ends_with(".svg"))
        format = friedrichs::AtlasFormat::Svg;
    else if (out_path.ends_with(".csv"))
        format = friedrichs::AtlasFormat::Csv;
    else if (out_path.ends_with(".json"))
        format = friedrichs::AtlasFormat::Json;
    else {
        std::cerr << "usage: --out must end in .svg, .csv or .json\n";
        return kExitUsage;
    }
    friedrichs::atlas_export(atlas, format, out_path);
    std::cout << "wrote " << out_path << " (" << atlas.regions.size() << " regions)\n";
    return kExitOk;
}

int cmd_oracle(const std::string& model_path, bool as_json) {
    const friedrichs::FriedrichsModel model = load_model(model_path).build();
    const friedrichs::OracleComparison cmp = friedrichs::oracle_compare(model);
    if (as_json) {
        std::cout << friedrichs::oracle_report_json(cmp);
    } else {
        std::cout << "analytic defect " << cmp.analytic_defect << ", oracle nullity " << cmp.oracle_nullity
                  << ", margin " << cmp.margin << ", cond " << cmp.entries_cond << "\n";
    }
    return cmp.analytic_defect == cmp.oracle_nullity ? kExitOk : 1;
}

int cmd_reconstruct(const std::string& model_path, bool as_json) {
    const friedrichs::FriedrichsModel model = load_model(model_path).build();
    const friedrichs::RestrictedResolventProvider provider = friedrichs::make_hidden_provider(model);
    const friedrichs::ReconstructionResult result = friedrichs::reconstruct_m(provider);
    const friedrichs::ReconstructionScores scores = friedrichs::score_reconstruction(model, result);
    if (as_json) {
        std::cout << friedrichs::reconstruction_report_json(scores);
    } else {
        std::cout << "B error " << scores.b_error << ", max relative M error " << scores.m_max_rel_error
                  << ", psi collinearity " << scores.psi_collinearity_residual << "\n";
    }
    return scores.m_max_rel_error <= 1e-4 && scores.b_error <= 1e-3 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Friedrichs-model spectral toolkit"};
    app.require_subcommand(1);

    std::string model_path, out_path, plane_flag, builtin;
    std::vector<std::string> lambda_flags;
    bool as_json = false, with_sperp = false;
    int grid = 0;

    CLI::App* mfun = app.add_subcommand("mfun", "M-function and determinant values");
    mfun->add_option("model", model_path, "model JSON file")->required();
    mfun->add_option("--lambda", lambda_flags, "evaluation point re,im (repeatable)");
    mfun->add_flag("--json", as_json, "structured output");

    CLI::App* defect = app.add_subcommand("defect", "detectable-subspace defect report");
    defect->add_option("model", model_path, "model JSON file")->required();
    defect->add_flag("--sperp", with_sperp, "include the S-perp basis");
    defect->add_flag("--json", as_json, "structured output");

    CLI::App* petal = app.add_subcommand("petal", "real-root locus atlas");
    petal->add_option("model", model_path, "model JSON file");
    petal->add_option("--plane", plane_flag, "alpha | inv_alpha | mu");
    petal->add_option("--out", out_path, "output file (.svg/.csv/.json)")->required();
    petal->add_option("--grid", grid, "region grid resolution");
    petal->add_option("--builtin", builtin, "built-in configuration (figure2)");

    CLI::App* oracle = app.add_subcommand("oracle", "finite-rank quadrature oracle comparison");
    oracle->add_option("model", model_path, "model JSON file")->required();
    oracle->add_flag("--json", as_json, "structured output");

    CLI::App* reconstruct = app.add_subcommand("reconstruct", "M-function reconstruction round trip");
    reconstruct->add_option("model", model_path, "model JSON file")->required();
    reconstruct->add_flag("--json", as_json, "structured output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (mfun->parsed()) return cmd_mfun(model_path, lambda_flags, as_json);
        if (defect->parsed()) return cmd_defect(model_path, with_sperp, as_json);
        if (petal->parsed()) {
            if (builtin.empty() && model_path.empty()) {
                std::cerr << "usage: petal needs a model file or --builtin\n";
                return kExitUsage;
            }
            return cmd_petal(model_path, plane_flag, out_path, grid, builtin);
        }
        if (oracle->parsed()) return cmd_oracle(model_path, as_json);
        if (reconstruct->parsed()) return cmd_reconstruct(model_path, as_json);
    } catch (const friedrichs::Error& err) {
        if (err.code() == "IoError") {
            std::cerr << "io error: " << err.what() << "\n";
            return kExitIo;
        }
        if (err.code() == "BadModelFile" || err.code() == "BadPlane" || err.code() == "BadGrid") {
            std::cerr << "usage: " << err.what() << "\n";
            return kExitUsage;
        }
        std::cout << nlohmann::json({{"error", err.code()}, {"detail", err.what()}}).dump(2) << "\n";
        return kExitRefused;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitRefused;
    }
    return kExitUsage;
}
