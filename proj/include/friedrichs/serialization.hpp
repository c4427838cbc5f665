#pragma once

#include <string>

#include "friedrichs/atlas.hpp"
#include "friedrichs/detectable.hpp"
#include "friedrichs/model.hpp"
#include "friedrichs/oracle.hpp"
#include "friedrichs/reconstruct.hpp"

namespace friedrichs {

/// Optional sweep block of a model file.
struct AlphaSweep {
    bool present = false;
    Plane plane = Plane::Mu;
    int resolution = 600;
    bool has_bounds = false;
    double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
};

struct ModelSpecFile {
    RationalFn phi, psi;
    Complex b{0.0, 0.0};
    Complex alpha{1.0, 0.0};
    AlphaSweep sweep;

    FriedrichsModel build() const { return FriedrichsModel(phi, psi, b, alpha); }
};

/// Complex values serialize as [re, im]; rational functions as lists of
/// {"pole": [re, im], "order": n, "coeff": [re, im]}. Unknown keys are
/// rejected so that parse-validate round trips are identities.
ModelSpecFile model_from_json(const std::string& text);
std::string model_to_json(const ModelSpecFile& spec);

std::string rational_to_json(const RationalFn& f);
RationalFn rational_from_json(const std::string& text);

std::string defect_report_json(const DefectReport& report, const SperpBasis* basis = nullptr);
std::string oracle_report_json(const OracleComparison& cmp);
std::string atlas_json(const CurveAtlas& atlas);

struct ReconstructionScores {
    double b_error = 0.0;
    double m_max_rel_error = 0.0;
    double psi_collinearity_residual = 0.0;
};
std::string reconstruction_report_json(const ReconstructionScores& scores);

/// Harness-side comparison of a reconstruction against the hidden model.
ReconstructionScores score_reconstruction(const FriedrichsModel& hidden, const ReconstructionResult& result);

}  // namespace friedrichs
