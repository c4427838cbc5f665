#pragma once

#include <string>
#include <utility>

#include "friedrichs/detectable.hpp"

namespace friedrichs {

enum class Plane { Alpha, InvAlpha, Mu };

const char* plane_name(Plane p);
Plane plane_from_name(const std::string& name);

/// Coupling value whose continued determinant has a root exactly at the
/// given point of the chosen parameter plane.
Complex plane_to_alpha(Plane plane, Complex point);

struct RegionLabel {
    Complex representative;
    int defect = 0;
    int cells = 0;
    std::vector<Complex> extra_samples;
};

/// Sampled real-root locus xi(R) of the continued determinant in a parameter
/// plane, with per-region defect labels.
struct CurveAtlas {
    Plane plane = Plane::Mu;
    std::vector<Complex> locus;        // target-plane samples in lambda order
    std::vector<double> locus_lambda;  // source lambda per sample (+-inf at the ends)
    std::vector<int> locus_cover;      // covering multiplicity of the sample point
    std::vector<char> locus_kept;      // false where the alpha-plane clip removed the sample
    std::vector<RegionLabel> regions;
    std::vector<std::pair<Complex, Complex>> xi_data;  // (a_k, z_k)
    std::vector<std::pair<int, int>> locus_defects;    // sparse on-curve probes (index, defect)

    double bbox_min_re = 0, bbox_max_re = 0, bbox_min_im = 0, bbox_max_im = 0;
    double plot_tol = 0.0;  // coincidence tolerance, 1e-6 * bbox diagonal
};

/// xi(lambda) = sum a_k/(z_k - lambda) with a_k = c_k phibar(z_k).
RationalFn xi_function(const FriedrichsModel& model);

CurveAtlas real_root_locus(const FriedrichsModel& model, Plane plane);

/// Flood-fill region decomposition on a grid over the padded locus bounding
/// box (or an explicit window); every region is labeled by defect_hplus at
/// its representative and cross-checked at extra sample points.
struct GridWindow {
    double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
};
void region_defects(const FriedrichsModel& model, CurveAtlas& atlas, int grid = 600,
                    const GridWindow* window = nullptr);

/// Number of roots of the continued determinant strictly below the real axis.
int lower_root_count(const FriedrichsModel& model);

/// Built-in four-petal configuration: real zeros of xi pinned at 0, 1, -2
/// with psi-poles -i, 1-i, -2-i, 3-2i and a_4 = 1.
FriedrichsModel figure2_model();
CurveAtlas figure2_harness(int grid = 600);

std::string atlas_svg(const CurveAtlas& atlas);
std::string atlas_csv(const CurveAtlas& atlas);

enum class AtlasFormat { Svg, Csv, Json };
void atlas_export(const CurveAtlas& atlas, AtlasFormat format, const std::string& path);

}  // namespace friedrichs
