#include "friedrichs/atlas.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>

#include "friedrichs/parallel.hpp"
#include "friedrichs/serialization.hpp"

namespace friedrichs {

namespace {

const Complex kTwoPiI(0.0, 2.0 * kPi);

struct PlaneMap {
    Plane plane;
    // the alpha-plane image of xi = 0 is infinite; such samples are clipped
    bool finite(Complex xi) const { return plane != Plane::Alpha || std::abs(xi) > clip_floor; }
    Complex operator()(Complex xi) const {
        switch (plane) {
            case Plane::Mu: return xi;
            case Plane::InvAlpha: return kTwoPiI * xi;
            default: return Complex(1.0) / (kTwoPiI * xi);
        }
    }
    double clip_floor = 0.0;
};

struct Sample {
    double theta;
    Complex xi;
};

int cover_multiplicity(const RationalFn& xi, Complex v) {
    // distinct real solutions of xi(lambda) = v, counting lambda = infinity
    // through the degree deficit of num - v * den (relative trimming: a
    // negligible leading coefficient is a root escaped to infinity)
    const poly::Poly p =
        poly::trimmed_relative(poly::sub(xi.numerator(), poly::scale(xi.denominator(), v)));
    const int full_degree = poly::degree(xi.denominator());
    int count = full_degree - poly::degree(p);  // roots at infinity
    if (poly::degree(p) >= 1)
        for (const Root& r : poly_roots(p))
            if (classify_halfplane(r.value, 1e-7) == HalfPlane::Real) ++count;
    return count;
}

}  // namespace

const char* plane_name(Plane p) {
    switch (p) {
        case Plane::Alpha: return "alpha";
        case Plane::InvAlpha: return "inv_alpha";
        default: return "mu";
    }
}

Plane plane_from_name(const std::string& name) {
    if (name == "alpha") return Plane::Alpha;
    if (name == "inv_alpha") return Plane::InvAlpha;
    if (name == "mu") return Plane::Mu;
    fail("BadPlane", "unknown parameter plane: " + name);
}

Complex plane_to_alpha(Plane plane, Complex point) {
    switch (plane) {
        case Plane::Alpha: return point;
        case Plane::InvAlpha: return Complex(1.0) / point;
        default: return Complex(1.0) / (kTwoPiI * point);
    }
}

RationalFn xi_function(const FriedrichsModel& model) {
    std::vector<PoleTerm> terms;
    for (const PoleTerm& t : model.psi().terms()) {
        if (t.order != 1) fail("UnsupportedPsiPole", "psi poles must be simple");
        if (classify_halfplane(t.pole) != HalfPlane::Lower)
            fail("WrongCase", "psi must lie in H2+ (poles in the lower half-plane)");
        const Complex value = model.phi_bar().eval(t.pole);
        if (std::abs(value) <= 1e-12 * term_magnitude_at(model.phi_bar(), t.pole)) continue;
        // xi = sum a_k/(z_k - lambda) = sum (-a_k)/(lambda - z_k)
        terms.push_back({t.pole, 1, -t.coeff * value});
    }
    return RationalFn::from_terms(std::move(terms));
}

CurveAtlas real_root_locus(const FriedrichsModel& model, Plane plane) {
    for (const PoleTerm& t : model.phi().terms())
        if (classify_halfplane(t.pole) != HalfPlane::Lower)
            fail("WrongCase", "phi must lie in H2+ (poles in the lower half-plane)");
    const RationalFn xi = xi_function(model);
    if (xi.is_zero()) fail("DegenerateLocus", "all a_k vanish; the locus is the single point 0");

    CurveAtlas atlas;
    atlas.plane = plane;
    for (const PoleTerm& t : model.psi().terms())
        atlas.xi_data.push_back({t.coeff * model.phi_bar().eval(t.pole), t.pole});

    const auto xi_at_theta = [&xi](double theta) {
        if (std::abs(std::abs(theta) - 0.5 * kPi) < 1e-15) return Complex(0.0);  // lambda = +-inf
        return xi.eval_cached(Complex(std::tan(theta), 0.0));
    };

    // pass 1: uniform sweep for the scale of the curve
    constexpr int kSeed = 256;
    std::deque<Sample> samples;
    double xi_max = 0.0;
    for (int i = 0; i <= kSeed; ++i) {
        const double theta = -0.5 * kPi + kPi * static_cast<double>(i) / kSeed;
        const Complex v = xi_at_theta(theta);
        xi_max = std::max(xi_max, std::abs(v));
        samples.push_back({theta, v});
    }

    PlaneMap map{plane, 1e-3 * xi_max};
    double min_re = 1e300, max_re = -1e300, min_im = 1e300, max_im = -1e300;
    for (const Sample& s : samples) {
        if (!map.finite(s.xi)) continue;
        const Complex w = map(s.xi);
        min_re = std::min(min_re, w.real());
        max_re = std::max(max_re, w.real());
        min_im = std::min(min_im, w.imag());
        max_im = std::max(max_im, w.imag());
    }
    const double diag = std::hypot(max_re - min_re, max_im - min_im);
    const double sample_tol = std::max(diag, 1e-12) / 400.0;

    // pass 2: adaptive bisection until consecutive kept samples are close in
    // the target plane
    std::vector<Sample> refined(samples.begin(), samples.end());
    bool changed = true;
    int guard = 0;
    while (changed && static_cast<int>(refined.size()) < 20000 && guard++ < 24) {
        changed = false;
        std::vector<Sample> next;
        next.reserve(refined.size() * 2);
        for (size_t i = 0; i + 1 < refined.size(); ++i) {
            next.push_back(refined[i]);
            const bool fa = map.finite(refined[i].xi), fb = map.finite(refined[i + 1].xi);
            double gap = 0.0;
            if (fa && fb) gap = std::abs(map(refined[i].xi) - map(refined[i + 1].xi));
            if ((fa && fb && gap > sample_tol) || (fa != fb)) {
                const double mid = 0.5 * (refined[i].theta + refined[i + 1].theta);
                if (mid - refined[i].theta > 1e-9) {
                    next.push_back({mid, xi_at_theta(mid)});
                    changed = true;
                }
            }
        }
        next.push_back(refined.back());
        refined.swap(next);
    }

    for (const Sample& s : refined) {
        const bool keep = map.finite(s.xi);
        atlas.locus_kept.push_back(keep ? 1 : 0);
        atlas.locus.push_back(keep ? map(s.xi) : Complex(0.0));
        atlas.locus_lambda.push_back(std::tan(std::clamp(s.theta, -0.5 * kPi, 0.5 * kPi)));
        atlas.locus_cover.push_back(cover_multiplicity(xi, s.xi));
        if (keep) {
            const Complex w = map(s.xi);
            min_re = std::min(min_re, w.real());
            max_re = std::max(max_re, w.real());
            min_im = std::min(min_im, w.imag());
            max_im = std::max(max_im, w.imag());
        }
    }
    atlas.bbox_min_re = min_re;
    atlas.bbox_max_re = max_re;
    atlas.bbox_min_im = min_im;
    atlas.bbox_max_im = max_im;
    atlas.plot_tol = 1e-6 * std::hypot(max_re - min_re, max_im - min_im);

    // sparse on-curve defect probes through the Theorem's real-root branch
    const size_t stride = std::max<size_t>(1, atlas.locus.size() / 8);
    for (size_t i = stride / 2; i < atlas.locus.size(); i += stride) {
        if (!atlas.locus_kept[i]) continue;
        const Complex alpha = plane_to_alpha(plane, atlas.locus[i]);
        if (!is_finite(alpha) || std::abs(alpha) > 1e12) continue;
        atlas.locus_defects.push_back(
            {static_cast<int>(i), defect_hplus(model.with_alpha(alpha)).defect});
    }
    return atlas;
}

int lower_root_count(const FriedrichsModel& model) {
    int count = 0;
    for (const RootClassification& rc : defect_hplus(model).roots)
        if (rc.half_plane == HalfPlane::Lower) count += rc.multiplicity;
    return count;
}

void region_defects(const FriedrichsModel& model, CurveAtlas& atlas, int grid, const GridWindow* window) {
    if (atlas.locus.empty()) fail("DegenerateLocus", "locus must be computed first");
    if (grid < 16) fail("BadGrid", "region grid is too coarse");
    const double pad_re = 0.2 * std::max(atlas.bbox_max_re - atlas.bbox_min_re, 1e-12);
    const double pad_im = 0.2 * std::max(atlas.bbox_max_im - atlas.bbox_min_im, 1e-12);
    const double x0 = window ? window->re_min : atlas.bbox_min_re - pad_re;
    const double x1 = window ? window->re_max : atlas.bbox_max_re + pad_re;
    const double y0 = window ? window->im_min : atlas.bbox_min_im - pad_im;
    const double y1 = window ? window->im_max : atlas.bbox_max_im + pad_im;
    if (x0 >= x1 || y0 >= y1) fail("BadGrid", "empty region window");
    const double dx = (x1 - x0) / grid, dy = (y1 - y0) / grid;

    const auto cell_of = [&](Complex p) {
        const int cx = static_cast<int>(std::floor((p.real() - x0) / dx));
        const int cy = static_cast<int>(std::floor((p.imag() - y0) / dy));
        return std::pair<int, int>{std::clamp(cx, 0, grid - 1), std::clamp(cy, 0, grid - 1)};
    };
    const auto center_of = [&](int cx, int cy) {
        return Complex(x0 + (cx + 0.5) * dx, y0 + (cy + 0.5) * dy);
    };

    std::vector<char> blocked(static_cast<size_t>(grid) * grid, 0);
    const auto mark = [&](Complex p) {
        const auto [cx, cy] = cell_of(p);
        blocked[static_cast<size_t>(cy) * grid + cx] = 1;
    };
    for (size_t i = 0; i + 1 < atlas.locus.size(); ++i) {
        if (!atlas.locus_kept[i] || !atlas.locus_kept[i + 1]) continue;
        const Complex a = atlas.locus[i], b = atlas.locus[i + 1];
        const int steps = 2 + static_cast<int>(std::ceil(std::abs(b - a) / std::min(dx, dy) * 2.0));
        for (int s = 0; s <= steps; ++s)
            mark(a + (b - a) * (static_cast<double>(s) / steps));
    }

    // component decomposition of the free cells
    std::vector<int> component(static_cast<size_t>(grid) * grid, -1);
    int ncomp = 0;
    std::deque<std::pair<int, int>> queue;
    for (int cy = 0; cy < grid; ++cy)
        for (int cx = 0; cx < grid; ++cx) {
            const size_t idx = static_cast<size_t>(cy) * grid + cx;
            if (blocked[idx] || component[idx] >= 0) continue;
            const int id = ncomp++;
            component[idx] = id;
            queue.push_back({cx, cy});
            while (!queue.empty()) {
                const auto [px, py] = queue.front();
                queue.pop_front();
                const int nbhd[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
                for (const auto& d : nbhd) {
                    const int qx = px + d[0], qy = py + d[1];
                    if (qx < 0 || qy < 0 || qx >= grid || qy >= grid) continue;
                    const size_t qidx = static_cast<size_t>(qy) * grid + qx;
                    if (blocked[qidx] || component[qidx] >= 0) continue;
                    component[qidx] = id;
                    queue.push_back({qx, qy});
                }
            }
        }

    // distance (in cells) from the blocked set
    std::vector<int> dist(static_cast<size_t>(grid) * grid, -1);
    for (int cy = 0; cy < grid; ++cy)
        for (int cx = 0; cx < grid; ++cx)
            if (blocked[static_cast<size_t>(cy) * grid + cx]) {
                dist[static_cast<size_t>(cy) * grid + cx] = 0;
                queue.push_back({cx, cy});
            }
    if (queue.empty()) {  // no blocked cells: treat the border as distance source
        for (int cx = 0; cx < grid; ++cx) {
            dist[static_cast<size_t>(cx)] = 0;
            queue.push_back({cx, 0});
        }
    }
    while (!queue.empty()) {
        const auto [px, py] = queue.front();
        queue.pop_front();
        const size_t pidx = static_cast<size_t>(py) * grid + px;
        const int nbhd[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& d : nbhd) {
            const int qx = px + d[0], qy = py + d[1];
            if (qx < 0 || qy < 0 || qx >= grid || qy >= grid) continue;
            const size_t qidx = static_cast<size_t>(qy) * grid + qx;
            if (dist[qidx] >= 0) continue;
            dist[qidx] = dist[pidx] + 1;
            queue.push_back({qx, qy});
        }
    }

    struct Best {
        int dist = -1;
        size_t idx = 0;
        int count = 0;
        std::vector<std::pair<int, size_t>> ranked;
    };
    std::vector<Best> best(static_cast<size_t>(ncomp));
    for (int cy = 0; cy < grid; ++cy)
        for (int cx = 0; cx < grid; ++cx) {
            const size_t idx = static_cast<size_t>(cy) * grid + cx;
            if (component[idx] < 0) continue;
            Best& b = best[static_cast<size_t>(component[idx])];
            ++b.count;
            if (dist[idx] > b.dist) {
                b.dist = dist[idx];
                b.idx = idx;
            }
            if (dist[idx] >= 2 && b.ranked.size() < 64) b.ranked.push_back({dist[idx], idx});
        }

    struct Pending {
        RegionLabel label;
        std::vector<Complex> probes;
    };
    std::vector<Pending> pending;
    for (int id = 0; id < ncomp; ++id) {
        const Best& b = best[static_cast<size_t>(id)];
        if (b.count < 4) continue;  // slivers between raster cells carry no information
        Pending item;
        const int cx = static_cast<int>(b.idx % static_cast<size_t>(grid));
        const int cy = static_cast<int>(b.idx / static_cast<size_t>(grid));
        item.label.representative = center_of(cx, cy);
        item.label.cells = b.count;
        item.probes.push_back(item.label.representative);
        if (b.ranked.size() >= 9) {
            for (size_t pick : {b.ranked.size() / 3, (2 * b.ranked.size()) / 3}) {
                const size_t idx = b.ranked[pick].second;
                item.probes.push_back(center_of(static_cast<int>(idx % static_cast<size_t>(grid)),
                                                static_cast<int>(idx / static_cast<size_t>(grid))));
            }
        }
        pending.push_back(std::move(item));
    }

    // per-sample defect evaluation is embarrassingly parallel; the atlas
    // assembly below is a single-owner reduction in discovery order
    std::vector<std::vector<int>> labels(pending.size());
    parallel_for(pending.size(), [&](size_t i) {
        for (Complex p : pending[i].probes) {
            const Complex alpha = plane_to_alpha(atlas.plane, p);
            if (!is_finite(alpha) || std::abs(alpha) > 1e14) {
                labels[i].push_back(-1);  // the alpha = infinity point
                continue;
            }
            labels[i].push_back(defect_hplus(model.with_alpha(alpha)).defect);
        }
    });

    atlas.regions.clear();
    for (size_t i = 0; i < pending.size(); ++i) {
        int labelled = -1;
        for (size_t k = 0; k < pending[i].probes.size(); ++k) {
            const int d = labels[i][k];
            if (d < 0) continue;
            if (labelled < 0) {
                labelled = d;
            } else if (labelled != d) {
                fail("RegionResolutionTooCoarse", "defect labels disagree within one region");
            }
            if (k > 0) pending[i].label.extra_samples.push_back(pending[i].probes[k]);
        }
        if (labelled < 0) continue;
        pending[i].label.defect = labelled;
        atlas.regions.push_back(pending[i].label);
    }
}

FriedrichsModel figure2_model() {
    const Complex z[4] = {{0.0, -1.0}, {1.0, -1.0}, {-2.0, -1.0}, {3.0, -2.0}};
    const double lambdas[3] = {0.0, 1.0, -2.0};
    const Complex a4(1.0, 0.0);

    Eigen::Matrix3cd zmat;
    Eigen::Vector3cd rhs;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) zmat(j, k) = Complex(1.0) / (z[k] - lambdas[j]);
        rhs(j) = -a4 / (z[3] - lambdas[j]);
    }
    if (std::abs(zmat.determinant()) < 1e-12) fail("WrongCase", "figure-2 node system is singular");
    const Eigen::Vector3cd a = zmat.fullPivLu().solve(rhs);

    const Complex w1(0.0, 1.0);
    const RationalFn phibar = RationalFn::from_terms({{w1, 1, Complex(1.0)}});
    std::vector<PoleTerm> psi_terms;
    for (int k = 0; k < 4; ++k) {
        const Complex ak = k < 3 ? a(k) : a4;
        psi_terms.push_back({z[k], 1, ak * (z[k] - w1)});  // c_k = a_k / phibar(z_k)
    }
    return FriedrichsModel(conj_on_real(phibar), RationalFn::from_terms(psi_terms), Complex(0.0));
}

CurveAtlas figure2_harness(int grid) {
    const FriedrichsModel model = figure2_model();
    CurveAtlas atlas = real_root_locus(model, Plane::InvAlpha);
    region_defects(model, atlas, grid);
    return atlas;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    if (v == 0.0) v = 0.0;  // normalize the sign of zero for byte-stable output
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string fmt_sci(double v) {
    char buf[48];
    if (v == 0.0) v = 0.0;
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

}  // namespace

std::string atlas_svg(const CurveAtlas& atlas) {
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
    if (!atlas.locus.empty()) {
        const double pad_re = 0.08 * std::max(atlas.bbox_max_re - atlas.bbox_min_re, 1e-12);
        const double pad_im = 0.08 * std::max(atlas.bbox_max_im - atlas.bbox_min_im, 1e-12);
        const double x0 = atlas.bbox_min_re - pad_re, x1 = atlas.bbox_max_re + pad_re;
        const double y0 = atlas.bbox_min_im - pad_im, y1 = atlas.bbox_max_im + pad_im;
        const auto px = [&](Complex p) { return 640.0 * (p.real() - x0) / (x1 - x0); };
        const auto py = [&](Complex p) { return 640.0 * (y1 - p.imag()) / (y1 - y0); };

        std::string path;
        bool open = false;
        for (size_t i = 0; i < atlas.locus.size(); ++i) {
            if (!atlas.locus_kept[i]) {
                open = false;
                continue;
            }
            path += open ? " L " : (path.empty() ? "M " : " M ");
            path += fmt(px(atlas.locus[i])) + " " + fmt(py(atlas.locus[i]));
            open = true;
        }
        svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"#1a1a1a\" stroke-width=\"1.2\"/>\n";
        for (const RegionLabel& r : atlas.regions) {
            svg += "<text x=\"" + fmt(px(r.representative)) + "\" y=\"" + fmt(py(r.representative)) +
                   "\" font-size=\"14\" text-anchor=\"middle\">" + std::to_string(r.defect) + "</text>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

std::string atlas_csv(const CurveAtlas& atlas) {
    std::string csv = "plane_re,plane_im,kind,defect\n";
    for (size_t i = 0; i < atlas.locus.size(); ++i) {
        if (!atlas.locus_kept[i]) continue;
        csv += fmt_sci(atlas.locus[i].real()) + "," + fmt_sci(atlas.locus[i].imag()) + ",locus,\n";
    }
    for (const RegionLabel& r : atlas.regions)
        csv += fmt_sci(r.representative.real()) + "," + fmt_sci(r.representative.imag()) + ",region," +
               std::to_string(r.defect) + "\n";
    return csv;
}

void atlas_export(const CurveAtlas& atlas, AtlasFormat format, const std::string& path) {
    std::string payload;
    switch (format) {
        case AtlasFormat::Svg: payload = atlas_svg(atlas); break;
        case AtlasFormat::Csv: payload = atlas_csv(atlas); break;
        case AtlasFormat::Json: payload = atlas_json(atlas); break;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("IoError", "cannot open " + path + " for writing");
    out << payload;
    if (!out.good()) fail("IoError", "write to " + path + " failed");
}

}  // namespace friedrichs
