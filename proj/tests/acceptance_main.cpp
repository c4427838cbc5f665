// Acceptance suite: every criterion prints one pass/fail line; the process
// exits with the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "friedrichs/oracle.hpp"
#include "friedrichs/reconstruct.hpp"
#include "friedrichs/serialization.hpp"
#include "test_support.hpp"

using namespace friedrichs;
using testing::random_complex;

namespace {

const Complex kI(0.0, 1.0);
const Complex kTwoPiI(0.0, 2.0 * kPi);
const Complex kIPi(0.0, kPi);

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* pattern, auto... args) {
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer), pattern, args...);
    return buffer;
}

// ---------------------------------------------------------------------------
// 1. rank-one classification: defect 1/0/0 according to the closed-form root
void criterion1() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(20101);
    int checked = 0;
    bool ok = true;
    std::uniform_real_distribution<double> xs(-3.0, 3.0);
    while (checked < 200) {
        const Complex z1 = random_complex(rng, -2, 2, -2.5, -0.3);
        const Complex w1 = random_complex(rng, -2, 2, 0.3, 2.5);
        Complex alpha;
        switch (checked % 3) {
            case 0: alpha = random_complex(rng, -1.5, 1.5, -1.5, 1.5) + Complex(0.2, 0.1); break;
            case 1: alpha = random_complex(rng, -0.2, 0.2, -0.2, 0.2) + Complex(0.05, 0.0); break;
            default: alpha = (Complex(xs(rng), 0.0) - z1) * (w1 - z1) / kTwoPiI; break;  // real root
        }
        if (std::abs(alpha) < 1e-3) continue;
        const Complex lambda0 = testing::rank_one_lambda0(z1, w1, alpha);
        const int expected = classify_halfplane(lambda0) == HalfPlane::Upper ? 1 : 0;
        const DefectReport report_ = defect_hplus(testing::rank_one_model(z1, w1, alpha, Complex(0.7)));
        if (report_.defect != expected) ok = false;
        if (classify_halfplane(lambda0) == HalfPlane::Real && report_.m != 1) ok = false;
        ++checked;
    }
    const double elapsed = seconds_since(start);
    report(1, ok && elapsed < 1.0, fmt("200 classifications, %.3f s", elapsed));
}

// 2. the S-perp representative is the displayed closed form
void criterion2() {
    std::mt19937 rng(20202);
    int checked = 0;
    double worst = 0.0;
    while (checked < 60) {
        const Complex z1 = random_complex(rng, -2, 2, -2.5, -0.3);
        const Complex w1 = random_complex(rng, -2, 2, 0.3, 2.5);
        const Complex alpha = random_complex(rng, -1.5, 1.5, -1.5, 1.5) + Complex(0.2, 0.2);
        const Complex lambda0 = testing::rank_one_lambda0(z1, w1, alpha);
        if (classify_halfplane(lambda0) != HalfPlane::Upper) continue;
        const FriedrichsModel model = testing::rank_one_model(z1, w1, alpha, Complex(1.0));
        const SperpBasis basis = sperp_basis(model, defect_hplus(model));
        if (basis.vectors.size() != 1) {
            worst = 1.0;
            break;
        }
        std::vector<Root> roots{{std::conj(w1), 1}};
        if (std::abs(std::conj(lambda0) - std::conj(w1)) < tol::pole_cluster * std::max(1.0, std::abs(lambda0)))
            roots[0].multiplicity = 2;
        else
            roots.push_back({std::conj(lambda0), 1});
        const RationalFn target = RationalFn::from_quotient_known_poles(poly::Poly{1.0}, roots);
        worst = std::max(worst, collinearity_residual(basis.vectors[0], target));
        ++checked;
    }
    report(2, worst < 1e-9, fmt("60 defect-one draws, max collinearity residual %.2e", worst));
}

// 3. the quadrature oracle agrees with the analytic defect
void criterion3() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(20303);
    const auto sigmas = [](const FriedrichsModel& m) {
        return gram_singular_values(build_system(m, m.alpha()));
    };
    const auto margin = [](const FriedrichsModel& m) {
        return essential_range_margin(mult_symbol(m), Complex(1.0) / (kTwoPiI * m.alpha()));
    };
    int agreements = 0;
    bool ok = true;
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 1 + rep % 4;
        const FriedrichsModel model = testing::draw_oracle_model(rng, n, sigmas, margin);
        const OracleComparison cmp = oracle_compare(model);
        if (cmp.oracle_nullity != cmp.analytic_defect) ok = false;
        ++agreements;
    }
    const double elapsed = seconds_since(start);
    report(3, ok && agreements == 100 && elapsed < 60.0,
           fmt("%d oracle comparisons, %.1f s", agreements, elapsed));
}

// 4. one-petal parabola identity and labels
void criterion4() {
    const RationalFn psi = RationalFn::from_terms({{-kI, 1, Complex(-2.0)}, {-2.0 * kI, 1, Complex(3.0)}});
    const RationalFn phibar = RationalFn::from_terms({{kI, 1, Complex(1.0)}});
    const FriedrichsModel model(conj_on_real(phibar), psi, Complex(0.0), Complex(1.0));
    CurveAtlas atlas = real_root_locus(model, Plane::Mu);
    region_defects(model, atlas, 400);

    const auto muhat_of = [](Complex mu) { return Complex(-1.0) / (6.0 * mu); };
    const auto parabola = [](Complex muhat) {
        return muhat.imag() * muhat.imag() - 0.5 * (1.0 + 3.0 * muhat.real());
    };
    int samples = 0;
    double worst = 0.0;
    for (size_t i = 0; i < atlas.locus.size(); ++i) {
        if (!atlas.locus_kept[i] || std::abs(atlas.locus[i]) < 1e-12) continue;
        worst = std::max(worst, std::abs(parabola(muhat_of(atlas.locus[i]))));
        ++samples;
    }
    bool labels_ok = atlas.regions.size() >= 2;
    for (const RegionLabel& region : atlas.regions) {
        const int expected = parabola(muhat_of(region.representative)) < 0.0 ? 0 : 1;
        if (region.defect != expected) labels_ok = false;
    }
    // on the curve the defect equals the inside value 0
    for (const auto& [idx, defect] : atlas.locus_defects)
        if (defect != 0) labels_ok = false;
    report(4, samples >= 500 && worst < 1e-8 && labels_ok,
           fmt("%d samples, max parabola residual %.2e", samples, worst));
}

// 5. doubly covered petal: labels 0/2 and a jump of two across the arc
void criterion5() {
    const RationalFn psi = RationalFn::from_terms({{-kI, 1, Complex(-1.0)}, {-2.0 * kI, 1, Complex(3.0)}});
    const RationalFn phibar = RationalFn::from_terms({{kI, 1, Complex(1.0)}});
    const FriedrichsModel model(conj_on_real(phibar), psi, Complex(0.0), Complex(1.0));
    CurveAtlas atlas = real_root_locus(model, Plane::Mu);
    region_defects(model, atlas, 400);

    bool labels_ok = true;
    int saw0 = 0, saw2 = 0;
    for (const RegionLabel& region : atlas.regions) {
        if (region.defect == 0) ++saw0;
        else if (region.defect == 2) ++saw2;
        else labels_ok = false;
    }
    int covered_twice = 0, kept = 0;
    for (size_t i = 0; i < atlas.locus.size(); ++i) {
        if (!atlas.locus_kept[i]) continue;
        ++kept;
        if (atlas.locus_cover[i] >= 2) ++covered_twice;
    }
    const size_t mid = atlas.locus.size() / 3;
    const Complex p = atlas.locus[mid];
    const Complex tangent = (atlas.locus[mid + 1] - p) / std::abs(atlas.locus[mid + 1] - p);
    const Complex normal(-tangent.imag(), tangent.real());
    const double delta = 0.02 * std::hypot(atlas.bbox_max_re - atlas.bbox_min_re,
                                           atlas.bbox_max_im - atlas.bbox_min_im);
    const int d1 = defect_hplus(model.with_alpha(plane_to_alpha(Plane::Mu, p + delta * normal))).defect;
    const int d2 = defect_hplus(model.with_alpha(plane_to_alpha(Plane::Mu, p - delta * normal))).defect;
    report(5,
           labels_ok && saw0 >= 1 && saw2 >= 1 && covered_twice > kept / 2 && std::abs(d1 - d2) == 2,
           fmt("labels 0/2, %d/%d doubly covered samples, crossing jump %d", covered_twice, kept,
               std::abs(d1 - d2)));
}

// 6. four-petal harness: defect = 4 - nu_minus and unit steps across arcs
void criterion6() {
    const FriedrichsModel model = figure2_model();
    CurveAtlas atlas = real_root_locus(model, Plane::InvAlpha);
    region_defects(model, atlas, 600);

    bool ok = atlas.regions.size() >= 4;
    for (const RegionLabel& region : atlas.regions) {
        const Complex alpha = plane_to_alpha(Plane::InvAlpha, region.representative);
        if (region.defect != 4 - lower_root_count(model.with_alpha(alpha))) ok = false;
    }

    const double delta = 0.004 * std::hypot(atlas.bbox_max_re - atlas.bbox_min_re,
                                            atlas.bbox_max_im - atlas.bbox_min_im);
    const auto isolated = [&atlas, delta](size_t i, Complex point) {
        for (size_t j = 0; j < atlas.locus.size(); ++j) {
            if (!atlas.locus_kept[j]) continue;
            if (j + 30 > i && j < i + 30) continue;
            if (std::abs(atlas.locus[j] - point) < 2.0 * delta) return false;
        }
        return true;
    };
    int crossings = 0;
    bool steps_ok = true;
    for (size_t i = atlas.locus.size() / 10; i + 1 < atlas.locus.size() && crossings < 8;
         i += atlas.locus.size() / 23) {
        if (!atlas.locus_kept[i] || !atlas.locus_kept[i + 1] || atlas.locus_cover[i] != 1) continue;
        const Complex p = atlas.locus[i];
        const Complex tangent = (atlas.locus[i + 1] - p) / std::abs(atlas.locus[i + 1] - p);
        const Complex normal(-tangent.imag(), tangent.real());
        const Complex above = p + delta * normal, below = p - delta * normal;
        if (!isolated(i, above) || !isolated(i, below)) continue;
        const int d1 = defect_hplus(model.with_alpha(plane_to_alpha(Plane::InvAlpha, above))).defect;
        const int d2 = defect_hplus(model.with_alpha(plane_to_alpha(Plane::InvAlpha, below))).defect;
        if (std::abs(d1 - d2) != 1) steps_ok = false;
        ++crossings;
    }
    report(6, ok && steps_ok && crossings >= 4,
           fmt("%zu regions, %d unit-step crossings", atlas.regions.size(), crossings));
}

// 7. mixed Hardy case: zero defect except at B = -i pi
void criterion7() {
    std::mt19937 rng(20707);
    const Complex bs[4] = {Complex(0.0), Complex(1.0), kI, Complex(2.0, -1.0)};
    bool ok = true;
    int done = 0;
    while (done < 50) {
        // phibar and psi in H2+: phi poles above the axis, psi poles below
        const RationalFn psi = testing::random_hardy_fn(rng, 1 + static_cast<int>(rng() % 3), HalfPlane::Lower);
        const RationalFn phibar = testing::random_hardy_fn(rng, 1 + static_cast<int>(rng() % 2), HalfPlane::Lower);
        const Complex alpha = random_complex(rng, -1, 1, -1, 1) + Complex(0.3, 0.2);
        const FriedrichsModel model(conj_on_real(phibar), psi, bs[done % 4], alpha);
        if (defect_mixed(model).defect != 0 || defect_mixed(model).infinite) ok = false;
        // oracle route at the same coupling, margin permitting
        try {
            if (nullity(build_system(model, alpha)) != 0) ok = false;
        } catch (const Error& err) {
            if (err.code() != "NearEssentialRange") ok = false;
        }
        // the degenerate boundary parameter flags an infinite defect
        const FriedrichsModel degenerate(conj_on_real(phibar), psi, -kIPi, alpha);
        if (!defect_mixed(degenerate).infinite) ok = false;
        ++done;
    }
    report(7, ok, fmt("%d mixed-case models, all defect 0; B = -i pi flagged infinite", done));
}

// 8. reconstruction round trip
void criterion8() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(20808);
    const Complex bs[4] = {Complex(0.0), Complex(1.0), kI, Complex(2.0, -1.0)};
    double worst_b = 0.0, worst_m = 0.0, worst_psi = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const Complex z1 = random_complex(rng, -2, 2, -2.5, -0.4);
        const Complex pole_phi = rep % 2 == 0 ? random_complex(rng, -2, 2, 0.4, 2.5)
                                              : random_complex(rng, -2, 2, -2.5, -0.4);
        const RationalFn psi = RationalFn::from_terms(
            {{z1, 1, random_complex(rng, -1.5, 1.5, -1.5, 1.5) + Complex(0.4, 0.2)}});
        const RationalFn phi = RationalFn::from_terms(
            {{pole_phi, 1, random_complex(rng, -1.5, 1.5, -1.5, 1.5) + Complex(0.3, -0.2)}});
        const Complex alpha = random_complex(rng, -1, 1, -1, 1) + Complex(0.3, 0.1);
        const FriedrichsModel hidden(phi, psi, bs[rep % 4], alpha);
        const ReconstructionResult result = reconstruct_m(make_hidden_provider(hidden));
        const ReconstructionScores scores = score_reconstruction(hidden, result);
        worst_b = std::max(worst_b, scores.b_error);
        worst_m = std::max(worst_m, scores.m_max_rel_error);
        worst_psi = std::max(worst_psi, scores.psi_collinearity_residual);
    }
    const double elapsed = seconds_since(start);
    report(8, worst_b < 1e-3 && worst_m < 1e-5 && worst_psi < 1e-9 && elapsed < 30.0,
           fmt("20 round trips: |B err| %.2e, M rel %.2e, psi %.2e, %.1f s", worst_b, worst_m,
               worst_psi, elapsed));
}

// 9. analytic plumbing residuals
void criterion9() {
    std::mt19937 rng(20909);
    double worst_jump = 0.0, worst_proj = 0.0, worst_green = 0.0, worst_closure = 0.0, worst_ip = 0.0;
    std::uniform_real_distribution<double> ks(-8.0, 8.0);

    for (int rep = 0; rep < 10; ++rep) {
        const RationalFn f = testing::random_l2_fn(rng, 3);
        for (int i = 0; i < 10; ++i) {
            const double k = ks(rng);
            const Complex jump =
                boundary_cauchy(f, k, HalfPlane::Upper) - boundary_cauchy(f, k, HalfPlane::Lower);
            const Complex expected = kTwoPiI * f.eval(Complex(k, 0.0));
            worst_jump = std::max(worst_jump,
                                  std::abs(jump - expected) / (std::abs(expected) + f.coeff_scale()));
        }
        const RationalFn resumed = add(riesz_project(f, +1), riesz_project(f, -1));
        worst_proj = std::max(worst_proj, collinearity_residual(resumed, f));
        for (int i = 0; i < 20; ++i) {
            const Complex lambda = random_complex(rng, -4, 4, 0.05, 4.0) *
                                   (i % 2 == 0 ? Complex(1.0) : Complex(-1.0));
            const Complex up = cauchy_transform(f, lambda, Closure::Upper);
            const Complex lo = cauchy_transform(f, lambda, Closure::Lower);
            worst_closure = std::max(worst_closure,
                                     std::abs(up - lo) / (std::abs(up) + std::abs(lo) + f.coeff_scale()));
        }
        const RationalFn g = testing::random_l2_fn(rng, 3);
        const Complex by_residues = inner_product(f, g);
        const Complex by_quadrature = testing::inner_product_by_quadrature(f, g);
        worst_ip = std::max(worst_ip, std::abs(by_residues - by_quadrature) / (1.0 + std::abs(by_residues)));
    }
    int greens = 0;
    while (greens < 10) {
        try {
            const FriedrichsModel model(testing::random_l2_fn(rng, 2), testing::random_l2_fn(rng, 2),
                                        random_complex(rng, -1, 1, -1, 1), random_complex(rng, -1, 1, -1, 1));
            const DomainElement u = solution_element(model, random_complex(rng, -1, 1, 0.5, 2.0));
            const DomainElement v = solution_element(model, random_complex(rng, -1, 1, -2.0, -0.5));
            worst_green = std::max(worst_green, std::abs(greens_check(model, u, v)) /
                                                    std::max(1.0, greens_scale(model, u, v)));
            ++greens;
        } catch (const Error&) {
        }
    }
    const bool ok = worst_jump < 1e-9 && worst_proj < 1e-9 && worst_green < 1e-9 &&
                    worst_closure < 1e-10 && worst_ip < 1e-7;
    report(9, ok,
           fmt("jump %.1e, projections %.1e, Green %.1e, closures %.1e, quadrature %.1e", worst_jump,
               worst_proj, worst_green, worst_closure, worst_ip));
}

// 10. bordered resolvent regularity at the detected eigenvalue
void criterion10() {
    const Complex alpha = 2.0 * kI / kPi;
    const FriedrichsModel model = testing::rank_one_model(-kI, kI, alpha, Complex(1.0));
    const RationalFn g = RationalFn::from_terms({{Complex(0.4, 1.2), 1, Complex(1.0)},
                                                 {Complex(-0.3, -1.5), 1, Complex(0.6, -0.2)}});
    const BorderedProbe probe = bordered_resolvent_probe(model, kI, g, 0.5);
    report(10, probe.fitted_exponent >= 0.9 && probe.bordered_ratio <= 10.0,
           fmt("growth exponent %.3f, bordered max/min %.2f", probe.fitted_exponent,
               probe.bordered_ratio));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (failures == 0) std::printf("all criteria passed\n");
    return failures;
}
