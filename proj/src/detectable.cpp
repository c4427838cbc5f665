#include "friedrichs/detectable.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

namespace friedrichs {

namespace {

const Complex kTwoPiI(0.0, 2.0 * kPi);
const Complex kIPi(0.0, kPi);

bool near(Complex a, Complex b) {
    return std::abs(a - b) <= tol::pole_cluster * std::max({1.0, std::abs(a), std::abs(b)});
}

// order of vanishing of p at x0 (0 if p(x0) != 0)
int vanishing_order(poly::Poly p, Complex x0) {
    int ord = 0;
    while (!p.empty()) {
        const double scale = std::max(poly::eval_scale(p, x0), 1e-300);
        if (std::abs(poly::eval(p, x0)) > 1e-9 * scale) break;
        p = poly::deflate(p, x0);
        ++ord;
    }
    return ord;
}

// limit of num/den at x0; sets `infinite` when the denominator vanishes to
// higher order (exact L'Hopital on rational data)
Complex rational_limit(poly::Poly num, poly::Poly den, Complex x0, bool& infinite) {
    const int on = vanishing_order(num, x0);
    const int od = vanishing_order(den, x0);
    if (on < od) {
        infinite = true;
        return 0.0;
    }
    infinite = false;
    for (int k = 0; k < od; ++k) {
        num = poly::deflate(num, x0);
        den = poly::deflate(den, x0);
    }
    return poly::eval(num, x0) / poly::eval(den, x0);
}

void require_hplus_hypotheses(const FriedrichsModel& model) {
    for (const PoleTerm& t : model.phi().terms())
        if (classify_halfplane(t.pole) != HalfPlane::Lower)
            fail("WrongCase", "phi must lie in H2+ (all poles in the lower half-plane)");
    for (const PoleTerm& t : model.psi().terms()) {
        if (classify_halfplane(t.pole) != HalfPlane::Lower)
            fail("WrongCase", "psi must lie in H2+ (all poles in the lower half-plane)");
        if (t.order != 1) fail("UnsupportedPsiPole", "psi poles must be simple");
    }
    if (model.degenerate_b()) fail("DegenerateB", "B = +-i pi is a degenerate boundary parameter");
    if (!model.psi().is_zero() && model.alpha() == Complex(0.0))
        fail("WrongCase", "alpha must be nonzero unless psi vanishes");
}

}  // namespace

DefectReport defect_hplus(const FriedrichsModel& model) {
    require_hplus_hypotheses(model);
    DefectReport report;
    report.n = static_cast<int>(model.psi().terms().size());
    if (report.n == 0) return report;  // free model: everything detectable

    const DPlusContinuation dplus = d_plus_continuation(model);
    const RationalFn& phibar = model.phi_bar();

    // zeros of the phibar numerator, for quotient cancellation
    std::vector<Root> phibar_zeros;
    if (!phibar.is_zero() && poly::degree(phibar.numerator()) >= 1)
        phibar_zeros = poly_roots(phibar.numerator());

    if (poly::degree(dplus.num) >= 1) {
        for (const Root& zero : poly_roots(dplus.num)) {
            RootClassification rc;
            rc.root = zero.value;
            rc.multiplicity = zero.multiplicity;
            rc.half_plane = classify_halfplane(zero.value);
            int cancel = 0;
            for (const Root& pz : phibar_zeros)
                if (near(pz.value, zero.value)) cancel += pz.multiplicity;
            rc.effective_order = std::max(0, zero.multiplicity - cancel);
            rc.cancelled = cancel > 0;
            for (const PoleTerm& t : model.psi().terms())
                if (near(t.pole, zero.value)) rc.at_psi_pole = true;
            if (!rc.at_psi_pole && rc.effective_order > 0) {
                if (rc.half_plane == HalfPlane::Lower) report.p += rc.effective_order;
                if (rc.half_plane == HalfPlane::Real) report.m += rc.effective_order;
            }
            report.roots.push_back(rc);
        }
    }

    // degenerate count M0 over psi-poles where phibar vanishes
    for (const PoleTerm& t : model.psi().terms()) {
        if (phibar.is_zero() || std::abs(phibar.eval(t.pole)) <= 1e-10 * term_magnitude_at(phibar, t.pole)) {
            // limit of 2 pi i alpha c_j phibar(mu) / (D_+(mu) (mu - z_j))
            poly::Poly gnum = phibar.is_zero()
                                  ? poly::Poly{}
                                  : poly::scale(poly::multiply(phibar.numerator(), dplus.den),
                                                kTwoPiI * model.alpha() * t.coeff);
            poly::Poly gden = poly::multiply(poly::multiply(phibar.denominator(), dplus.num),
                                             poly::Poly{-t.pole, Complex(1.0)});
            bool infinite = false;
            const Complex lim = poly::is_zero(gnum) ? Complex(0.0) : rational_limit(gnum, gden, t.pole, infinite);
            if (infinite || std::abs(lim - Complex(1.0)) > 1e-8) ++report.m0;
        }
    }

    report.defect = report.n - report.p - report.m - report.m0;
    if (report.defect < 0 || report.defect > report.n)
        fail("DefectOutOfRange", "computed defect violates 0 <= def <= N");
    return report;
}

SperpBasis sperp_basis(const FriedrichsModel& model, const DefectReport& report) {
    require_hplus_hypotheses(model);
    if (report.m + report.m0 > 0)
        fail("NonGenericNotImplemented", "S-perp bases for real-axis or degenerate roots are not provided");
    SperpBasis basis;
    if (report.defect == 0) return basis;

    const int n = report.n;
    const std::vector<PoleTerm>& psi_terms = model.psi().terms();
    std::vector<Complex> c_eff(psi_terms.size());
    for (size_t j = 0; j < psi_terms.size(); ++j) c_eff[j] = model.alpha() * psi_terms[j].coeff;

    // P constraint rows: sum_j c_j v_j / (mu_k - z_j)^q = 0, q = 1..p_k
    std::vector<std::pair<Complex, int>> constraint_poles;
    for (const RootClassification& rc : report.roots)
        if (!rc.at_psi_pole && rc.effective_order > 0 && rc.half_plane == HalfPlane::Lower)
            constraint_poles.push_back({rc.root, rc.effective_order});

    int rows = 0;
    for (const auto& cp : constraint_poles) rows += cp.second;

    Eigen::MatrixXcd nullvecs;
    if (rows == 0) {
        nullvecs = Eigen::MatrixXcd::Identity(n, n);
    } else {
        Eigen::MatrixXcd constraints(rows, n);
        int r = 0;
        for (const auto& [mu, order] : constraint_poles)
            for (int q = 1; q <= order; ++q, ++r)
                for (int j = 0; j < n; ++j)
                    constraints(r, j) = c_eff[static_cast<size_t>(j)] /
                                        std::pow(mu - psi_terms[static_cast<size_t>(j)].pole, q);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(constraints, Eigen::ComputeFullV);
        const double sigma1 = svd.singularValues()(0);
        int rank = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > tol::svd_rank * sigma1) ++rank;
        if (rank != rows) fail("ConstraintRankDeficient", "constraint system is not full rank P");
        nullvecs = svd.matrixV().rightCols(n - rank);
    }
    if (nullvecs.cols() != report.defect)
        fail("DefectOutOfRange", "nullspace dimension disagrees with the defect count");

    const DPlusContinuation dplus = d_plus_continuation(model);
    const RationalFn& phibar = model.phi_bar();

    // denominator roots of gbar = 2 pi i phibar * s / D_+ before cancellation
    std::vector<Root> den_roots = phibar.poles();
    if (poly::degree(dplus.num) >= 1)
        for (const Root& z : poly_roots(dplus.num)) {
            bool hit = false;
            for (Root& r : den_roots)
                if (near(r.value, z.value)) {
                    r.multiplicity += z.multiplicity;
                    hit = true;
                }
            if (!hit) den_roots.push_back(z);
        }
    // psi poles outside the D_+ tail stay in the denominator of s/D_+
    for (const PoleTerm& t : psi_terms) {
        bool in_tail = false;
        for (const PoleTerm& d : dplus.tail.terms())
            if (near(d.pole, t.pole)) in_tail = true;
        if (!in_tail) {
            bool hit = false;
            for (Root& r : den_roots)
                if (near(r.value, t.pole)) {
                    ++r.multiplicity;
                    hit = true;
                }
            if (!hit) den_roots.push_back({t.pole, 1});
        }
    }

    for (int col = 0; col < nullvecs.cols(); ++col) {
        std::vector<Complex> v(psi_terms.size());
        int jmax = 0;
        for (int j = 0; j < n; ++j)
            if (std::abs(nullvecs(j, col)) > std::abs(nullvecs(jmax, col))) jmax = j;
        for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] = nullvecs(j, col) / nullvecs(jmax, col);

        // s(mu) = sum_j c_j v_j / (mu - z_j) over the monic psi-pole product
        poly::Poly s_num;
        std::vector<Complex> all_psi_poles;
        for (const PoleTerm& t : psi_terms) all_psi_poles.push_back(t.pole);
        for (size_t j = 0; j < psi_terms.size(); ++j) {
            std::vector<Complex> rest;
            for (size_t k = 0; k < all_psi_poles.size(); ++k)
                if (k != j) rest.push_back(all_psi_poles[k]);
            s_num = poly::add(s_num, poly::scale(poly::from_roots(rest), c_eff[j] * v[j]));
        }
        // gbar = 2 pi i * phibar * s / D_+ ; the psi-pole product cancels
        // against the D_+ tail denominator where the tail kept the pole
        poly::Poly num = poly::scale(poly::multiply(phibar.numerator(), s_num), kTwoPiI);
        poly::Poly snum_keep = num;
        RationalFn gbar = RationalFn::from_quotient_known_poles(snum_keep, den_roots);
        for (const PoleTerm& t : gbar.terms())
            if (classify_halfplane(t.pole) != HalfPlane::Upper &&
                std::abs(t.coeff) > 1e-8 * gbar.coeff_scale())
                fail("MembershipViolation", "constructed S-perp representative is not in H2-");

        basis.vectors.push_back(conj_on_real(gbar));
        basis.values_at_poles.push_back(v);
    }
    return basis;
}

double membership_test(const FriedrichsModel& model, const RationalFn& g) {
    if (!g.is_l2()) fail("NotL2", "membership candidate has a real pole");
    const RationalFn gbar = conj_on_real(g);
    const RationalFn& psi_eff = model.psi_eff();
    const RationalFn& phibar = model.phi_bar();
    const RationalFn psiphibar_eff = model.psi_phibar().scaled(model.alpha());

    const RationalFn pp_psiphibar = riesz_project(psiphibar_eff, +1);
    const RationalFn pp_phibar = riesz_project(phibar, +1);
    const RationalFn pm_gbar = riesz_project(gbar, -1);
    const RationalFn pp_gbar = riesz_project(gbar, +1);
    const RationalFn hankel_pos = psi_eff.is_zero() || pm_gbar.is_zero()
                                      ? RationalFn()
                                      : riesz_project(multiply(psi_eff, pm_gbar), +1);
    const RationalFn hankel_neg = psi_eff.is_zero() || pp_gbar.is_zero()
                                      ? RationalFn()
                                      : riesz_project(multiply(psi_eff, pp_gbar), -1);

    // 64 Chebyshev nodes on [-20, 20] plus far-field points
    std::vector<double> xs;
    for (int k = 0; k < 64; ++k) xs.push_back(20.0 * std::cos(kPi * (2.0 * k + 1.0) / 128.0));
    for (double far : {50.0, 100.0, 200.0, 400.0}) {
        xs.push_back(far);
        xs.push_back(-far);
    }

    double worst = 0.0, scale = 0.0;
    for (double x : xs) {
        const Complex xp(x, 0.0);
        const Complex dplus_x = Complex(1.0) + kTwoPiI * pp_psiphibar.eval(xp);
        const Complex lhs = (dplus_x - kTwoPiI * pp_phibar.eval(xp) * psi_eff.eval(xp)) * gbar.eval(xp);
        const Complex rhs = kTwoPiI * phibar.eval(xp) * (hankel_pos.eval(xp) - hankel_neg.eval(xp));
        worst = std::max(worst, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(lhs) + std::abs(rhs));
    }
    if (scale < 1e-300) return 0.0;  // the zero function is trivially a member
    return worst / scale;
}

DefectReport defect_mixed(const FriedrichsModel& model) {
    for (const PoleTerm& t : model.phi_bar().terms())
        if (classify_halfplane(t.pole) != HalfPlane::Lower)
            fail("WrongCase", "phibar must lie in H2+ (phi poles in the upper half-plane)");
    for (const PoleTerm& t : model.psi().terms())
        if (classify_halfplane(t.pole) != HalfPlane::Lower)
            fail("WrongCase", "psi must lie in H2+ (all poles in the lower half-plane)");
    DefectReport report;  // the N,P,M,M0 bookkeeping plays no role in the mixed case
    if (std::abs(model.b() + kIPi) <= 1e-9 * kPi && !model.psi_eff().is_zero() && !model.phi().is_zero()) {
        report.infinite = true;
        report.defect = 0;
        return report;
    }
    return report;
}

std::vector<RationalFn> orthonormalize(const std::vector<RationalFn>& vectors) {
    std::vector<RationalFn> out;
    for (const RationalFn& v : vectors) {
        RationalFn e = v;
        for (const RationalFn& prev : out) e = sub(e, prev.scaled(inner_product(e, prev)));
        const double len = norm(e);
        if (len < 1e-12 * std::max(1.0, v.coeff_scale()))
            fail("ConstraintRankDeficient", "basis vectors are numerically dependent");
        out.push_back(e.scaled(1.0 / len));
    }
    return out;
}

BorderedProbe bordered_resolvent_probe(const FriedrichsModel& model, Complex lambda_star, const RationalFn& g,
                                       double radius) {
    const DefectReport report = defect_hplus(model);
    if (report.defect == 0) fail("NothingToBorder", "the detectable subspace is everything");
    const SperpBasis basis = sperp_basis(model, report);
    const std::vector<RationalFn> frame = orthonormalize(basis.vectors);

    const auto project_s = [&frame](const RationalFn& h) {
        RationalFn out = h;
        for (const RationalFn& e : frame) out = sub(out, e.scaled(inner_product(h, e)));
        return out;
    };

    const RationalFn pg = project_s(g);
    BorderedProbe probe;
    for (int k = 0; k <= 6; ++k) {
        const double dist = radius * std::pow(2.0, -k);
        double full = 0.0, bordered = 0.0;
        for (int mring = 0; mring < 8; ++mring) {
            const double theta = 2.0 * kPi * mring / 8.0 + 0.37;
            const Complex lambda = lambda_star + dist * Complex(std::cos(theta), std::sin(theta));
            full = std::max(full, norm(resolvent_apply(model, lambda, g).f));
            bordered = std::max(bordered, norm(project_s(resolvent_apply(model, lambda, pg).f)));
        }
        probe.distances.push_back(dist);
        probe.full_norms.push_back(full);
        probe.bordered_norms.push_back(bordered);
    }

    // least-squares slope of log(full) against log(1/dist)
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const int npts = static_cast<int>(probe.distances.size());
    for (int i = 0; i < npts; ++i) {
        const double x = std::log(1.0 / probe.distances[static_cast<size_t>(i)]);
        const double y = std::log(probe.full_norms[static_cast<size_t>(i)]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    probe.fitted_exponent = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
    double bmin = probe.bordered_norms[0], bmax = probe.bordered_norms[0];
    for (double b : probe.bordered_norms) {
        bmin = std::min(bmin, b);
        bmax = std::max(bmax, b);
    }
    probe.bordered_ratio = bmax / std::max(bmin, 1e-300);
    return probe;
}

}  // namespace friedrichs
