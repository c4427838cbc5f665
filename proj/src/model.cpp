#include "friedrichs/model.hpp"

#include <cmath>
#include <limits>

namespace friedrichs {

namespace {
const Complex kTwoPiI(0.0, 2.0 * kPi);
const Complex kIPi(0.0, kPi);
}  // namespace

FriedrichsModel::FriedrichsModel(RationalFn phi, RationalFn psi, Complex b, Complex alpha)
    : phi_(std::move(phi)), psi_(std::move(psi)), b_(b), alpha_(alpha) {
    require_finite(b_, "B");
    require_finite(alpha_, "alpha");
    if (!phi_.is_l2()) fail("NotL2", "phi has a pole on the real axis");
    if (!psi_.is_l2()) fail("NotL2", "psi has a pole on the real axis");
    phi_bar_ = conj_on_real(phi_);
    psi_eff_ = psi_.scaled(alpha_);
    psi_phibar_ = multiply(psi_, phi_bar_);
    degenerate_b_ = std::abs(b_ - kIPi) <= 1e-9 * kPi || std::abs(b_ + kIPi) <= 1e-9 * kPi;
}

Complex d_function(const FriedrichsModel& model, Complex lambda) {
    if (classify_halfplane(lambda) == HalfPlane::Real)
        fail("BoundaryEvaluationRequiresSide", "D on the real axis requires a side; use d_boundary");
    if (model.psi_phibar().is_zero()) return 1.0;
    return Complex(1.0) + model.alpha() * cauchy_transform(model.psi_phibar(), lambda);
}

Complex d_boundary(const FriedrichsModel& model, double k, HalfPlane side) {
    if (model.psi_phibar().is_zero()) return 1.0;
    return Complex(1.0) + model.alpha() * boundary_cauchy(model.psi_phibar(), k, side);
}

double d_zero_tol(const FriedrichsModel& model, Complex lambda) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const PoleTerm& t : model.psi().terms()) nearest = std::min(nearest, std::abs(lambda - t.pole));
    if (!std::isfinite(nearest)) return 1e-10;
    return 1e-10 * (1.0 + 1.0 / std::max(nearest, 1e-30));
}

std::vector<Root> DPlusContinuation::zeros() const {
    if (poly::degree(num) < 1) return {};
    return poly_roots(num);
}

DPlusContinuation d_plus_continuation(const FriedrichsModel& model) {
    // needs psi with simple poles in C- and phi in H2+ (poles in C-)
    for (const PoleTerm& t : model.phi().terms())
        if (classify_halfplane(t.pole) != HalfPlane::Lower)
            fail("ContinuationUnavailable", "phi must lie in H2+ (all poles in the lower half-plane)");
    std::vector<PoleTerm> tail;
    double rscale = 0.0;
    std::vector<Complex> kept_poles;
    for (const PoleTerm& t : model.psi().terms()) {
        if (classify_halfplane(t.pole) != HalfPlane::Lower)
            fail("ContinuationUnavailable", "psi must lie in H2+ (all poles in the lower half-plane)");
        if (t.order != 1) fail("ContinuationUnavailable", "psi poles must be simple");
        const Complex r = kTwoPiI * model.alpha() * t.coeff * model.phi_bar().eval(t.pole);
        rscale = std::max(rscale, std::abs(r));
        tail.push_back({t.pole, 1, r});
    }
    std::vector<PoleTerm> significant;
    for (const PoleTerm& t : tail)
        if (std::abs(t.coeff) > 1e-14 * rscale) {
            significant.push_back(t);
            kept_poles.push_back(t.pole);
        }

    DPlusContinuation out;
    out.tail = RationalFn::from_terms(significant);
    // numerator of 1 + tail over the monic pole product
    out.den = poly::from_roots(kept_poles);
    poly::Poly num = out.den;
    for (const PoleTerm& t : out.tail.terms()) {
        std::vector<Complex> rest;
        for (Complex p : kept_poles)
            if (p != t.pole) rest.push_back(p);
        num = poly::add(num, poly::scale(poly::from_roots(rest), t.coeff));
    }
    out.num = num;
    return out;
}

MValue m_function(const FriedrichsModel& model, Complex lambda) {
    const HalfPlane hp = classify_halfplane(lambda);
    if (hp == HalfPlane::Real) fail("BoundaryEvaluationRequiresSide", "M is defined off the real axis");
    const Complex d = d_function(model, lambda);
    if (std::abs(d) <= d_zero_tol(model, lambda)) fail("DVanishes", "D(lambda) vanishes");
    const Complex phihat = model.phi_bar().is_zero() ? Complex(0.0) : cauchy_transform(model.phi_bar(), lambda);
    const Complex psihat = model.psi_eff().is_zero() ? Complex(0.0) : cauchy_transform(model.psi_eff(), lambda);
    const double s = sign_im(lambda);
    const Complex bracket = kIPi * s - phihat * psihat / d - model.b();
    const double scale = kPi + std::abs(phihat * psihat / d) + std::abs(model.b());
    if (std::abs(bracket) <= 1e-12 * scale) fail("MPole", "eigenvalue at lambda: M-function bracket vanishes");
    MValue out;
    out.lambda = lambda;
    out.value = Complex(1.0) / bracket;
    out.d_value = d;
    out.half_plane = hp;
    return out;
}

DomainElement solution_element(const FriedrichsModel& model, Complex lambda) {
    const MValue m = m_function(model, lambda);
    const Complex phihat = model.phi_bar().is_zero() ? Complex(0.0) : cauchy_transform(model.phi_bar(), lambda);
    RationalFn f = RationalFn::from_terms({{lambda, 1, Complex(1.0)}});
    if (!model.psi_eff().is_zero())
        f = add(f, model.psi_eff().divided_by_linear(lambda).scaled(-phihat / m.d_value));
    return {f.scaled(m.value), m.value};
}

DomainElement resolvent_apply(const FriedrichsModel& model, Complex lambda, const RationalFn& g) {
    if (!g.is_l2()) fail("NotL2", "resolvent input has a pole on the real axis");
    const MValue m = m_function(model, lambda);
    const Complex d = m.d_value;
    const Complex ghat = g.is_zero() ? Complex(0.0) : cauchy_transform(g, lambda);
    const Complex phihat = model.phi_bar().is_zero() ? Complex(0.0) : cauchy_transform(model.phi_bar(), lambda);
    const Complex psihat = model.psi_eff().is_zero() ? Complex(0.0) : cauchy_transform(model.psi_eff(), lambda);
    Complex q1 = 0.0;  // <g/(t-lambda), phi>
    if (!g.is_zero() && !model.phi_bar().is_zero())
        q1 = cauchy_transform(multiply(g, model.phi_bar()), lambda);

    const Complex c_f = m.value * (-ghat + q1 * psihat / d);

    RationalFn f;
    if (!g.is_zero()) f = g.divided_by_linear(lambda);
    if (!model.psi_eff().is_zero())
        f = add(f, model.psi_eff().divided_by_linear(lambda).scaled(-(q1 + c_f * phihat) / d));
    f = add(f, RationalFn::from_terms({{lambda, 1, c_f}}));
    return {f, c_f};
}

RationalFn adjoint_tilde_apply_minus(const FriedrichsModel& model, const DomainElement& u, Complex lambda) {
    Complex constant;
    RationalFn xu = u.f.multiplied_by_linear(lambda, &constant);
    const double scale = std::max(1.0, u.f.coeff_scale());
    if (std::abs(constant - u.c_f) > 1e-8 * std::max(scale, std::abs(u.c_f)))
        fail("NotInDomain", "declared c_f does not match lim x f(x)");
    if (model.psi_eff().is_zero() || model.phi().is_zero()) return xu;
    return add(xu, model.psi_eff().scaled(inner_product(u.f, model.phi())));
}

Complex greens_check(const FriedrichsModel& model, const DomainElement& u, const DomainElement& v) {
    // A* u = x u - c_u + <u, psi_eff> phi ; Atilde* v = x v - c_v + <v, phi> psi_eff
    Complex cu;
    RationalFn astar_u = u.f.multiplied_by_linear(0.0, &cu);
    if (std::abs(cu - u.c_f) > 1e-8 * std::max(1.0, std::abs(u.c_f) + u.f.coeff_scale()))
        fail("NotInDomain", "u is not in Dom(A*) with the declared trace");
    if (!model.phi().is_zero() && !model.psi_eff().is_zero())
        astar_u = add(astar_u, model.phi().scaled(inner_product(u.f, model.psi_eff())));

    Complex cv;
    RationalFn atildestar_v = v.f.multiplied_by_linear(0.0, &cv);
    if (std::abs(cv - v.c_f) > 1e-8 * std::max(1.0, std::abs(v.c_f) + v.f.coeff_scale()))
        fail("NotInDomain", "v is not in Dom(Atilde*) with the declared trace");
    if (!model.phi().is_zero() && !model.psi_eff().is_zero())
        atildestar_v = add(atildestar_v, model.psi_eff().scaled(inner_product(v.f, model.phi())));

    const Complex lhs = inner_product(astar_u, v.f) - inner_product(u.f, atildestar_v);
    const Complex rhs = trace_gamma1(u.f) * std::conj(trace_gamma2(v.f)) -
                        trace_gamma2(u.f) * std::conj(trace_gamma1(v.f));
    return lhs - rhs;
}

double greens_scale(const FriedrichsModel& model, const DomainElement& u, const DomainElement& v) {
    Complex cu, cv;
    RationalFn astar_u = u.f.multiplied_by_linear(0.0, &cu);
    if (!model.phi().is_zero() && !model.psi_eff().is_zero())
        astar_u = add(astar_u, model.phi().scaled(inner_product(u.f, model.psi_eff())));
    RationalFn atildestar_v = v.f.multiplied_by_linear(0.0, &cv);
    if (!model.phi().is_zero() && !model.psi_eff().is_zero())
        atildestar_v = add(atildestar_v, model.psi_eff().scaled(inner_product(v.f, model.phi())));
    return std::abs(inner_product(astar_u, v.f)) + std::abs(inner_product(u.f, atildestar_v)) +
           std::abs(trace_gamma1(u.f) * std::conj(trace_gamma2(v.f))) +
           std::abs(trace_gamma2(u.f) * std::conj(trace_gamma1(v.f)));
}

}  // namespace friedrichs
