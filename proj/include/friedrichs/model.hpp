#pragma once

#include "friedrichs/transforms.hpp"

namespace friedrichs {

/// The rank-one Friedrichs model (A f)(x) = x f(x) + <f, phi> alpha psi(x)
/// with boundary parameter B. The coupling alpha is stored separately from
/// psi so parameter sweeps do not rebuild partial fractions.
class FriedrichsModel {
public:
    FriedrichsModel(RationalFn phi, RationalFn psi, Complex b, Complex alpha = Complex(1.0));

    const RationalFn& phi() const { return phi_; }
    const RationalFn& psi() const { return psi_; }
    Complex b() const { return b_; }
    Complex alpha() const { return alpha_; }

    const RationalFn& phi_bar() const { return phi_bar_; }    // conj_on_real(phi)
    const RationalFn& psi_eff() const { return psi_eff_; }    // alpha * psi
    const RationalFn& psi_phibar() const { return psi_phibar_; }  // psi * phi_bar (unscaled)

    /// B within tolerance of +-i*pi (Riesz-projection degeneracy).
    bool degenerate_b() const { return degenerate_b_; }

    FriedrichsModel with_alpha(Complex alpha) const { return {phi_, psi_, b_, alpha}; }

private:
    RationalFn phi_, psi_, phi_bar_, psi_eff_, psi_phibar_;
    Complex b_, alpha_;
    bool degenerate_b_ = false;
};

/// Element of Dom(A*): f with x f(x) - c_f in L^2, Gamma_2 f = c_f.
struct DomainElement {
    RationalFn f;
    Complex c_f = 0.0;
};

struct MValue {
    Complex lambda;
    Complex value;    // M_B(lambda)
    Complex d_value;  // D(lambda)
    HalfPlane half_plane = HalfPlane::Upper;
};

/// Meromorphic continuation of D restricted to C+, valid on all of C:
/// D_+(mu) = 1 + sum_j r_j/(mu - z_j), r_j = 2 pi i alpha c_j phibar(z_j).
struct DPlusContinuation {
    RationalFn tail;     // sum of the r_j/(mu - z_j) terms
    poly::Poly num, den; // monic-denominator cache for root finding

    Complex eval(Complex mu) const { return Complex(1.0) + tail.eval(mu); }
    std::vector<Root> zeros() const;
};

/// D(lambda) = 1 + alpha * int psi phibar / (x - lambda) dx, lambda off R.
Complex d_function(const FriedrichsModel& model, Complex lambda);
/// Boundary values D(k +- i0).
Complex d_boundary(const FriedrichsModel& model, double k, HalfPlane side);
/// Scale-aware zero-detection threshold for D near the continuation poles.
double d_zero_tol(const FriedrichsModel& model, Complex lambda);

DPlusContinuation d_plus_continuation(const FriedrichsModel& model);

MValue m_function(const FriedrichsModel& model, Complex lambda);

/// Normalized kernel element of (Atilde* - lambda) with (Gamma_1 - B Gamma_2) f = 1.
DomainElement solution_element(const FriedrichsModel& model, Complex lambda);

/// f = (A_B - lambda)^{-1} g.
DomainElement resolvent_apply(const FriedrichsModel& model, Complex lambda, const RationalFn& g);

/// (Atilde* - lambda) u as a rational function (the L^2 part; the split-off
/// constant must cancel against c_u, which is checked).
RationalFn adjoint_tilde_apply_minus(const FriedrichsModel& model, const DomainElement& u, Complex lambda);

/// Residual of the abstract Green formula
/// <A* u, v> - <u, Atilde* v> - (Gamma_1 u conj(Gamma_2 v) - Gamma_2 u conj(Gamma_1 v)).
Complex greens_check(const FriedrichsModel& model, const DomainElement& u, const DomainElement& v);
/// Magnitude scale of the four Green-formula terms (for relative residuals).
double greens_scale(const FriedrichsModel& model, const DomainElement& u, const DomainElement& v);

}  // namespace friedrichs
