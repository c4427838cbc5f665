#pragma once

#include "friedrichs/rational.hpp"

namespace friedrichs {

enum class Closure {
    Upper,    // close the contour in the upper half-plane
    Lower,    // close in the lower half-plane
    Checked,  // evaluate both and require agreement (self-check mode)
};

/// int_R f(t)/(t - lambda) dt for non-real lambda and f in L^2.
Complex cauchy_transform(const RationalFn& f, Complex lambda, Closure closure = Closure::Checked);

/// Boundary value of the Cauchy transform at k +- i0. Satisfies the
/// Sokhotski-Plemelj jump: Upper(k) - Lower(k) = 2*pi*i*f(k).
Complex boundary_cauchy(const RationalFn& f, double k, HalfPlane side);

/// Riesz projections: sign=+1 keeps the H2+ part (poles in C-),
/// sign=-1 the H2- part (poles in C+). P+ + P- = I exactly.
RationalFn riesz_project(const RationalFn& f, int sign);

/// int_R f(t) conj(g(t)) dt via residue calculus.
Complex inner_product(const RationalFn& f, const RationalFn& g);
double norm(const RationalFn& f);

/// Trace Gamma_1 u = lim_{R->inf} int_{-R}^{R} u, via the decomposition
/// u = c_u x/(x^2+1) + v with v of degree gap >= 2.
Complex trace_gamma1(const RationalFn& u);
/// Trace Gamma_2 u = c_u = lim_{x->inf} x u(x).
Complex trace_gamma2(const RationalFn& u);

/// ||f - a g|| / ||f|| minimized over the scalar a, computed in exact term
/// arithmetic (no catastrophic cancellation for nearly collinear inputs).
double collinearity_residual(const RationalFn& f, const RationalFn& g);

}  // namespace friedrichs
