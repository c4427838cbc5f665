#pragma once

#include "friedrichs/model.hpp"

namespace friedrichs {

struct RootClassification {
    Complex root;
    int multiplicity = 1;
    HalfPlane half_plane = HalfPlane::Lower;
    bool cancelled = false;    // reduced by a zero of phibar
    int effective_order = 1;   // multiplicity minus cancellation
    bool at_psi_pole = false;  // excluded from P (handled via M0)
};

/// def(S) = N - P - M - M0 bookkeeping for the H2+ x H2+ case.
struct DefectReport {
    int n = 0, p = 0, m = 0, m0 = 0;
    int defect = 0;
    bool infinite = false;  // only defect_mixed at B = -i pi sets this
    std::vector<RootClassification> roots;
};

struct SperpBasis {
    std::vector<RationalFn> vectors;  // representatives g with conj_on_real(g) in H2-
    std::vector<std::vector<Complex>> values_at_poles;  // per vector, gbar(z_j)
};

/// Defect of the detectable subspace for phi, psi in H2+ with simple distinct
/// psi-poles: classifies the zeros of the continued determinant D_+ as poles
/// of phibar/D_+ in the closed lower half-plane.
DefectReport defect_hplus(const FriedrichsModel& model);

/// Explicit S-perp basis in the generic case M = M0 = 0: nullspace of the
/// P x N constraint system assembled into rational representatives.
SperpBasis sperp_basis(const FriedrichsModel& model, const DefectReport& report);

/// Relative sup-residual of the pointwise S-perp membership identity over
/// 64 Chebyshev nodes on [-20, 20] plus far-field points; membership holds
/// below 1e-8.
double membership_test(const FriedrichsModel& model, const RationalFn& g);

/// phibar, psi in H2+: defect 0 unless B = -i pi, which yields an infinite
/// defect marker.
DefectReport defect_mixed(const FriedrichsModel& model);

struct BorderedProbe {
    std::vector<double> distances;
    std::vector<double> full_norms;      // max over the ring at each distance
    std::vector<double> bordered_norms;  // same for P_S (A_B-lambda)^{-1} P_S
    double fitted_exponent = 0.0;        // growth of full_norms in 1/dist
    double bordered_ratio = 0.0;         // max/min of bordered_norms
};

/// Ring probe of resolvent blow-up at an eigenvalue lambda_star versus the
/// bordered resolvent compressed to the detectable subspace.
BorderedProbe bordered_resolvent_probe(const FriedrichsModel& model, Complex lambda_star, const RationalFn& g,
                                       double radius);

/// Orthonormalization of the S-perp basis under the L^2 inner product.
std::vector<RationalFn> orthonormalize(const std::vector<RationalFn>& vectors);

}  // namespace friedrichs
