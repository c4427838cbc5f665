#pragma once

#include <functional>

#include "friedrichs/model.hpp"

namespace friedrichs {

/// Black-box access to the restricted resolvent (A_B - lambda)^{-1}|_S.
/// `resolve` evaluates the resolvent on elements of the detectable subspace;
/// `certificate` supplies a membership witness g_mu of the kernel-element
/// shape 1/(x-mu) - eta(mu) psi(x)/(x-mu) without revealing eta, psi or B.
struct RestrictedResolventProvider {
    std::function<DomainElement(Complex lambda, const RationalFn& g)> resolve;
    std::function<RationalFn(Complex mu)> certificate;
};

/// Wraps a concrete model behind the provider interface; the reconstruction
/// routines only ever see the two callables.
RestrictedResolventProvider make_hidden_provider(const FriedrichsModel& model);

struct ReconstructionResult {
    RationalFn psi_recovered;  // proportional to alpha * psi, leading coefficient 1
    Complex b_recovered = 0.0;
    std::vector<std::pair<Complex, Complex>> phihat_over_d;  // (lambda, kappa * phihat/D)
    std::vector<std::pair<Complex, Complex>> m_assembled;    // (lambda, M_B(lambda))
    std::vector<Complex> skipped;                            // grid points refused by the resolvent
};

/// Step 1: psi up to a scalar from one resolvent evaluation, validated at a
/// second spectral point.
RationalFn recover_psi(const RestrictedResolventProvider& provider, Complex lambda1, Complex lambda2,
                       const RationalFn& g);

/// Step 2: B from the large-|Im lambda| asymptotics of c_f along probes
/// lambda = -mu; Richardson extrapolation over a geometric mu sequence, both
/// half-plane signs attempted.
Complex recover_b(const RestrictedResolventProvider& provider, int sequence_length = 7,
                  double first_height = 10.0);

/// Step 3: the gauge-consistent table of phihat/D over the grid, and M_B
/// assembled from it.
ReconstructionResult recover_phihat_over_d(const RestrictedResolventProvider& provider, Complex b_hat,
                                           const RationalFn& psi_rec, const std::vector<Complex>& grid);

/// Default lambda grid {+-i, +-2i, +-4i} x {0, 1, -1}.
std::vector<Complex> default_reconstruction_grid();

/// End-to-end driver.
ReconstructionResult reconstruct_m(const RestrictedResolventProvider& provider);

}  // namespace friedrichs
