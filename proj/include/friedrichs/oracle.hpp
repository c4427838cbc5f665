#pragma once

#include "friedrichs/detectable.hpp"

namespace friedrichs {

/// Finite-rank reduction of I + K (M - mu)^{-1}: the independent defect
/// oracle. Matrix entries are adaptive-quadrature integrals over R; no
/// residue algebra enters this path.
struct FiniteRankSystem {
    Complex mu;                            // 1/(2 pi i alpha)
    std::vector<RationalFn> basis;         // range of K: phibar/(x - pole_m)
    std::vector<std::vector<Complex>> gram;  // I + G
    double essrange_margin = 0.0;
};

/// Multiplication symbol M(k) = (P+ phibar)(k) psi(k) - P+(psi phibar)(k),
/// built from the unscaled psi (the coupling enters through mu).
RationalFn mult_symbol(const FriedrichsModel& model);

/// Distance from mu to the closure of M(R) union {0}, located through the
/// real critical points of |M(t) - mu|^2.
double essential_range_margin(const RationalFn& symbol, Complex mu);

FiniteRankSystem build_system(const FriedrichsModel& model, Complex alpha);

int nullity(const FiniteRankSystem& system);
double gram_cond(const FiniteRankSystem& system);
std::vector<double> gram_singular_values(const FiniteRankSystem& system);

struct OracleComparison {
    int analytic_defect = 0;
    int oracle_nullity = 0;
    double margin = 0.0;
    double entries_cond = 0.0;
};

/// Runs both routes at the model's own coupling and reports the comparison.
OracleComparison oracle_compare(const FriedrichsModel& model);

/// Discrete residual of the eigenvalue identity (L - 1/(2 pi i alpha)) gbar = 0
/// with the Riesz projections realized by an FFT Hilbert transform on a uniform
/// grid over [-cutoff, cutoff]; grid must be a power of two >= 2^12.
double grid_membership_residual(const FriedrichsModel& model, const RationalFn& g, int grid, double cutoff);

/// Grid realization of L applied to samples (test hook for the K-splitting
/// formula): returns L u - for rational u sampled on the grid.
std::vector<Complex> grid_l_apply(const FriedrichsModel& model, const std::vector<Complex>& samples,
                                  double cutoff);

}  // namespace friedrichs
