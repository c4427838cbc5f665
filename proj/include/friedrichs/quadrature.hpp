#pragma once

#include <functional>

#include "friedrichs/types.hpp"

namespace friedrichs {

/// Adaptive 15-point Gauss-Kronrod on [a, b] for complex-valued integrands.
Complex integrate_interval(const std::function<Complex(double)>& f, double a, double b,
                           double abs_tol = tol::quad_abs, double rel_tol = tol::quad_rel);

/// Integral over the whole real line via the substitution t = tan(theta).
Complex integrate_real_line(const std::function<Complex(double)>& f, double abs_tol = tol::quad_abs,
                            double rel_tol = tol::quad_rel);

}  // namespace friedrichs
