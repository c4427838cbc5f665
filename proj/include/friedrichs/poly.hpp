#pragma once

#include <vector>

#include "friedrichs/types.hpp"

namespace friedrichs::poly {

/// Dense complex polynomial, coefficients in ascending degree order.
using Poly = std::vector<Complex>;

int degree(const Poly& p, double drop_tol = 0.0);
Poly trimmed(const Poly& p);
/// Drops trailing coefficients below rel * max|c_k|; a vanishing leading
/// coefficient stands for a root escaped to infinity.
Poly trimmed_relative(const Poly& p, double rel = 1e-12);
bool is_zero(const Poly& p);

Complex eval(const Poly& p, Complex x);
/// Max_k |c_k| |x|^k — the natural scale for residual tests at x.
double eval_scale(const Poly& p, Complex x);

Poly derivative(const Poly& p);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly scale(const Poly& p, Complex s);
Poly multiply(const Poly& a, const Poly& b);
Poly conj_coeffs(const Poly& p);

/// Monic polynomial with the given roots (repeated roots appear repeatedly).
Poly from_roots(const std::vector<Complex>& roots);

/// p(x) = (x - a) q(x) + r; returns q, sets r.
Poly deflate(const Poly& p, Complex a, Complex* remainder = nullptr);

/// Taylor coefficients of p around a: p(x) = sum_k t_k (x-a)^k.
Poly taylor_at(const Poly& p, Complex a, int count);

/// First `count` coefficients of the power series a(s)/b(s), b(0) != 0.
Poly series_divide(const Poly& a, const Poly& b, int count);

}  // namespace friedrichs::poly
