#include "friedrichs/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace friedrichs {

namespace {

// Parlett–Reinsch balancing: diagonal similarity with powers of 2.
void balance(Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            const double s = c + r;
            while (c < r / 2.0) { c *= 2.0; r /= 2.0; f *= 2.0; }
            while (c > r * 2.0) { c /= 2.0; r *= 2.0; f /= 2.0; }
            if (c + r < 0.95 * s) {
                converged = false;
                a.col(i) *= f;
                a.row(i) /= f;
            }
        }
    }
}

Complex newton_polish(const poly::Poly& p, const poly::Poly& dp, Complex r) {
    const Complex pr = poly::eval(p, r);
    const Complex dpr = poly::eval(dp, r);
    if (std::abs(dpr) < 1e-300) return r;
    const Complex step = pr / dpr;
    const Complex cand = r - step;
    if (std::abs(poly::eval(p, cand)) <= std::abs(pr)) return cand;
    return r;
}

}  // namespace

std::vector<Root> poly_roots(const poly::Poly& coeffs) {
    poly::Poly p = poly::trimmed(coeffs);
    if (p.empty()) fail("ZeroPolynomial", "cannot take roots of the zero polynomial");
    const int n = static_cast<int>(p.size()) - 1;
    if (n == 0) return {};

    // monic companion matrix
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p[static_cast<size_t>(i)] / p.back();
    balance(comp);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) fail("RootSolverFailure", "companion eigenvalue iteration failed");

    const poly::Poly dp = poly::derivative(p);
    std::vector<Complex> raw(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) raw[static_cast<size_t>(i)] = newton_polish(p, dp, solver.eigenvalues()(i));

    std::sort(raw.begin(), raw.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    // cluster-merge with summed multiplicity
    std::vector<Root> out;
    for (Complex r : raw) {
        bool merged = false;
        for (Root& existing : out) {
            const double cut = tol::pole_cluster * std::max({1.0, std::abs(r), std::abs(existing.value)});
            if (std::abs(r - existing.value) <= cut) {
                existing.value = (existing.value * static_cast<double>(existing.multiplicity) + r) /
                                 static_cast<double>(existing.multiplicity + 1);
                ++existing.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({r, 1});
    }

    for (const Root& r : out) {
        const double scale = std::max(poly::eval_scale(p, r.value), 1e-300);
        if (std::abs(poly::eval(p, r.value)) > tol::root_residual * scale)
            fail("RootResidual", "polished root fails the residual contract");
    }
    return out;
}

}  // namespace friedrichs
