#include "friedrichs/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "friedrichs/parallel.hpp"
#include "friedrichs/quadrature.hpp"

namespace friedrichs {

namespace {

const Complex kTwoPiI(0.0, 2.0 * kPi);

Eigen::MatrixXcd to_eigen(const std::vector<std::vector<Complex>>& m) {
    const int n = static_cast<int>(m.size());
    Eigen::MatrixXcd out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return out;
}

// in-place radix-2 FFT; n must be a power of two
void fft(std::vector<Complex>& a, bool inverse) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const Complex wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            Complex w(1.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const Complex u = a[i + j];
                const Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse)
        for (Complex& x : a) x /= static_cast<double>(n);
}

// Riesz projection on the grid: keep positive frequencies (H2+ has Fourier
// support on the positive line under e^{-i xi x}); DC and Nyquist split evenly.
std::vector<Complex> grid_project(const std::vector<Complex>& samples, int sign) {
    std::vector<Complex> a = samples;
    fft(a, false);
    const size_t n = a.size();
    for (size_t m = 0; m < n; ++m) {
        double keep;
        if (m == 0 || m == n / 2)
            keep = 0.5;
        else if (m < n / 2)
            keep = sign == 1 ? 1.0 : 0.0;
        else
            keep = sign == 1 ? 0.0 : 1.0;
        a[m] *= keep;
    }
    fft(a, true);
    return a;
}

}  // namespace

RationalFn mult_symbol(const FriedrichsModel& model) {
    if (model.psi().is_zero() || model.phi().is_zero()) return RationalFn();
    const RationalFn pp_phibar = riesz_project(model.phi_bar(), +1);
    RationalFn first;
    if (!pp_phibar.is_zero()) first = multiply(pp_phibar, model.psi());
    return sub(first, riesz_project(model.psi_phibar(), +1));
}

double essential_range_margin(const RationalFn& symbol, Complex mu) {
    double margin = std::abs(mu);  // M vanishes at infinity, so 0 is in the closure
    if (symbol.is_zero()) return margin;
    // |M(t) - mu|^2 = F(t)/Q(t) with real-coefficient F, Q; minimize over the
    // real critical points of the derivative.
    const poly::Poly shifted =
        poly::sub(symbol.numerator(), poly::scale(symbol.denominator(), mu));
    const poly::Poly f = poly::multiply(shifted, poly::conj_coeffs(shifted));
    const poly::Poly q = poly::multiply(symbol.denominator(), poly::conj_coeffs(symbol.denominator()));
    const poly::Poly crit =
        poly::sub(poly::multiply(poly::derivative(f), q), poly::multiply(f, poly::derivative(q)));
    if (poly::degree(crit) >= 1) {
        for (const Root& r : poly_roots(crit)) {
            if (classify_halfplane(r.value, 1e-7) != HalfPlane::Real) continue;
            const double t = r.value.real();
            margin = std::min(margin, std::abs(symbol.eval_cached(Complex(t, 0.0)) - mu));
        }
    }
    return margin;
}

FiniteRankSystem build_system(const FriedrichsModel& model, Complex alpha) {
    if (alpha == Complex(0.0)) fail("WrongCase", "the oracle reduction needs a nonzero coupling");
    for (const PoleTerm& t : model.psi().terms())
        if (t.order != 1) fail("UnsupportedPsiPole", "psi poles must be simple");

    FiniteRankSystem system;
    system.mu = Complex(1.0) / (kTwoPiI * alpha);
    const RationalFn symbol = mult_symbol(model);
    system.essrange_margin = essential_range_margin(symbol, system.mu);
    if (system.essrange_margin < tol::ess_margin_min)
        fail("NearEssentialRange", "mu is too close to the essential range of the symbol");

    if (model.psi().is_zero() || model.phi().is_zero()) return system;  // K = 0

    const std::vector<PoleTerm>& psi_terms = model.psi().terms();
    const size_t n = psi_terms.size();
    for (const PoleTerm& t : psi_terms) system.basis.push_back(model.phi_bar().divided_by_linear(t.pole));

    const Complex mu = system.mu;
    system.gram.assign(n, std::vector<Complex>(n, Complex(0.0)));
    // entries are independent integrals: parallel map, deterministic placement
    parallel_for(n * n, [&](size_t flat) {
        const size_t j = flat / n, m = flat % n;
        const RationalFn& b = system.basis[m];
        const Complex pole = psi_terms[j].pole;
        const auto integrand = [&](double t) {
            const Complex x(t, 0.0);
            return b.eval_cached(x) / ((symbol.eval_cached(x) - mu) * (x - pole));
        };
        // one order tighter than the public quadrature default so the
        // 1e-8 residue-route agreement contract holds with headroom
        const Complex integral = integrate_real_line(integrand, 0.1 * tol::quad_abs, 0.1 * tol::quad_rel);
        system.gram[j][m] = -psi_terms[j].coeff / kTwoPiI * integral;
    });
    for (size_t j = 0; j < n; ++j) system.gram[j][j] += 1.0;
    return system;
}

std::vector<double> gram_singular_values(const FiniteRankSystem& system) {
    if (system.gram.empty()) return {};
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(system.gram));
    std::vector<double> out;
    for (int i = 0; i < svd.singularValues().size(); ++i) out.push_back(svd.singularValues()(i));
    return out;
}

int nullity(const FiniteRankSystem& system) {
    const std::vector<double> sigma = gram_singular_values(system);
    if (sigma.empty()) return 0;
    // the identity inside I + G pins the natural scale at >= 1 even when the
    // whole matrix cancels to zero
    const double scale = std::max(sigma.front(), 1.0);
    int count = 0;
    for (double s : sigma)
        if (s <= tol::nullity * scale) ++count;
    return count;
}

double gram_cond(const FiniteRankSystem& system) {
    const std::vector<double> sigma = gram_singular_values(system);
    if (sigma.empty()) return 1.0;
    return sigma.front() / std::max(sigma.back(), 1e-300);
}

OracleComparison oracle_compare(const FriedrichsModel& model) {
    OracleComparison out;
    const FiniteRankSystem system = build_system(model, model.alpha());
    out.oracle_nullity = nullity(system);
    out.margin = system.essrange_margin;
    out.entries_cond = gram_cond(system);
    out.analytic_defect = defect_hplus(model).defect;
    return out;
}

std::vector<Complex> grid_l_apply(const FriedrichsModel& model, const std::vector<Complex>& samples,
                                  double cutoff) {
    const size_t n = samples.size();
    const RationalFn mult_part = sub(multiply(riesz_project(model.phi_bar(), +1), model.psi()),
                                     riesz_project(model.psi_phibar(), +1));

    std::vector<Complex> psi_vals(n), phibar_vals(n), mult_vals(n);
    for (size_t k = 0; k < n; ++k) {
        const Complex x(-cutoff + 2.0 * cutoff * static_cast<double>(k) / static_cast<double>(n), 0.0);
        psi_vals[k] = model.psi().eval_cached(x);
        phibar_vals[k] = model.phi_bar().eval_cached(x);
        mult_vals[k] = mult_part.is_zero() ? Complex(0.0) : mult_part.eval_cached(x);
    }

    const std::vector<Complex> pm_u = grid_project(samples, -1);
    std::vector<Complex> psi_u(n), psi_pm_u(n);
    for (size_t k = 0; k < n; ++k) {
        psi_u[k] = psi_vals[k] * samples[k];
        psi_pm_u[k] = psi_vals[k] * pm_u[k];
    }
    const std::vector<Complex> pm_psi_u = grid_project(psi_u, -1);

    std::vector<Complex> out(n);
    for (size_t k = 0; k < n; ++k)
        out[k] = mult_vals[k] * samples[k] + phibar_vals[k] * (psi_pm_u[k] - pm_psi_u[k]);
    return out;
}

double grid_membership_residual(const FriedrichsModel& model, const RationalFn& g, int grid, double cutoff) {
    if (grid < (1 << 12) || (grid & (grid - 1)) != 0)
        fail("BadGrid", "grid must be a power of two >= 4096");
    if (g.is_zero()) return 0.0;
    const RationalFn gbar = conj_on_real(g);
    const size_t n = static_cast<size_t>(grid);
    std::vector<Complex> samples(n);
    for (size_t k = 0; k < n; ++k) {
        const Complex x(-cutoff + 2.0 * cutoff * static_cast<double>(k) / static_cast<double>(n), 0.0);
        samples[k] = gbar.eval_cached(x);
    }
    const std::vector<Complex> lu = grid_l_apply(model, samples, cutoff);
    const Complex mu = Complex(1.0) / (kTwoPiI * model.alpha());

    // discrete L2 over the core window |t| <= cutoff/2 to keep the
    // periodization error of the FFT projections out of the verdict
    double num = 0.0, den = 0.0;
    for (size_t k = n / 4; k < 3 * n / 4; ++k) {
        num += std::norm(lu[k] - mu * samples[k]);
        den += std::norm(samples[k]);
    }
    if (den < 1e-300) return 0.0;
    return std::sqrt(num / den) / std::abs(mu);
}

}  // namespace friedrichs
