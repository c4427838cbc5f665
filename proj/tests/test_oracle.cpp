#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "friedrichs/oracle.hpp"
#include "friedrichs/quadrature.hpp"
#include "test_support.hpp"

using namespace friedrichs;

namespace {
const Complex kI(0.0, 1.0);
const Complex kTwoPiI(0.0, 2.0 * kPi);

FriedrichsModel example58(Complex alpha) { return testing::rank_one_model(-kI, kI, alpha, Complex(1.0)); }

std::vector<double> system_sigmas(const FriedrichsModel& model) {
    return gram_singular_values(build_system(model, model.alpha()));
}

double model_margin(const FriedrichsModel& model) {
    return essential_range_margin(mult_symbol(model), Complex(1.0) / (kTwoPiI * model.alpha()));
}

// residue-route value of int b(t) / ((M(t)-mu)(t-pole)) dt, test-only.
// The denominator roots are assembled from the known pole structure: the
// repeated factor at `pole` must not be rediscovered by the root finder.
Complex entry_integral_by_residues(const RationalFn& b, const RationalFn& symbol, Complex mu, Complex pole) {
    using poly::Poly;
    const Poly shifted = poly::trimmed(poly::sub(symbol.numerator(), poly::scale(symbol.denominator(), mu)));
    const Poly num = poly::multiply(b.numerator(), symbol.denominator());
    std::vector<Root> den_roots = b.poles();
    const auto add_root = [&den_roots](Complex value, int mult) {
        for (Root& r : den_roots)
            if (std::abs(r.value - value) <= tol::pole_cluster * std::max({1.0, std::abs(r.value), std::abs(value)})) {
                r.multiplicity += mult;
                return;
            }
        den_roots.push_back({value, mult});
    };
    if (poly::degree(shifted) >= 1)
        for (const Root& r : poly_roots(shifted)) add_root(r.value, r.multiplicity);
    add_root(pole, 1);
    const RationalFn integrand = RationalFn::from_quotient_known_poles(num, den_roots, shifted.back());
    Complex sum = 0.0;
    for (const PoleTerm& t : integrand.terms())
        if (t.order == 1 && classify_halfplane(t.pole) == HalfPlane::Upper) sum += t.coeff;
    return kTwoPiI * sum;
}

// K u by the residue-splitting formula for simple psi poles
RationalFn k_apply_residue(const FriedrichsModel& model, const RationalFn& u) {
    RationalFn out;
    const RationalFn pm_u = riesz_project(u, -1);
    const RationalFn pp_u = riesz_project(u, +1);
    for (const PoleTerm& t : model.psi().terms()) {
        if (classify_halfplane(t.pole) == HalfPlane::Lower) {
            const Complex coeff = t.coeff * pm_u.eval(t.pole);
            out = add(out, model.phi_bar().divided_by_linear(t.pole).scaled(coeff));
        } else {
            const Complex coeff = t.coeff * pp_u.eval(t.pole);
            out = sub(out, model.phi_bar().divided_by_linear(t.pole).scaled(coeff));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("multiplication symbol of the reduced operator") {
    // psi = 0 gives the zero symbol
    CHECK(mult_symbol(FriedrichsModel(RationalFn::from_terms({{-kI, 1, Complex(1.0)}}), RationalFn(),
                                      Complex(0.0)))
              .is_zero());

    // phi, psi in H2+: P+ phibar = 0, so the symbol is -P+(psi phibar)
    std::mt19937 rng(801);
    const RationalFn psi = testing::random_hardy_fn(rng, 2, HalfPlane::Lower);
    const RationalFn phi = testing::random_hardy_fn(rng, 1, HalfPlane::Lower);
    const FriedrichsModel model(phi, psi, Complex(0.0));
    const RationalFn symbol = mult_symbol(model);
    const RationalFn expected = riesz_project(model.psi_phibar(), +1).scaled(-1.0);
    CHECK(collinearity_residual(symbol, expected) < 1e-12);
    // the symbol vanishes at infinity
    CHECK(std::abs(symbol.eval(Complex(1e8, 0.0))) < 1e-7);

    // spot value at k = 0 against the eps -> 0 Riesz-projection integral
    const FriedrichsModel ex = example58(2.0 * kI / kPi);
    const RationalFn exsym = mult_symbol(ex);
    const RationalFn product = ex.psi_phibar();
    std::vector<Complex> ladder;
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
        ladder.push_back(integrate_real_line(
            [&](double t) {
                return product.eval_cached(Complex(t, 0.0)) / (Complex(t, 0.0) - Complex(0.0, eps));
            },
            1e-12, 1e-11));
    }
    // two Richardson steps on the eps-ladder
    std::vector<Complex> r1(3), r2(2);
    for (int i = 0; i < 3; ++i) r1[i] = 2.0 * ladder[i + 1] - ladder[i];
    for (int i = 0; i < 2; ++i) r2[i] = (4.0 * r1[i + 1] - r1[i]) / 3.0;
    const Complex pplus_quad = r2.back() / kTwoPiI;
    CHECK(std::abs(exsym.eval(Complex(0.0, 0.0)) - (-pplus_quad)) < 1e-3);
}

TEST_CASE("finite-rank system reproduces the analytic defect on example data") {
    // defect 1 at alpha = 2i/pi
    FriedrichsModel model = example58(2.0 * kI / kPi);
    FiniteRankSystem system = build_system(model, model.alpha());
    CHECK(nullity(system) == 1);
    CHECK(system.essrange_margin > 1e-3);

    // defect 0 at alpha = i/(2 pi)
    model = example58(kI / (2.0 * kPi));
    system = build_system(model, model.alpha());
    CHECK(nullity(system) == 0);

    // psi = 0: K vanishes, nullity 0
    const FriedrichsModel free(RationalFn::from_terms({{-kI, 1, Complex(1.0)}}), RationalFn(), Complex(0.0));
    CHECK(nullity(build_system(free, Complex(1.0))) == 0);
}

TEST_CASE("quadrature entries match the residue route") {
    std::mt19937 rng(802);
    for (int rep = 0; rep < 4; ++rep) {
        const FriedrichsModel model =
            testing::draw_oracle_model(rng, 1 + static_cast<int>(rng() % 3), system_sigmas, model_margin);
        const FiniteRankSystem system = build_system(model, model.alpha());
        const RationalFn symbol = mult_symbol(model);
        const std::vector<PoleTerm>& terms = model.psi().terms();
        for (size_t j = 0; j < terms.size(); ++j) {
            for (size_t m = 0; m < terms.size(); ++m) {
                const Complex by_residues =
                    -terms[j].coeff / kTwoPiI *
                    entry_integral_by_residues(system.basis[m], symbol, system.mu, terms[j].pole);
                Complex entry = system.gram[j][m];
                if (j == m) entry -= 1.0;
                CHECK(std::abs(entry - by_residues) < 1e-8 * (1.0 + std::abs(entry)));
            }
        }
    }
}

TEST_CASE("oracle nullity equals the analytic defect on random draws") {
    std::mt19937 rng(803);
    for (int rep = 0; rep < 12; ++rep) {
        const int n = 1 + rep % 4;
        const FriedrichsModel model = testing::draw_oracle_model(rng, n, system_sigmas, model_margin);
        const OracleComparison cmp = oracle_compare(model);
        CHECK(cmp.oracle_nullity == cmp.analytic_defect);
    }
}

TEST_CASE("near-essential-range couplings are refused") {
    const FriedrichsModel model = example58(Complex(1.0));
    const RationalFn symbol = mult_symbol(model);
    // pick mu exactly on the range curve M(R)
    const Complex mu_on_curve = symbol.eval(Complex(0.7, 0.0));
    const Complex alpha = Complex(1.0) / (kTwoPiI * mu_on_curve);
    CHECK_THROWS_WITH_AS(build_system(model, alpha), doctest::Contains("NearEssentialRange"), Error);
}

TEST_CASE("large couplings outside the norm bound give trivial kernels") {
    // sampled ring of large mu: analytic Fredholm alternative far from the
    // essential range
    const FriedrichsModel model = example58(Complex(1.0));
    const RationalFn symbol = mult_symbol(model);
    double sup_m = 0.0;
    for (int k = -400; k <= 400; ++k)
        sup_m = std::max(sup_m, std::abs(symbol.eval_cached(Complex(0.05 * k, 0.0))));
    const double radius = 50.0 * (1.0 + sup_m);
    for (int k = 0; k < 8; ++k) {
        const double theta = 2.0 * kPi * k / 8.0 + 0.2;
        const Complex mu = radius * Complex(std::cos(theta), std::sin(theta));
        const Complex alpha = Complex(1.0) / (kTwoPiI * mu);
        CHECK(nullity(build_system(model, alpha)) == 0);
    }
}

TEST_CASE("the K splitting formula matches the Hankel commutator") {
    std::mt19937 rng(804);
    for (int rep = 0; rep < 6; ++rep) {
        const RationalFn psi = testing::random_l2_fn(rng, 3);  // poles on both sides
        const RationalFn phi = testing::random_l2_fn(rng, 2);
        const FriedrichsModel model(phi, psi, Complex(0.0));
        const RationalFn u = testing::random_l2_fn(rng, 3);

        const RationalFn by_split = k_apply_residue(model, u);
        // phibar [P+(psi P- u) - P-(psi P+ u)] assembled rationally
        const RationalFn direct =
            multiply(model.phi_bar(), sub(riesz_project(multiply(model.psi(), riesz_project(u, -1)), +1),
                                          riesz_project(multiply(model.psi(), riesz_project(u, +1)), -1)));
        CHECK(collinearity_residual(by_split, direct) < 1e-10);
        CHECK(std::abs(norm(by_split) - norm(direct)) < 1e-9 * (1.0 + norm(direct)));
    }
}

TEST_CASE("grid realization of L agrees with the rational route") {
    const FriedrichsModel model = example58(2.0 * kI / kPi);
    const int n = 1 << 15;
    const double cutoff = 256.0;
    std::mt19937 rng(805);
    // a degree-gap-2 probe keeps the FFT truncation error out of the verdict
    const RationalFn u = multiply(testing::random_l2_fn(rng, 2), testing::random_l2_fn(rng, 2));

    std::vector<Complex> samples(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        samples[static_cast<size_t>(k)] = u.eval_cached(Complex(-cutoff + 2.0 * cutoff * k / n, 0.0));
    const std::vector<Complex> grid_lu = grid_l_apply(model, samples, cutoff);

    // rational L u with the unscaled psi
    const RationalFn mult_part = mult_symbol(model);
    const RationalFn hankel = sub(riesz_project(multiply(model.psi(), riesz_project(u, -1)), +1),
                                  riesz_project(multiply(model.psi(), riesz_project(u, +1)), -1));
    const RationalFn rational_lu = add(multiply(mult_part, u), multiply(model.phi_bar(), hankel));

    double worst = 0.0, scale = 0.0;
    for (int k = n / 4; k < 3 * n / 4; ++k) {
        const double x = -cutoff + 2.0 * cutoff * k / n;
        const Complex expected = rational_lu.eval_cached(Complex(x, 0.0));
        worst = std::max(worst, std::abs(grid_lu[static_cast<size_t>(k)] - expected));
        scale = std::max(scale, std::abs(expected));
    }
    CHECK(worst < 1e-2 * scale);
}

TEST_CASE("grid membership residual refines toward zero for true members") {
    const FriedrichsModel model = example58(2.0 * kI / kPi);
    const SperpBasis basis = sperp_basis(model, defect_hplus(model));
    REQUIRE(basis.vectors.size() == 1);

    std::vector<double> residuals;
    int n = 1 << 12;
    double cutoff = 64.0;
    for (int level = 0; level < 3; ++level) {
        residuals.push_back(grid_membership_residual(model, basis.vectors[0], n, cutoff));
        n *= 4;
        cutoff *= 2.0;
    }
    CHECK(residuals[1] < residuals[0]);
    CHECK(residuals[2] < residuals[1]);
    // observed convergence order at least one
    CHECK(residuals[2] < 0.55 * residuals[1]);
    CHECK(residuals[2] < 1e-2);

    // a non-member stays bounded away from zero at every level
    std::mt19937 rng(806);
    const FriedrichsModel defect0 = example58(kI / (2.0 * kPi));
    const RationalFn outsider = testing::random_l2_fn(rng, 2);
    n = 1 << 12;
    cutoff = 64.0;
    for (int level = 0; level < 3; ++level) {
        CHECK(grid_membership_residual(defect0, outsider, n, cutoff) > 1e-2);
        n *= 4;
        cutoff *= 2.0;
    }

    CHECK(grid_membership_residual(model, RationalFn(), 1 << 12, 64.0) == 0.0);
    CHECK_THROWS_WITH_AS(grid_membership_residual(model, basis.vectors[0], 1000, 64.0),
                         doctest::Contains("BadGrid"), Error);
}
