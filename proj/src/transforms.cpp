#include "friedrichs/transforms.hpp"

#include <cmath>
#include <limits>

namespace friedrichs {

namespace {

const Complex kTwoPiI(0.0, 2.0 * kPi);

void require_l2(const RationalFn& f, const char* what) {
    if (!f.is_l2()) fail("NotL2", std::string(what) + " has a pole on the real axis");
}

// Res_{t=p} f(t)/(t-lambda) = -(singular part of f at p)(lambda).
// Sums residues over poles in the requested half-plane; magnitude accumulates
// the term sizes for scale-aware agreement checks.
Complex residue_sum_halfplane(const RationalFn& f, Complex lambda, HalfPlane half, double& magnitude) {
    Complex acc = 0.0;
    for (const PoleTerm& t : f.terms()) {
        if (classify_halfplane(t.pole) != half) continue;
        Complex d = lambda - t.pole;
        Complex pw = d;
        for (int k = 1; k < t.order; ++k) pw *= d;
        const Complex contrib = -t.coeff / pw;
        acc += contrib;
        magnitude += std::abs(contrib);
    }
    return acc;
}

Complex closed_integral(const RationalFn& f, Complex lambda, Closure closure, bool include_at_lambda_upper,
                        bool include_at_lambda_lower) {
    double mag_u = 0.0, mag_l = 0.0;
    Complex upper = residue_sum_halfplane(f, lambda, HalfPlane::Upper, mag_u);
    if (include_at_lambda_upper) {
        const Complex v = f.eval_cached(lambda);
        upper += v;
        mag_u += std::abs(v);
    }
    upper *= kTwoPiI;

    Complex lower = residue_sum_halfplane(f, lambda, HalfPlane::Lower, mag_l);
    if (include_at_lambda_lower) {
        const Complex v = f.eval_cached(lambda);
        lower += v;
        mag_l += std::abs(v);
    }
    lower *= -kTwoPiI;

    if (closure == Closure::Upper) return upper;
    if (closure == Closure::Lower) return lower;
    const double scale = 2.0 * kPi * std::max(mag_u, mag_l);
    if (std::abs(upper - lower) > tol::cauchy_agree * std::max(scale, 1e-30))
        fail("ClosureMismatch", "upper- and lower-closure evaluations disagree");
    return upper;
}

}  // namespace

Complex cauchy_transform(const RationalFn& f, Complex lambda, Closure closure) {
    require_finite(lambda, "lambda");
    require_l2(f, "cauchy_transform input");
    const HalfPlane h = classify_halfplane(lambda);
    if (h == HalfPlane::Real) fail("BoundaryEvaluationRequiresSide", "lambda lies on the real axis");
    if (f.is_zero()) return 0.0;
    // near a pole of f the literal same-side closure cancels catastrophically
    // (Res at the pole against f(lambda)); the opposite-half-plane singular
    // parts give the same value and stay conditioned across the axis
    double nearest = std::numeric_limits<double>::infinity();
    for (const PoleTerm& t : f.terms()) nearest = std::min(nearest, std::abs(lambda - t.pole));
    if (nearest < 1e-6 * std::max(1.0, std::abs(lambda))) {
        double mag = 0.0;
        if (h == HalfPlane::Upper) return -kTwoPiI * residue_sum_halfplane(f, lambda, HalfPlane::Lower, mag);
        return kTwoPiI * residue_sum_halfplane(f, lambda, HalfPlane::Upper, mag);
    }
    return closed_integral(f, lambda, closure, /*upper=*/h == HalfPlane::Upper,
                           /*lower=*/h == HalfPlane::Lower);
}

Complex boundary_cauchy(const RationalFn& f, double k, HalfPlane side) {
    if (side == HalfPlane::Real) fail("InvalidSide", "boundary side must be Upper or Lower");
    require_l2(f, "boundary_cauchy input");
    if (f.is_zero()) return 0.0;
    // value at k + i0 encloses the t=k residue when closing above; k - i0 when closing below
    const bool plus_side = side == HalfPlane::Upper;
    return closed_integral(f, Complex(k, 0.0), Closure::Checked, /*upper=*/plus_side, /*lower=*/!plus_side);
}

RationalFn riesz_project(const RationalFn& f, int sign) {
    if (sign != 1 && sign != -1) fail("InvalidSide", "Riesz projection sign must be +1 or -1");
    require_l2(f, "riesz_project input");
    std::vector<PoleTerm> kept;
    const HalfPlane want = sign == 1 ? HalfPlane::Lower : HalfPlane::Upper;
    for (const PoleTerm& t : f.terms())
        if (classify_halfplane(t.pole) == want) kept.push_back(t);
    return RationalFn::from_terms(std::move(kept));
}

Complex inner_product(const RationalFn& f, const RationalFn& g) {
    require_l2(f, "inner_product lhs");
    require_l2(g, "inner_product rhs");
    if (f.is_zero() || g.is_zero()) return 0.0;
    const RationalFn h = multiply(f, conj_on_real(g));
    // degree gap >= 2, so the symmetric integral closes in either half-plane
    double mag_u = 0.0, mag_l = 0.0;
    Complex upper = 0.0, lower = 0.0;
    for (const PoleTerm& t : h.terms()) {
        if (t.order != 1) continue;
        if (classify_halfplane(t.pole) == HalfPlane::Upper) {
            upper += t.coeff;
            mag_u += std::abs(t.coeff);
        } else {
            lower += t.coeff;
            mag_l += std::abs(t.coeff);
        }
    }
    const Complex a = kTwoPiI * upper, b = -kTwoPiI * lower;
    const double scale = 2.0 * kPi * std::max(mag_u, mag_l);
    if (std::abs(a - b) > tol::cauchy_agree * std::max(scale, 1e-30))
        fail("ClosureMismatch", "inner product closures disagree");
    return a;
}

double norm(const RationalFn& f) {
    if (f.is_zero()) return 0.0;
    return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

Complex trace_gamma1(const RationalFn& u) {
    require_l2(u, "trace input");
    if (u.is_zero()) return 0.0;
    if (u.degree_gap() < 1) fail("NotInDomain", "trace requires 1/x decay");
    const Complex c = u.residue_sum();
    // subtract c * x/(x^2+1) = c/2 * [1/(x-i) + 1/(x+i)]
    std::vector<PoleTerm> t = u.terms();
    t.push_back({Complex(0.0, 1.0), 1, -0.5 * c});
    t.push_back({Complex(0.0, -1.0), 1, -0.5 * c});
    const RationalFn v = RationalFn::from_terms(std::move(t));

    double mag_u = 0.0, mag_l = 0.0;
    Complex upper = 0.0, lower = 0.0;
    for (const PoleTerm& s : v.terms()) {
        if (s.order != 1) continue;
        if (classify_halfplane(s.pole) == HalfPlane::Upper) {
            upper += s.coeff;
            mag_u += std::abs(s.coeff);
        } else {
            lower += s.coeff;
            mag_l += std::abs(s.coeff);
        }
    }
    const Complex a = kTwoPiI * upper, b = -kTwoPiI * lower;
    const double scale = 2.0 * kPi * std::max(mag_u, mag_l);
    if (std::abs(a - b) > tol::cauchy_agree * std::max(scale, 1e-30))
        fail("ClosureMismatch", "trace closures disagree");
    return a;
}

Complex trace_gamma2(const RationalFn& u) {
    if (u.is_zero()) return 0.0;
    const int gap = u.degree_gap();
    if (gap < 1) fail("NotInDomain", "trace requires 1/x decay");
    if (gap > 1) return 0.0;
    return u.numerator().back();  // denominator cache is monic
}

double collinearity_residual(const RationalFn& f, const RationalFn& g) {
    if (f.is_zero() && g.is_zero()) return 0.0;
    if (f.is_zero() || g.is_zero()) return 1.0;
    const Complex a = inner_product(f, g) / inner_product(g, g);
    const RationalFn h = sub(f, g.scaled(a));
    return norm(h) / norm(f);
}

}  // namespace friedrichs
