#include "friedrichs/rational.hpp"

#include <algorithm>
#include <cmath>

namespace friedrichs {

namespace {

bool poles_coincide(Complex a, Complex b) {
    return std::abs(a - b) <= tol::pole_cluster * std::max({1.0, std::abs(a), std::abs(b)});
}

bool term_order_less(const PoleTerm& a, const PoleTerm& b) {
    if (a.pole.real() != b.pole.real()) return a.pole.real() < b.pole.real();
    if (a.pole.imag() != b.pole.imag()) return a.pole.imag() < b.pole.imag();
    return a.order < b.order;
}

}  // namespace

int RationalFn::degree_gap() const {
    if (terms_.empty()) return 1000;
    const double nscale = poly::eval_scale(num_, Complex(1.0));
    int nd = -1;
    for (int k = static_cast<int>(num_.size()) - 1; k >= 0; --k)
        if (std::abs(num_[static_cast<size_t>(k)]) > 1e-12 * nscale) { nd = k; break; }
    return static_cast<int>(den_.size()) - 1 - nd;
}

Complex RationalFn::residue_sum() const {
    Complex s = 0.0;
    for (const PoleTerm& t : terms_)
        if (t.order == 1) s += t.coeff;
    return s;
}

double RationalFn::coeff_scale() const {
    double s = 0.0;
    for (const PoleTerm& t : terms_) s = std::max(s, std::abs(t.coeff));
    return s;
}

Complex RationalFn::eval(Complex x) const {
    Complex acc = 0.0;
    for (const PoleTerm& t : terms_) {
        Complex d = x - t.pole;
        Complex pw = d;
        for (int k = 1; k < t.order; ++k) pw *= d;
        acc += t.coeff / pw;
    }
    return acc;
}

Complex RationalFn::eval_cached(Complex x) const {
    if (terms_.empty()) return 0.0;
    return poly::eval(num_, x) / poly::eval(den_, x);
}

std::vector<Root> RationalFn::poles() const {
    std::vector<Root> out;
    for (const PoleTerm& t : terms_) {
        bool found = false;
        for (Root& r : out)
            if (poles_coincide(r.value, t.pole)) {
                r.multiplicity = std::max(r.multiplicity, t.order);
                found = true;
                break;
            }
        if (!found) out.push_back({t.pole, t.order});
    }
    return out;
}

RationalFn RationalFn::from_terms(std::vector<PoleTerm> raw) {
    // merge coincident poles, combine equal orders, drop negligible coefficients
    std::vector<PoleTerm> merged;
    double scale = 0.0;
    for (const PoleTerm& t : raw) scale = std::max(scale, std::abs(t.coeff));
    for (PoleTerm t : raw) {
        if (t.order < 1) fail("BadTerm", "pole order must be >= 1");
        require_finite(t.pole, "pole");
        require_finite(t.coeff, "coefficient");
        bool placed = false;
        for (PoleTerm& m : merged) {
            if (m.order == t.order && poles_coincide(m.pole, t.pole)) {
                m.coeff += t.coeff;
                placed = true;
                break;
            }
        }
        if (!placed) merged.push_back(t);
    }
    // snap clustered poles to a common representative so cache building is exact
    for (size_t i = 0; i < merged.size(); ++i)
        for (size_t j = i + 1; j < merged.size(); ++j)
            if (poles_coincide(merged[i].pole, merged[j].pole)) merged[j].pole = merged[i].pole;

    std::vector<PoleTerm> kept;
    for (const PoleTerm& t : merged)
        if (std::abs(t.coeff) > tol::coeff_drop * scale) kept.push_back(t);

    std::sort(kept.begin(), kept.end(), term_order_less);

    RationalFn f;
    f.terms_ = std::move(kept);
    f.l2_ = true;
    for (const PoleTerm& t : f.terms_)
        if (classify_halfplane(t.pole) == HalfPlane::Real) f.l2_ = false;
    f.rebuild_cache();
    f.check_forms_agree();
    return f;
}

void RationalFn::rebuild_cache() {
    if (terms_.empty()) {
        num_ = {};
        den_ = {Complex(1.0)};
        return;
    }
    std::vector<Root> ps = poles();
    std::vector<Complex> all_roots;
    for (const Root& p : ps)
        for (int k = 0; k < p.multiplicity; ++k) all_roots.push_back(p.value);
    den_ = poly::from_roots(all_roots);

    poly::Poly num;
    for (const PoleTerm& t : terms_) {
        // den / (x - pole)^order, assembled from the root list
        std::vector<Complex> rest;
        int skip = t.order;
        Complex rep = t.pole;
        for (const Root& p : ps)
            if (poles_coincide(p.value, t.pole)) { rep = p.value; break; }
        for (Complex r : all_roots) {
            if (skip > 0 && r == rep) { --skip; continue; }
            rest.push_back(r);
        }
        num = poly::add(num, poly::scale(poly::from_roots(rest), t.coeff));
    }
    // negligible leading coefficients (cancelling residue sums of gap >= 2
    // functions) would otherwise masquerade as spurious huge roots downstream
    num_ = poly::trimmed_relative(num, 1e-13);
    while (!num_.empty() && num_.size() >= den_.size()) num_.pop_back();  // strictly proper by construction
}

void RationalFn::check_forms_agree() const {
    if (terms_.empty()) return;
    const double cscale = coeff_scale();
    // fixed low-discrepancy sample points on [-8, 8]
    for (int i = 0; i < 16; ++i) {
        const double x = -8.0 + 16.0 * std::fmod(0.5 + 0.6180339887498949 * i, 1.0);
        const Complex p(x, 0.0);
        bool near_pole = false;
        for (const PoleTerm& t : terms_)
            if (std::abs(p - t.pole) < 1e-3 * std::max(1.0, std::abs(t.pole))) near_pole = true;
        if (near_pole) continue;
        const Complex a = eval(p), b = eval_cached(p);
        if (std::abs(a - b) > tol::form_agree * (std::abs(a) + std::abs(b)) + 1e-11 * cscale)
            fail("FormMismatch", "partial-fraction and polynomial forms disagree");
    }
}

RationalFn RationalFn::from_quotient(const poly::Poly& num_in, const poly::Poly& den_in) {
    poly::Poly den = poly::trimmed(den_in);
    if (den.empty()) fail("ZeroPolynomial", "denominator is identically zero");
    poly::Poly num = poly::trimmed(num_in);
    if (num.empty()) return RationalFn();
    if (num.size() >= den.size()) fail("NotStrictlyProper", "degree(num) must be < degree(den)");
    return from_quotient_known_poles(poly::scale(num, 1.0 / den.back()), poly_roots(den));
}

RationalFn RationalFn::from_quotient_known_poles(const poly::Poly& num_in, const std::vector<Root>& den_roots,
                                                 Complex den_leading) {
    poly::Poly num = poly::scale(poly::trimmed(num_in), 1.0 / den_leading);
    if (num.empty()) return RationalFn();
    int den_deg = 0;
    for (const Root& r : den_roots) den_deg += r.multiplicity;
    if (static_cast<int>(num.size()) > den_deg) fail("NotStrictlyProper", "degree(num) must be < degree(den)");

    std::vector<PoleTerm> terms;
    for (size_t i = 0; i < den_roots.size(); ++i) {
        const Complex p = den_roots[i].value;
        const int m = den_roots[i].multiplicity;
        std::vector<Complex> rest;
        for (size_t j = 0; j < den_roots.size(); ++j) {
            if (j == i) continue;
            for (int k = 0; k < den_roots[j].multiplicity; ++k) rest.push_back(den_roots[j].value);
        }
        const poly::Poly q = poly::from_roots(rest);
        const poly::Poly tn = poly::taylor_at(num, p, m);
        const poly::Poly tq = poly::taylor_at(q, p, m);
        const poly::Poly a = poly::series_divide(tn, tq, m);
        for (int k = 0; k < m; ++k)
            terms.push_back({p, m - k, a[static_cast<size_t>(k)]});
    }
    return from_terms(std::move(terms));
}

RationalFn RationalFn::scaled(Complex s) const {
    require_finite(s, "scalar");
    if (s == Complex(0.0)) return RationalFn();
    std::vector<PoleTerm> t = terms_;
    for (PoleTerm& x : t) x.coeff *= s;
    return from_terms(std::move(t));
}

RationalFn RationalFn::divided_by_linear(Complex lambda) const {
    require_finite(lambda, "lambda");
    std::vector<Root> dr = poles();
    bool hit = false;
    for (Root& r : dr)
        if (poles_coincide(r.value, lambda)) { ++r.multiplicity; hit = true; break; }
    if (!hit) dr.push_back({lambda, 1});
    if (terms_.empty()) return from_quotient_known_poles(poly::Poly{Complex(1.0)}, dr);
    return from_quotient_known_poles(num_, dr);
}

RationalFn RationalFn::multiplied_by_linear(Complex lambda, Complex* constant) const {
    std::vector<PoleTerm> out;
    for (const PoleTerm& t : terms_) {
        if (t.order > 1) out.push_back({t.pole, t.order - 1, t.coeff});
        out.push_back({t.pole, t.order, t.coeff * (t.pole - lambda)});
    }
    if (constant) *constant = residue_sum();
    return from_terms(std::move(out));
}

RationalFn add(const RationalFn& a, const RationalFn& b) {
    std::vector<PoleTerm> t = a.terms();
    const std::vector<PoleTerm>& u = b.terms();
    t.insert(t.end(), u.begin(), u.end());
    return RationalFn::from_terms(std::move(t));
}

RationalFn sub(const RationalFn& a, const RationalFn& b) { return add(a, b.scaled(-1.0)); }

RationalFn multiply(const RationalFn& a, const RationalFn& b) {
    if (a.is_zero() || b.is_zero()) return RationalFn();
    // pole orders add where the factors share a pole
    std::vector<Root> pa = a.poles();
    std::vector<Root> merged = b.poles();
    for (const Root& r : pa) {
        bool hit = false;
        for (Root& m : merged)
            if (std::abs(r.value - m.value) <=
                tol::pole_cluster * std::max({1.0, std::abs(r.value), std::abs(m.value)})) {
                m.multiplicity += r.multiplicity;
                hit = true;
                break;
            }
        if (!hit) merged.push_back(r);
    }
    return RationalFn::from_quotient_known_poles(poly::multiply(a.numerator(), b.numerator()), merged);
}

RationalFn conj_on_real(const RationalFn& f) {
    std::vector<PoleTerm> t = f.terms();
    for (PoleTerm& x : t) {
        x.pole = std::conj(x.pole);
        x.coeff = std::conj(x.coeff);
    }
    return RationalFn::from_terms(std::move(t));
}

RationalFn partial_fractions(const poly::Poly& num, const poly::Poly& den) {
    return RationalFn::from_quotient(num, den);
}

double term_magnitude_at(const RationalFn& f, Complex x) {
    double s = 0.0;
    for (const PoleTerm& t : f.terms()) s += std::abs(t.coeff) / std::pow(std::abs(x - t.pole), t.order);
    return s;
}

}  // namespace friedrichs
