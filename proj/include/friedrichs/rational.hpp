#pragma once

#include <vector>

#include "friedrichs/poly.hpp"
#include "friedrichs/roots.hpp"
#include "friedrichs/types.hpp"

namespace friedrichs {

/// One partial-fraction atom coeff/(x - pole)^order.
struct PoleTerm {
    Complex pole;
    int order = 1;
    Complex coeff;
};

/// Strictly proper complex rational function held primarily in
/// partial-fraction form, with a numerator/denominator cache kept in
/// agreement (checked at 16 sample points on construction).
///
/// The zero function is the empty term list. Values are immutable after
/// construction; all operations are pure.
class RationalFn {
public:
    RationalFn() = default;

    static RationalFn from_terms(std::vector<PoleTerm> terms);
    static RationalFn from_quotient(const poly::Poly& num, const poly::Poly& den);
    /// Quotient with the denominator given by its roots (monic) and an
    /// overall leading coefficient; avoids re-rooting when poles are known.
    static RationalFn from_quotient_known_poles(const poly::Poly& num, const std::vector<Root>& den_roots,
                                                Complex den_leading = Complex(1.0));

    const std::vector<PoleTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_l2() const { return l2_; }
    /// deg(den) - deg(num); >= 1 for nonzero functions.
    int degree_gap() const;
    /// Sum of order-1 coefficients = lim_{x->inf} x f(x).
    Complex residue_sum() const;
    double coeff_scale() const;

    Complex eval(Complex x) const;
    Complex eval_cached(Complex x) const;
    const poly::Poly& numerator() const { return num_; }
    const poly::Poly& denominator() const { return den_; }

    /// Distinct poles with their (maximal) orders.
    std::vector<Root> poles() const;

    RationalFn scaled(Complex s) const;
    /// f(x) / (x - lambda).
    RationalFn divided_by_linear(Complex lambda) const;
    /// Proper part of (x - lambda) f(x); the split-off constant (equal to
    /// residue_sum) is returned through `constant` when requested.
    RationalFn multiplied_by_linear(Complex lambda, Complex* constant = nullptr) const;

private:
    void rebuild_cache();
    void check_forms_agree() const;

    std::vector<PoleTerm> terms_;
    poly::Poly num_{}, den_{Complex(1.0)};
    bool l2_ = true;
};

RationalFn add(const RationalFn& a, const RationalFn& b);
RationalFn sub(const RationalFn& a, const RationalFn& b);
RationalFn multiply(const RationalFn& a, const RationalFn& b);

/// The function x -> conj(f(conj(x))): equals conj(f(x)) on the real axis.
/// Conjugates all coefficients and reflects all poles across R; involution.
RationalFn conj_on_real(const RationalFn& f);

/// Strictly proper partial-fraction decomposition of num/den.
RationalFn partial_fractions(const poly::Poly& num, const poly::Poly& den);

/// Sum of |coeff|/|x - pole|^order over the terms: the natural magnitude
/// scale for deciding that f(x) vanishes on rational data.
double term_magnitude_at(const RationalFn& f, Complex x);

}  // namespace friedrichs
