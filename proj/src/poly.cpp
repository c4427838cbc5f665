#include "friedrichs/poly.hpp"

#include <algorithm>
#include <cmath>

namespace friedrichs::poly {

int degree(const Poly& p, double drop_tol) {
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
        if (std::abs(p[static_cast<size_t>(k)]) > drop_tol) return k;
    return -1;  // zero polynomial
}

Poly trimmed(const Poly& p) {
    int d = degree(p);
    if (d < 0) return {};
    return Poly(p.begin(), p.begin() + d + 1);
}

Poly trimmed_relative(const Poly& p, double rel) {
    double scale = 0.0;
    for (const Complex& c : p) scale = std::max(scale, std::abs(c));
    int d = degree(p, rel * scale);
    if (d < 0) return {};
    return Poly(p.begin(), p.begin() + d + 1);
}

bool is_zero(const Poly& p) { return degree(p) < 0; }

Complex eval(const Poly& p, Complex x) {
    Complex acc = 0.0;
    for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

double eval_scale(const Poly& p, Complex x) {
    double scale = 0.0, pw = 1.0;
    const double ax = std::abs(x);
    for (const Complex& c : p) {
        scale = std::max(scale, std::abs(c) * pw);
        pw *= ax;
    }
    return scale;
}

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly d(p.size() - 1);
    for (size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
    return d;
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Complex(0.0));
    for (size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (size_t k = 0; k < b.size(); ++k) r[k] += b[k];
    return r;
}

Poly sub(const Poly& a, const Poly& b) { return add(a, scale(b, -1.0)); }

Poly scale(const Poly& p, Complex s) {
    Poly r = p;
    for (Complex& c : r) c *= s;
    return r;
}

Poly multiply(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Complex(0.0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly conj_coeffs(const Poly& p) {
    Poly r = p;
    for (Complex& c : r) c = std::conj(c);
    return r;
}

Poly from_roots(const std::vector<Complex>& roots) {
    Poly p{Complex(1.0)};
    for (Complex r : roots) p = multiply(p, Poly{-r, Complex(1.0)});
    return p;
}

Poly deflate(const Poly& p, Complex a, Complex* remainder) {
    if (p.empty()) {
        if (remainder) *remainder = 0.0;
        return {};
    }
    Poly q(p.size() > 1 ? p.size() - 1 : 0);
    Complex carry = 0.0;
    for (size_t k = p.size(); k-- > 0;) {
        carry = p[k] + carry * a;
        if (k > 0) q[k - 1] = carry;
    }
    // after the loop `carry` holds p(a)
    if (remainder) *remainder = carry;
    return q;
}

Poly taylor_at(const Poly& p, Complex a, int count) {
    Poly work = p, out(static_cast<size_t>(count), Complex(0.0));
    for (int k = 0; k < count && !work.empty(); ++k) {
        Complex rem;
        work = deflate(work, a, &rem);
        out[static_cast<size_t>(k)] = rem;
    }
    return out;
}

Poly series_divide(const Poly& a, const Poly& b, int count) {
    Poly out(static_cast<size_t>(count), Complex(0.0));
    const Complex b0 = b.empty() ? Complex(0.0) : b[0];
    if (b0 == Complex(0.0)) fail("ZeroPolynomial", "series division by series with zero constant term");
    for (int k = 0; k < count; ++k) {
        Complex acc = k < static_cast<int>(a.size()) ? a[static_cast<size_t>(k)] : Complex(0.0);
        for (int j = 1; j <= k; ++j)
            if (j < static_cast<int>(b.size()))
                acc -= b[static_cast<size_t>(j)] * out[static_cast<size_t>(k - j)];
        out[static_cast<size_t>(k)] = acc / b0;
    }
    return out;
}

}  // namespace friedrichs::poly
