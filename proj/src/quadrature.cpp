#include "friedrichs/quadrature.hpp"

#include <cmath>
#include <vector>

namespace friedrichs {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    Complex value;
    double error;
};

Segment evaluate_segment(const std::function<Complex(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Complex gauss = 0.0, kronrod = 0.0;
    for (int j = 0; j < 7; ++j) {
        const Complex fp = f(c + h * kXgk[j]);
        const Complex fm = f(c - h * kXgk[j]);
        kronrod += kWgk[j] * (fp + fm);
        if (j % 2 == 1) gauss += kWg[j / 2] * (fp + fm);
    }
    const Complex f0 = f(c);
    kronrod += kWgk[7] * f0;
    gauss += kWg[3] * f0;
    kronrod *= h;
    gauss *= h;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

Complex integrate_interval(const std::function<Complex(double)>& f, double a, double b, double abs_tol,
                           double rel_tol) {
    std::vector<Segment> active{evaluate_segment(f, a, b)};
    Complex total = active[0].value;
    double total_err = active[0].error;
    constexpr int kMaxSegments = 40000;
    int evaluated = 1;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        // split the worst segment
        size_t worst = 0;
        for (size_t i = 1; i < active.size(); ++i)
            if (active[i].error > active[worst].error) worst = i;
        const Segment seg = active[worst];
        if (seg.b - seg.a < 1e-14 * std::max(1.0, std::abs(seg.a)) || evaluated >= kMaxSegments)
            fail("QuadratureFailure", "adaptive Gauss-Kronrod did not converge");
        const double mid = 0.5 * (seg.a + seg.b);
        const Segment left = evaluate_segment(f, seg.a, mid);
        const Segment right = evaluate_segment(f, mid, seg.b);
        evaluated += 2;
        total += left.value + right.value - seg.value;
        total_err += left.error + right.error - seg.error;
        active[worst] = left;
        active.push_back(right);
    }
    return total;
}

Complex integrate_real_line(const std::function<Complex(double)>& f, double abs_tol, double rel_tol) {
    const auto g = [&f](double theta) {
        const double c = std::cos(theta);
        const double t = std::tan(theta);
        return f(t) / (c * c);
    };
    return integrate_interval(g, -0.5 * kPi, 0.5 * kPi, abs_tol, rel_tol);
}

}  // namespace friedrichs
