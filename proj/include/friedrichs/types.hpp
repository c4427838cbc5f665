#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace friedrichs {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Typed failure: every refusal carries a stable machine-readable code
/// ("NotL2", "DVanishes", ...) next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw Error(code, what);
}

namespace tol {
// Scale-aware tolerances; doubles with two orders of headroom.
inline constexpr double pole_real = 1e-9;      // |Im p| below this (scaled) counts as real
inline constexpr double pole_cluster = 1e-8;   // pole/root coincidence
inline constexpr double root_residual = 1e-8;  // |p(root)| acceptance, relative to eval scale
inline constexpr double cauchy_agree = 1e-10;  // upper vs lower contour closure
inline constexpr double form_agree = 1e-10;    // term form vs polynomial cache
inline constexpr double svd_rank = 1e-10;      // nullspace rank cut, relative to sigma_1
inline constexpr double nullity = 1e-7;        // oracle nullity cut, relative to sigma_1
inline constexpr double quad_abs = 1e-10;
inline constexpr double quad_rel = 1e-9;
inline constexpr double ess_margin_min = 1e-6; // minimum distance from mu to essran(M)
inline constexpr double membership = 1e-8;     // S-perp membership residual
inline constexpr double coeff_drop = 5e-13;    // partial-fraction coefficient considered zero
}  // namespace tol

enum class HalfPlane { Upper, Lower, Real };

/// Classification is absolute after scaling by max(1,|p|).
inline HalfPlane classify_halfplane(Complex p, double real_tol = tol::pole_real) {
    const double cut = real_tol * std::max(1.0, std::abs(p));
    if (p.imag() > cut) return HalfPlane::Upper;
    if (p.imag() < -cut) return HalfPlane::Lower;
    return HalfPlane::Real;
}

inline const char* halfplane_name(HalfPlane h) {
    switch (h) {
        case HalfPlane::Upper: return "upper";
        case HalfPlane::Lower: return "lower";
        default: return "real";
    }
}

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Complex z, const char* what) {
    if (!is_finite(z)) fail("NonFinite", std::string(what) + " must be finite");
}

inline double sign_im(Complex z) { return z.imag() > 0 ? 1.0 : -1.0; }

}  // namespace friedrichs
