#pragma once

#include <functional>
#include <optional>

#include "gp/complex_ball.hpp"
#include "gp/contour.hpp"

namespace gp {

/// Plain (uncertified) Newton refinement of a zero of F from a double seed,
/// with a central finite-difference derivative. Certification is always a
/// separate step (residual ball + small-disk winding); this routine only
/// has to land near the root.
///
/// Convergence is judged by the step size, not |F|: near z = -n the
/// derivative of anything built on 1/Gamma is ~ n!, so |F| at the best
/// representable z can stay many orders above any absolute tolerance.
inline std::optional<ComplexBall> newton_refine(const BallFunction& F, double seed_re,
                                                double seed_im, Prec prec, int max_iter = 64) {
    ComplexBall z = ComplexBall::from_doubles(seed_re, seed_im, prec).mid_point();
    RealBall h = RealBall::dyadic(1, -static_cast<long>(prec) / 3, prec);
    ComplexBall hc = ComplexBall::from_real(h);
    const long step_tol_exp = -(2 * static_cast<long>(prec)) / 3;
    for (int it = 0; it < max_iter; ++it) {
        ComplexBall f = F(z);
        if (f.is_exact() && f.contains_zero()) return z;
        ComplexBall fp = (F((z + hc).mid_point()) - F((z - hc).mid_point())) *
                         ComplexBall::from_real(inv(h).mul_2si(-1));
        if (!fp.nonzero_certified()) return std::nullopt;
        ComplexBall step = f * inv(fp);
        long step_exp = detail::mpfr_get_exp_safe(step.abs_upper());
        if (step_exp > 8) return std::nullopt; // wandering
        z = (z - step).mid_point();
        long scale_exp = detail::mpfr_get_exp_safe(z.abs_upper());
        if (scale_exp < 1) scale_exp = 1;
        if (step_exp <= step_tol_exp + scale_exp) return z;
    }
    return std::nullopt;
}

} // namespace gp
