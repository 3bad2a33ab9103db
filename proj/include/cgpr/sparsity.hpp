#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "cgpr/field.hpp"

namespace cgpr {

/// Parameters of the smoothed TV descent machinery. epsilon is a relative
/// smoothing floor: the effective value added under the TV root is
/// epsilon * max(1, max|grad f|), evaluated once per gradient call, which
/// keeps the direction field bounded where the gradient vanishes.
/// step_scale is the per-step fraction t of the iterate's L2 norm.
struct TvParams {
    double epsilon = 1e-8;
    double step_scale = 0.005;

    void validate() const {
        if (!(epsilon > 0.0))
            throw std::invalid_argument("TvParams: epsilon must be positive");
        if (!(step_scale > 0.0 && step_scale < 1.0))
            throw std::invalid_argument("TvParams: step_scale must be in (0,1)");
    }
};

/// Total variation sum_i sqrt(|grad_x g_i|^2 + |grad_y g_i|^2), circular
/// central differences, no smoothing inside the reported value.
inline double tv(const ComplexField& f) {
    const std::size_t rows = f.rows(), cols = f.cols();
    const double sx = 1.0 / (2.0 * f.dx());
    const double sy = 1.0 / (2.0 * f.dy());
    double total = 0.0;
    for (std::size_t x = 0; x < rows; ++x) {
        const std::size_t xp = (x + 1 == rows) ? 0 : x + 1;
        const std::size_t xm = (x == 0) ? rows - 1 : x - 1;
        for (std::size_t y = 0; y < cols; ++y) {
            const std::size_t yp = (y + 1 == cols) ? 0 : y + 1;
            const std::size_t ym = (y == 0) ? cols - 1 : y - 1;
            total += std::sqrt(std::norm((f(xp, y) - f(xm, y)) * sx) +
                               std::norm((f(x, yp) - f(x, ym)) * sy));
        }
    }
    return total;
}

/// Functional gradient of TV with respect to the conjugate field:
///   -1/2 div( grad f / sqrt(|grad_x f|^2 + |grad_y f|^2 + eps^2) ).
/// The divergence reuses the circular central-difference stencil, which is the
/// negative adjoint of the gradient under periodic boundaries, so the result
/// is a true descent direction for the discretized functional.
inline ComplexField tv_gradient(const ComplexField& f, const TvParams& p) {
    p.validate();
    const std::size_t rows = f.rows(), cols = f.cols();
    GradientPair g = grad_central(f);

    double gmax = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        gmax = std::max(gmax, std::sqrt(std::norm(g.gx[i]) + std::norm(g.gy[i])));
    const double eps = p.epsilon * std::max(1.0, gmax);
    const double eps2 = eps * eps;

    // Normalize in place: (gx, gy) becomes the smoothed unit gradient field.
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double mag = std::sqrt(std::norm(g.gx[i]) + std::norm(g.gy[i]) + eps2);
        g.gx[i] /= mag;
        g.gy[i] /= mag;
    }

    ComplexField out(rows, cols, f.dx(), f.dy());
    const double sx = 1.0 / (2.0 * f.dx());
    const double sy = 1.0 / (2.0 * f.dy());
    for (std::size_t x = 0; x < rows; ++x) {
        const std::size_t xp = (x + 1 == rows) ? 0 : x + 1;
        const std::size_t xm = (x == 0) ? rows - 1 : x - 1;
        for (std::size_t y = 0; y < cols; ++y) {
            const std::size_t yp = (y + 1 == cols) ? 0 : y + 1;
            const std::size_t ym = (y == 0) ? cols - 1 : y - 1;
            const Complex div = (g.gx(xp, y) - g.gx(xm, y)) * sx + (g.gy(x, yp) - g.gy(x, ym)) * sy;
            out(x, y) = -0.5 * div;
        }
    }
    return out;
}

/// Unit vector along the TV functional gradient, normalized by the field-wide
/// L2 norm. Throws ZeroGradient for constant input.
inline ComplexField tv_unit_direction(const ComplexField& f, const TvParams& p) {
    ComplexField w = tv_gradient(f, p);
    const double n = norm_l2(w);
    if (n == 0.0) throw ZeroGradient("tv_unit_direction: functional gradient is the zero field");
    const double inv = 1.0 / n;
    for (Complex& v : w.samples()) v *= inv;
    return w;
}

/// One gradient-descent step f - t*||f||_2*u_hat; the update has L2 magnitude
/// exactly t*||f||_2.
inline ComplexField tv_descent_step(const ComplexField& f, const TvParams& p) {
    const ComplexField u = tv_unit_direction(f, p);
    const double step = p.step_scale * norm_l2(f);
    ComplexField out = f;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= step * u[i];
    return out;
}

}  // namespace cgpr
