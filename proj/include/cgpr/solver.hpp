#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cgpr/complexity.hpp"
#include "cgpr/field.hpp"
#include "cgpr/mask.hpp"
#include "cgpr/phantom.hpp"
#include "cgpr/sparsity.hpp"

namespace cgpr {

/// Off-support feedback form. standard writes the update as
/// g_proj - beta*g_prev outside C; fienup_classic is Fienup's 1982 form
/// g_prev - beta*g_proj. The two differ in which term carries the feedback
/// sign and are provided side by side.
enum class HioVariant { standard, fienup_classic };

/// Correlation mode of the error metric: plain |inner product|, or the
/// maximum cross-correlation magnitude over all circular shifts.
enum class Registration { none, circular_shift };

/// All solver parameters. Defaults are the reference operating point:
/// beta 0.9, t 0.005, 0.5% complexity tolerance, 200 sub-iteration cap.
struct RunConfig {
    double beta = 0.9;
    double t = 0.005;
    double zeta_rel_tol = 0.005;
    int max_outer_iters = 200;
    int max_tv_subiters = 200;
    std::uint64_t seed = 0;
    HioVariant hio_variant = HioVariant::standard;
    Registration registration = Registration::none;

    void validate() const {
        if (!(beta > 0.5 && beta < 1.0))
            throw std::invalid_argument("RunConfig: beta must lie in (0.5,1)");
        if (!(t > 0.0 && t < 1.0))
            throw std::invalid_argument("RunConfig: t must lie in (0,1)");
        if (!(zeta_rel_tol > 0.0 && zeta_rel_tol < 1.0))
            throw std::invalid_argument("RunConfig: zeta_rel_tol must lie in (0,1)");
        if (max_outer_iters < 1)
            throw std::invalid_argument("RunConfig: max_outer_iters must be >= 1");
        if (max_tv_subiters < 1)
            throw std::invalid_argument("RunConfig: max_tv_subiters must be >= 1");
    }
};

/// One row of the per-iteration trace. error_sq is present only when ground
/// truth was supplied; elapsed_ms measures the solver work of the iteration.
struct TraceRecord {
    int iter;
    double zeta;
    std::optional<double> error_sq;
    double tv_value;
    int tv_substeps;
    double elapsed_ms;
};

using IterationTrace = std::vector<TraceRecord>;

struct RunResult {
    ComplexField field;
    IterationTrace trace;
};

namespace detail {

inline void require_same_shape(const ComplexField& g, const MagnitudeData& m) {
    if (!m.same_shape(g))
        throw DimensionMismatch("field and magnitude data differ in shape");
}

inline void require_same_shape(const ComplexField& g, const SupportMask& c) {
    if (g.rows() != c.rows() || g.cols() != c.cols())
        throw DimensionMismatch("field and support mask differ in shape");
}

}  // namespace detail

/// Replace the spectrum magnitude of g with the measured one, keeping the
/// phase: idft2(m * exp(i arg(dft2(g)))). Where the spectrum is exactly zero
/// the phase is taken as 0, i.e. the measured magnitude is inserted as-is.
inline ComplexField fourier_project(const ComplexField& g, const MagnitudeData& m) {
    detail::require_same_shape(g, m);
    ComplexField spectrum = dft2(g);
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        const double mag = std::abs(spectrum[i]);
        spectrum[i] = (mag == 0.0) ? Complex{m[i], 0.0} : spectrum[i] * (m[i] / mag);
    }
    return idft2(spectrum);
}

/// Fienup HIO update with negative feedback: the projected field is kept on
/// the support; outside it the variant-selected feedback combination applies.
inline ComplexField hio_update(const ComplexField& g_prev, const ComplexField& g_proj,
                               const SupportMask& c, double beta, HioVariant variant) {
    if (!g_prev.same_shape(g_proj))
        throw DimensionMismatch("hio_update: iterate and projection differ in shape");
    detail::require_same_shape(g_prev, c);
    if (!(beta > 0.5 && beta < 1.0))
        throw std::invalid_argument("hio_update: beta must lie in (0.5,1)");
    ComplexField out(g_prev.rows(), g_prev.cols(), g_prev.dx(), g_prev.dy());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (c.inside(i)) {
            out[i] = g_proj[i];
        } else if (variant == HioVariant::standard) {
            out[i] = g_proj[i] - beta * g_prev[i];
        } else {
            out[i] = g_prev[i] - beta * g_proj[i];
        }
    }
    return out;
}

struct GuidedTvResult {
    ComplexField field;
    int substeps;
    /// Complexity of the returned field — the value the stopping rule last
    /// compared against the band.
    double zeta;
};

/// Complexity-guided TV sub-loop: repeat masked descent steps until the
/// iterate's image-domain complexity enters the tolerance band around
/// zeta_target (or falls below it), or the sub-iteration cap is hit. The unit
/// direction is computed on the full field and the update applied only to
/// support pixels; off-support pixels pass through unchanged. While the
/// iterate carries off-support feedback content, its complexity sits above
/// the target's share; the cap bounds the smoothing spent per outer iteration
/// in that regime. Input already at or below the band's upper edge is
/// returned untouched with substeps = 0, as is input whose TV gradient
/// vanishes.
inline GuidedTvResult complexity_guided_tv(const ComplexField& g, const SupportMask& c,
                                           double zeta_target, const RunConfig& cfg) {
    detail::require_same_shape(g, c);
    cfg.validate();
    if (!(zeta_target > 0.0))
        throw std::invalid_argument("complexity_guided_tv: zeta_target must be positive");

    const ToleranceBand band = complexity_tolerance_band(zeta_target, cfg.zeta_rel_tol);
    ComplexField cur = g;
    double zeta = complexity_image(cur);
    int substeps = 0;
    const TvParams params{.step_scale = cfg.t};

    while (zeta > band.high && substeps < cfg.max_tv_subiters) {
        try {
            const ComplexField u = tv_unit_direction(cur, params);
            const double step = cfg.t * norm_l2(cur);
            for (std::size_t i = 0; i < cur.size(); ++i)
                if (c.inside(i)) cur[i] -= step * u[i];
        } catch (const ZeroGradient&) {
            break;
        }
        zeta = complexity_image(cur);
        ++substeps;
    }
    return {std::move(cur), substeps, zeta};
}

/// Normalized object-domain error, minimized over the iterate and its twin:
///   E^2(h) = [sum|h|^2 + sum|g|^2 - 2 corr(h,g)] / sum|g|^2
/// with corr = |<h,g>| (registration none) or the maximum cross-correlation
/// magnitude over all circular shifts (computed spectrally). Blind to global
/// phase; tiny negative rounding residue is clamped to zero.
inline double error_metric(const ComplexField& g_n, const ComplexField& truth,
                           Registration registration = Registration::none) {
    if (!g_n.same_shape(truth))
        throw DimensionMismatch("error_metric: iterate and truth differ in shape");
    const double truth_power = power(truth);
    if (truth_power == 0.0) throw ZeroTruth("error_metric: truth field is identically zero");

    const auto corr = [&](const ComplexField& h) -> double {
        if (registration == Registration::none) return std::abs(inner(h, truth));
        // c[s] = sum_x h[x+s] conj(truth[x]) = idft2(dft2(h) .* conj(dft2(truth)))
        ComplexField prod = dft2(h);
        const ComplexField truth_spec = dft2(truth);
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= std::conj(truth_spec[i]);
        const ComplexField cross = idft2(prod);
        double best = 0.0;
        for (const Complex& v : cross.samples()) best = std::max(best, std::abs(v));
        return best;
    };

    const auto e2 = [&](const ComplexField& h) -> double {
        const double numerator = power(h) + truth_power - 2.0 * corr(h);
        return std::max(numerator, 0.0) / truth_power;
    };

    return std::min(e2(g_n), e2(twin(g_n)));
}

/// Window-wide random-phase initial guess g0 = exp(i theta0), theta0 uniform
/// on [0, 2pi) pixelwise from a seeded generator. The 53-bit conversion keeps
/// the sequence identical across platforms.
inline ComplexField random_phase_init(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                      double dx = 1.0, double dy = 1.0) {
    std::mt19937_64 rng(seed);
    ComplexField g(rows, cols, dx, dy);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    constexpr double inv53 = 1.0 / 9007199254740992.0;  // 2^-53
    for (Complex& v : g.samples()) {
        const double u = static_cast<double>(rng() >> 11) * inv53;
        v = std::polar(1.0, two_pi * u);
    }
    return g;
}

namespace detail {

// Shared engine: run_cgpr is run_hio plus a per-iteration guided TV sub-loop.
inline RunResult run_engine(const MagnitudeData& m, const SupportMask& c, const RunConfig& cfg,
                            const ComplexField& init, const ComplexField* truth, bool guided) {
    cfg.validate();
    require_same_shape(init, m);
    require_same_shape(init, c);
    if (truth != nullptr && !truth->same_shape(init))
        throw DimensionMismatch("run: truth and init differ in shape");

    // Complexity target is estimated from the data once, up front. A target
    // of exactly zero (all-DC magnitude) makes the band degenerate; the
    // sub-loop is skipped in that case.
    const double zeta_target = guided ? complexity_fourier(m) : 0.0;

    ComplexField g = init;
    IterationTrace trace;
    trace.reserve(static_cast<std::size_t>(cfg.max_outer_iters));

    for (int n = 1; n <= cfg.max_outer_iters; ++n) {
        const auto start = std::chrono::steady_clock::now();
        ComplexField proj = fourier_project(g, m);
        g = hio_update(g, proj, c, cfg.beta, cfg.hio_variant);
        int substeps = 0;
        std::optional<double> guided_zeta;
        if (guided && zeta_target > 0.0) {
            GuidedTvResult sub = complexity_guided_tv(g, c, zeta_target, cfg);
            g = std::move(sub.field);
            substeps = sub.substeps;
            guided_zeta = sub.zeta;
        }
        const double elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        trace.push_back({n, guided_zeta.value_or(complexity_image(g)),
                         truth != nullptr
                             ? std::optional<double>(error_metric(g, *truth, cfg.registration))
                             : std::nullopt,
                         tv(g), substeps, elapsed_ms});
    }
    return {std::move(g), std::move(trace)};
}

}  // namespace detail

/// Plain Fienup HIO: fourier_project then hio_update, cfg.max_outer_iters
/// times from init. Deterministic given (m, c, cfg, init).
inline RunResult run_hio(const MagnitudeData& m, const SupportMask& c, const RunConfig& cfg,
                         const ComplexField& init, const ComplexField* truth = nullptr) {
    return detail::run_engine(m, c, cfg, init, truth, false);
}

/// Complexity-guided phase retrieval: the HIO iteration followed by the
/// TV sub-loop that drives the iterate's complexity into the band around the
/// target estimated from the magnitude data. The sub-loop output becomes the
/// next iterate; tv_substeps in the trace records the per-iteration count.
inline RunResult run_cgpr(const MagnitudeData& m, const SupportMask& c, const RunConfig& cfg,
                          const ComplexField& init, const ComplexField* truth = nullptr) {
    return detail::run_engine(m, c, cfg, init, truth, true);
}

}  // namespace cgpr
