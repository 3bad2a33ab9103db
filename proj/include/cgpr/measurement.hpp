#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "cgpr/complexity.hpp"
#include "cgpr/field.hpp"

namespace cgpr {

/// Poisson light level. photons_per_pixel is the MEAN photon count across the
/// detector after scaling: peak-normalization would starve everything but the
/// DC peak of photons, since the Fourier DC term dominates the intensity.
struct NoiseSpec {
    double photons_per_pixel;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(photons_per_pixel > 0.0))
            throw std::invalid_argument("NoiseSpec: photons_per_pixel must be positive");
    }
};

/// Noiseless forward model |dft2(g)| with grid metadata carried over.
inline MagnitudeData forward_magnitude(const ComplexField& g) {
    const ComplexField spectrum = dft2(g);
    std::vector<double> values(spectrum.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = std::abs(spectrum[i]);
    return MagnitudeData(g.rows(), g.cols(), std::move(values), g.dx(), g.dy());
}

/// Poisson-corrupt a magnitude at the given light level. Intensity I = m^2 is
/// scaled by s = photons_per_pixel / mean(I), counts K_i ~ Poisson(s*I_i) are
/// drawn pixel by pixel from the seeded generator, and sqrt(K_i/s) is returned
/// so the expectation of the returned intensity equals I pixelwise.
inline MagnitudeData apply_poisson(const MagnitudeData& m, const NoiseSpec& spec) {
    spec.validate();
    double total = 0.0;
    for (double v : m.values()) total += v * v;
    if (total == 0.0) throw AllZeroInput("apply_poisson: magnitude data is identically zero");

    const double mean_intensity = total / static_cast<double>(m.size());
    const double s = spec.photons_per_pixel / mean_intensity;

    std::mt19937_64 rng(spec.seed);
    std::vector<double> noisy(m.size());
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        const double lambda = s * m[i] * m[i];
        if (lambda > 0.0) {
            std::poisson_distribution<long long> poisson(lambda);
            noisy[i] = std::sqrt(static_cast<double>(poisson(rng)) / s);
        } else {
            noisy[i] = 0.0;
        }
    }
    return MagnitudeData(m.rows(), m.cols(), std::move(noisy), m.dx(), m.dy());
}

}  // namespace cgpr
