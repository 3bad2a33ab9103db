#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cgpr/field.hpp"

namespace cgpr {

/// Measured Fourier magnitude |G| with the image-domain sampling intervals the
/// spectrum corresponds to. Values are non-negative; the index->frequency map
/// is f_x = k/(rows*dx), f_y = l/(cols*dy).
class MagnitudeData {
public:
    MagnitudeData(std::size_t rows, std::size_t cols, double dx = 1.0, double dy = 1.0)
        : rows_(rows), cols_(cols), dx_(dx), dy_(dy), values_(rows * cols, 0.0) {
        validate();
    }

    MagnitudeData(std::size_t rows, std::size_t cols, std::vector<double> values,
                  double dx = 1.0, double dy = 1.0)
        : rows_(rows), cols_(cols), dx_(dx), dy_(dy), values_(std::move(values)) {
        validate();
        if (values_.size() != rows_ * cols_)
            throw std::invalid_argument("MagnitudeData: value count does not match dimensions");
        for (double v : values_)
            if (!(v >= 0.0))
                throw std::invalid_argument("MagnitudeData: values must be non-negative");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return values_.size(); }
    double dx() const { return dx_; }
    double dy() const { return dy_; }

    double& operator()(std::size_t k, std::size_t l) { return values_[k * cols_ + l]; }
    double operator()(std::size_t k, std::size_t l) const { return values_[k * cols_ + l]; }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    const std::vector<double>& values() const { return values_; }

    bool same_shape(const ComplexField& f) const {
        return rows_ == f.rows() && cols_ == f.cols();
    }

private:
    void validate() const {
        if (rows_ == 0 || cols_ == 0)
            throw std::invalid_argument("MagnitudeData: dimensions must be positive");
        if (!(dx_ > 0.0) || !(dy_ > 0.0))
            throw std::invalid_argument("MagnitudeData: sampling intervals must be positive");
    }

    std::size_t rows_;
    std::size_t cols_;
    double dx_;
    double dy_;
    std::vector<double> values_;
};

/// Complexity parameter of an image-domain field:
/// zeta = sum_i (|grad_x g_i|^2 + |grad_y g_i|^2) with circular central
/// differences. Zero iff the field is constant.
inline double complexity_image(const ComplexField& f) {
    const std::size_t rows = f.rows(), cols = f.cols();
    const double sx = 1.0 / (2.0 * f.dx());
    const double sy = 1.0 / (2.0 * f.dy());
    double zeta = 0.0;
    for (std::size_t x = 0; x < rows; ++x) {
        const std::size_t xp = (x + 1 == rows) ? 0 : x + 1;
        const std::size_t xm = (x == 0) ? rows - 1 : x - 1;
        for (std::size_t y = 0; y < cols; ++y) {
            const std::size_t yp = (y + 1 == cols) ? 0 : y + 1;
            const std::size_t ym = (y == 0) ? cols - 1 : y - 1;
            zeta += std::norm((f(xp, y) - f(xm, y)) * sx) + std::norm((f(x, yp) - f(x, ym)) * sy);
        }
    }
    return zeta;
}

/// Same complexity parameter computed from Fourier magnitude alone via the
/// modified wave numbers sin(2 pi f Delta)/Delta:
///   zeta = 1/(rows*cols) * sum_{k,l} [sin^2(2 pi k/rows)/dx^2
///                                   + sin^2(2 pi l/cols)/dy^2] * m[k,l]^2.
/// The leading 1/(rows*cols) is Parseval's factor under the unnormalized
/// forward DFT convention of dft2. Index aliasing needs no fftshift: sin^2 is
/// symmetric under k -> rows-k.
inline double complexity_fourier(const MagnitudeData& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> wx(rows), wy(cols);
    for (std::size_t k = 0; k < rows; ++k) {
        const double s = std::sin(two_pi * static_cast<double>(k) / static_cast<double>(rows));
        wx[k] = s * s / (m.dx() * m.dx());
    }
    for (std::size_t l = 0; l < cols; ++l) {
        const double s = std::sin(two_pi * static_cast<double>(l) / static_cast<double>(cols));
        wy[l] = s * s / (m.dy() * m.dy());
    }
    double zeta = 0.0;
    for (std::size_t k = 0; k < rows; ++k)
        for (std::size_t l = 0; l < cols; ++l) {
            const double v = m(k, l);
            zeta += (wx[k] + wy[l]) * v * v;
        }
    return zeta / static_cast<double>(rows * cols);
}

/// Relative stopping band for the complexity-guided sub-loop.
struct ToleranceBand {
    double low;
    double high;

    bool contains(double zeta) const { return zeta >= low && zeta <= high; }
};

/// Band (zeta*(1-rel_tol), zeta*(1+rel_tol)) around the target complexity.
inline ToleranceBand complexity_tolerance_band(double zeta_target, double rel_tol) {
    if (!(zeta_target > 0.0))
        throw std::invalid_argument("complexity_tolerance_band: target must be positive");
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw std::invalid_argument("complexity_tolerance_band: rel_tol must be in (0,1)");
    return {zeta_target * (1.0 - rel_tol), zeta_target * (1.0 + rel_tol)};
}

}  // namespace cgpr
