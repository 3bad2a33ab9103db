#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <new>
#include <span>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include <fftw3.h>

#include "cgpr/errors.hpp"

namespace cgpr {

using Complex = std::complex<double>;

/// 2D complex field on a rectangular grid, row-major. Axis 0 ("x") runs over
/// rows with sampling interval dx, axis 1 ("y") over columns with dy. The same
/// container holds image-domain objects and their spectra; for a spectrum the
/// index k along axis 0 corresponds to frequency f_x = k/(rows*dx), with the
/// upper half aliasing negative frequencies.
class ComplexField {
public:
    ComplexField(std::size_t rows, std::size_t cols, double dx = 1.0, double dy = 1.0)
        : rows_(rows), cols_(cols), dx_(dx), dy_(dy), samples_(rows * cols) {
        if (rows_ < 2 || cols_ < 2)
            throw std::invalid_argument("ComplexField: need at least 2 samples per axis");
        if (!(dx_ > 0.0) || !(dy_ > 0.0))
            throw std::invalid_argument("ComplexField: sampling intervals must be positive");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return samples_.size(); }
    double dx() const { return dx_; }
    double dy() const { return dy_; }

    Complex& operator()(std::size_t x, std::size_t y) { return samples_[x * cols_ + y]; }
    const Complex& operator()(std::size_t x, std::size_t y) const { return samples_[x * cols_ + y]; }

    Complex& operator[](std::size_t i) { return samples_[i]; }
    const Complex& operator[](std::size_t i) const { return samples_[i]; }

    std::span<Complex> samples() { return samples_; }
    std::span<const Complex> samples() const { return samples_; }

    void fill(Complex v) { std::fill(samples_.begin(), samples_.end(), v); }

    bool same_shape(const ComplexField& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    double dx_;
    double dy_;
    std::vector<Complex> samples_;
};

/// Central-difference gradients of a field; gx and gy share the source shape.
struct GradientPair {
    ComplexField gx;
    ComplexField gy;
};

namespace detail {

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};
using FftwArray = std::unique_ptr<fftw_complex[], FftwFree>;

inline FftwArray fftw_array(std::size_t n) {
    auto* p = static_cast<fftw_complex*>(fftw_malloc(n * sizeof(fftw_complex)));
    if (p == nullptr) throw std::bad_alloc{};
    return FftwArray(p);
}

// FFTW's planner is not thread-safe; plan execution on distinct buffers is.
// One plan per (rows, cols, direction) is created under a lock on
// fftw_malloc-aligned scratch and reused through the new-array execute
// interface, which also keeps results bit-identical between calls.
class PlanCache {
public:
    static fftw_plan get(int rows, int cols, int sign) {
        static PlanCache cache;
        std::scoped_lock lock(cache.mutex_);
        const auto key = std::make_tuple(rows, cols, sign);
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;
        const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
        FftwArray in = fftw_array(n);
        FftwArray out = fftw_array(n);
        fftw_plan plan = fftw_plan_dft_2d(rows, cols, in.get(), out.get(), sign, FFTW_ESTIMATE);
        if (plan == nullptr) throw Error("fftw_plan_dft_2d failed");
        cache.plans_.emplace(key, plan);
        return plan;
    }

private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
    std::mutex mutex_;
};

inline ComplexField transform(const ComplexField& f, int sign) {
    const std::size_t n = f.size();
    FftwArray in = fftw_array(n);
    FftwArray out = fftw_array(n);
    // std::complex<double> is layout-compatible with double[2] (= fftw_complex).
    static_assert(sizeof(fftw_complex) == sizeof(Complex));
    std::memcpy(in.get(), reinterpret_cast<const double*>(f.samples().data()),
                n * sizeof(Complex));
    fftw_plan plan = PlanCache::get(static_cast<int>(f.rows()), static_cast<int>(f.cols()), sign);
    fftw_execute_dft(plan, in.get(), out.get());
    ComplexField result(f.rows(), f.cols(), f.dx(), f.dy());
    std::memcpy(reinterpret_cast<double*>(result.samples().data()), out.get(),
                n * sizeof(Complex));
    return result;
}

}  // namespace detail

/// Unnormalized forward DFT: G[k,l] = sum_{x,y} g[x,y] exp(-i2pi(kx/rows + ly/cols)).
/// dx/dy metadata is carried through unchanged.
inline ComplexField dft2(const ComplexField& f) {
    return detail::transform(f, FFTW_FORWARD);
}

/// Inverse DFT with 1/(rows*cols) normalization, so idft2(dft2(f)) == f.
inline ComplexField idft2(const ComplexField& F) {
    ComplexField f = detail::transform(F, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(f.size());
    for (Complex& v : f.samples()) v *= scale;
    return f;
}

/// Circular central differences along both axes:
/// gx[x,y] = (f[x+1 mod rows, y] - f[x-1 mod rows, y]) / (2 dx), same for gy.
/// Periodic wraparound keeps the image-domain and Fourier-domain complexity
/// estimates in exact agreement.
inline GradientPair grad_central(const ComplexField& f) {
    const std::size_t rows = f.rows(), cols = f.cols();
    GradientPair g{ComplexField(rows, cols, f.dx(), f.dy()),
                   ComplexField(rows, cols, f.dx(), f.dy())};
    const double sx = 1.0 / (2.0 * f.dx());
    const double sy = 1.0 / (2.0 * f.dy());
    for (std::size_t x = 0; x < rows; ++x) {
        const std::size_t xp = (x + 1 == rows) ? 0 : x + 1;
        const std::size_t xm = (x == 0) ? rows - 1 : x - 1;
        for (std::size_t y = 0; y < cols; ++y) {
            const std::size_t yp = (y + 1 == cols) ? 0 : y + 1;
            const std::size_t ym = (y == 0) ? cols - 1 : y - 1;
            g.gx(x, y) = (f(xp, y) - f(xm, y)) * sx;
            g.gy(x, y) = (f(x, yp) - f(x, ym)) * sy;
        }
    }
    return g;
}

/// Total energy sum_i |f_i|^2.
inline double power(const ComplexField& f) {
    double s = 0.0;
    for (const Complex& v : f.samples()) s += std::norm(v);
    return s;
}

/// Field-wide Euclidean norm sqrt(sum |f_i|^2).
inline double norm_l2(const ComplexField& f) {
    return std::sqrt(power(f));
}

/// Inner product sum_i a_i * conj(b_i).
inline Complex inner(const ComplexField& a, const ComplexField& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("inner: fields differ in shape");
    Complex s{0.0, 0.0};
    const auto av = a.samples();
    const auto bv = b.samples();
    for (std::size_t i = 0; i < av.size(); ++i) s += av[i] * std::conj(bv[i]);
    return s;
}

}  // namespace cgpr
