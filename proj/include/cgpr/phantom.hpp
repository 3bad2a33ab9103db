#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cgpr/field.hpp"
#include "cgpr/mask.hpp"

namespace cgpr {

/// Pattern choices for the binary-phase region inside the support. Amplitude
/// is 1 on every support pixel regardless of pattern; the pattern decides
/// which pixels carry the phase step.
struct GlyphPattern {
    std::string text = "PHASE";
};

struct CheckerPattern {
    int block = 8;
};

struct DiskPattern {
    double radius_frac = 0.5;
};

using PhantomPattern = std::variant<GlyphPattern, CheckerPattern, DiskPattern>;

/// Unit-amplitude binary phase object on a centered rectangular support inside
/// a larger computational window. The support must satisfy the Nyquist margin
/// h <= rows/2, w <= cols/2 so the Fourier intensity is adequately sampled.
struct PhantomSpec {
    std::size_t window_rows = 600;
    std::size_t window_cols = 600;
    std::size_t support_rows = 280;
    std::size_t support_cols = 280;
    double phase_step = 2.0 * std::numbers::pi / 3.0;
    PhantomPattern pattern = GlyphPattern{};
    std::uint64_t seed = 0;  // reserved for pattern jitter; current patterns ignore it
    double dx = 1.0;
    double dy = 1.0;
};

namespace detail {

// 5x7 block font, one byte per row, bit 4 = leftmost column.
inline const std::uint8_t* glyph_rows(char c) {
    static constexpr std::array<std::array<std::uint8_t, 7>, 26> letters = {{
        {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11},  // A
        {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E},  // B
        {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E},  // C
        {0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E},  // D
        {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F},  // E
        {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10},  // F
        {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0E},  // G
        {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11},  // H
        {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E},  // I
        {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C},  // J
        {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11},  // K
        {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F},  // L
        {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11},  // M
        {0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11},  // N
        {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E},  // O
        {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10},  // P
        {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D},  // Q
        {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11},  // R
        {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E},  // S
        {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04},  // T
        {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E},  // U
        {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04},  // V
        {0x11, 0x11, 0x11, 0x15, 0x15, 0x1B, 0x11},  // W
        {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11},  // X
        {0x11, 0x11, 0x0A, 0x04, 0x04, 0x04, 0x04},  // Y
        {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F},  // Z
    }};
    static constexpr std::array<std::array<std::uint8_t, 7>, 10> digits = {{
        {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E},  // 0
        {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E},  // 1
        {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F},  // 2
        {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E},  // 3
        {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02},  // 4
        {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E},  // 5
        {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E},  // 6
        {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08},  // 7
        {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E},  // 8
        {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C},  // 9
    }};
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u >= 'A' && u <= 'Z') return letters[static_cast<std::size_t>(u - 'A')].data();
    if (u >= '0' && u <= '9') return digits[static_cast<std::size_t>(u - '0')].data();
    return nullptr;  // unsupported characters render as blanks
}

// True when support-relative pixel (r, c) is on a glyph stroke. The text block
// (7 cells tall, 6*len-1 wide) is uniformly scaled into the support and
// centered; pixels are sampled nearest-neighbor.
inline bool glyph_hit(const std::string& text, std::size_t r, std::size_t c,
                      std::size_t h, std::size_t w) {
    if (text.empty()) return false;
    const double cells_w = 6.0 * static_cast<double>(text.size()) - 1.0;
    const double cells_h = 7.0;
    const double scale = std::min(static_cast<double>(h) / cells_h,
                                  static_cast<double>(w) / cells_w);
    const double off_r = (static_cast<double>(h) - scale * cells_h) / 2.0;
    const double off_c = (static_cast<double>(w) - scale * cells_w) / 2.0;
    const double gr = (static_cast<double>(r) + 0.5 - off_r) / scale;
    const double gc = (static_cast<double>(c) + 0.5 - off_c) / scale;
    if (gr < 0.0 || gr >= cells_h || gc < 0.0 || gc >= cells_w) return false;
    const std::size_t cell_r = static_cast<std::size_t>(gr);
    const std::size_t cell_c = static_cast<std::size_t>(gc);
    const std::size_t glyph_idx = cell_c / 6;
    const std::size_t col_in_glyph = cell_c % 6;
    if (col_in_glyph == 5) return false;  // inter-glyph gap
    const std::uint8_t* rows = glyph_rows(text[glyph_idx]);
    if (rows == nullptr) return false;
    return (rows[cell_r] >> (4 - col_in_glyph)) & 1u;
}

}  // namespace detail

/// Phantom generation result: the complex object and its support mask.
struct Phantom {
    ComplexField object;
    SupportMask mask;
};

/// Build a unit-amplitude binary phase object: |g| = 1 on the centered support
/// rectangle, 0 outside; the phase inside takes exactly the two values
/// {0, phase_step} laid out by the pattern. The support origin is
/// floor((window - extent)/2) on each axis so masks are bit-reproducible.
inline Phantom make_phantom(const PhantomSpec& spec) {
    if (spec.window_rows < 2 || spec.window_cols < 2)
        throw std::invalid_argument("PhantomSpec: window must be at least 2x2");
    if (spec.support_rows == 0 || spec.support_cols == 0)
        throw std::invalid_argument("PhantomSpec: support extent must be positive");
    if (!(spec.phase_step > 0.0 && spec.phase_step < 2.0 * std::numbers::pi))
        throw std::invalid_argument("PhantomSpec: phase_step must lie in (0, 2pi)");
    if (2 * spec.support_rows > spec.window_rows || 2 * spec.support_cols > spec.window_cols)
        throw NyquistViolation("make_phantom: support exceeds half of the computational window");
    if (const auto* c = std::get_if<CheckerPattern>(&spec.pattern); c && c->block < 1)
        throw std::invalid_argument("CheckerPattern: block must be a positive integer");
    if (const auto* d = std::get_if<DiskPattern>(&spec.pattern);
        d && !(d->radius_frac > 0.0 && d->radius_frac <= 1.0))
        throw std::invalid_argument("DiskPattern: radius_frac must lie in (0,1]");

    const std::size_t rows = spec.window_rows, cols = spec.window_cols;
    const std::size_t h = spec.support_rows, w = spec.support_cols;
    const std::size_t or_ = (rows - h) / 2;
    const std::size_t oc = (cols - w) / 2;

    ComplexField g(rows, cols, spec.dx, spec.dy);
    std::vector<std::uint8_t> flags(rows * cols, 0);

    const Complex level0{1.0, 0.0};
    const Complex level1 = std::polar(1.0, spec.phase_step);

    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            const bool stepped = std::visit(
                [&](const auto& pat) -> bool {
                    using T = std::decay_t<decltype(pat)>;
                    if constexpr (std::is_same_v<T, GlyphPattern>) {
                        return detail::glyph_hit(pat.text, r, c, h, w);
                    } else if constexpr (std::is_same_v<T, CheckerPattern>) {
                        const std::size_t b = static_cast<std::size_t>(pat.block);
                        return ((r / b) + (c / b)) % 2 == 1;
                    } else {
                        const double cr = static_cast<double>(h - 1) / 2.0;
                        const double cc = static_cast<double>(w - 1) / 2.0;
                        const double radius =
                            pat.radius_frac * static_cast<double>(std::min(h, w)) / 2.0;
                        const double dr = static_cast<double>(r) - cr;
                        const double dc = static_cast<double>(c) - cc;
                        return dr * dr + dc * dc <= radius * radius;
                    }
                },
                spec.pattern);
            g(or_ + r, oc + c) = stepped ? level1 : level0;
            flags[(or_ + r) * cols + (oc + c)] = 1;
        }
    }

    return {std::move(g), SupportMask(rows, cols, std::move(flags))};
}

/// Twin image: the conjugate of f reflected through the origin with circular
/// indexing, out[x,y] = conj(f[(-x) mod rows, (-y) mod cols]). Shares the
/// Fourier magnitude of f and is an involution.
inline ComplexField twin(const ComplexField& f) {
    const std::size_t rows = f.rows(), cols = f.cols();
    ComplexField out(rows, cols, f.dx(), f.dy());
    for (std::size_t x = 0; x < rows; ++x) {
        const std::size_t rx = (rows - x) % rows;
        for (std::size_t y = 0; y < cols; ++y) {
            const std::size_t ry = (cols - y) % cols;
            out(x, y) = std::conj(f(rx, ry));
        }
    }
    return out;
}

}  // namespace cgpr
