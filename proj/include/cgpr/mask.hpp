#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cgpr {

/// Object-domain support constraint: true marks pixels inside the support C.
/// Must contain at least one inside and one outside pixel, otherwise the HIO
/// feedback step has nothing to act on.
class SupportMask {
public:
    SupportMask(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> inside)
        : rows_(rows), cols_(cols), inside_(std::move(inside)) {
        if (rows_ == 0 || cols_ == 0)
            throw std::invalid_argument("SupportMask: dimensions must be positive");
        if (inside_.size() != rows_ * cols_)
            throw std::invalid_argument("SupportMask: flag count does not match dimensions");
        std::size_t in = 0;
        for (std::uint8_t v : inside_) in += (v != 0);
        if (in == 0 || in == inside_.size())
            throw std::invalid_argument("SupportMask: need at least one pixel inside and one outside");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return inside_.size(); }

    bool inside(std::size_t x, std::size_t y) const { return inside_[x * cols_ + y] != 0; }
    bool inside(std::size_t i) const { return inside_[i] != 0; }

    const std::vector<std::uint8_t>& flags() const { return inside_; }

    std::size_t count_inside() const {
        std::size_t n = 0;
        for (std::uint8_t v : inside_) n += (v != 0);
        return n;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint8_t> inside_;
};

}  // namespace cgpr
