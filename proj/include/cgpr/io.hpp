#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "cgpr/complexity.hpp"
#include "cgpr/field.hpp"
#include "cgpr/mask.hpp"
#include "cgpr/solver.hpp"

namespace cgpr {

// FieldFile binary container, little-endian throughout:
//   bytes 0..7   magic "CGPRFLD1"
//   bytes 8..15  rows  (u64)
//   bytes 16..23 cols  (u64)
//   bytes 24..31 dx    (f64)
//   bytes 32..39 dy    (f64)
//   byte  40     kind  (0 complex field, 1 real magnitude, 2 mask)
//   payload      rows*cols * (16 | 8 | 1) bytes
// Complex payloads are row-major interleaved re,im f64 pairs; magnitudes are
// row-major f64; masks are single bytes 0/1.

enum class PayloadKind : std::uint8_t { complex_field = 0, magnitude = 1, mask = 2 };

using FieldPayload = std::variant<ComplexField, MagnitudeData, SupportMask>;

namespace detail {

inline constexpr char kFieldMagic[8] = {'C', 'G', 'P', 'R', 'F', 'L', 'D', '1'};
inline constexpr std::size_t kHeaderBytes = 41;
inline constexpr std::uint64_t kMaxDim = 1u << 24;

inline void put_u64(std::vector<std::uint8_t>& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_f64(std::vector<std::uint8_t>& buf, double v) {
    put_u64(buf, std::bit_cast<std::uint64_t>(v));
}

inline std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

inline double get_f64(const std::uint8_t* p) {
    return std::bit_cast<double>(get_u64(p));
}

inline std::vector<std::uint8_t> header(std::uint64_t rows, std::uint64_t cols, double dx,
                                        double dy, PayloadKind kind) {
    std::vector<std::uint8_t> buf;
    buf.insert(buf.end(), std::begin(kFieldMagic), std::end(kFieldMagic));
    put_u64(buf, rows);
    put_u64(buf, cols);
    put_f64(buf, dx);
    put_f64(buf, dy);
    buf.push_back(static_cast<std::uint8_t>(kind));
    return buf;
}

inline void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoFailure("write failed: " + path.string());
}

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open for reading: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoFailure("read failed: " + path.string());
    return bytes;
}

}  // namespace detail

inline void write_field(const std::filesystem::path& path, const ComplexField& f) {
    auto bytes = detail::header(f.rows(), f.cols(), f.dx(), f.dy(), PayloadKind::complex_field);
    bytes.reserve(bytes.size() + f.size() * 16);
    for (const Complex& v : f.samples()) {
        detail::put_f64(bytes, v.real());
        detail::put_f64(bytes, v.imag());
    }
    detail::write_bytes(path, bytes);
}

inline void write_field(const std::filesystem::path& path, const MagnitudeData& m) {
    auto bytes = detail::header(m.rows(), m.cols(), m.dx(), m.dy(), PayloadKind::magnitude);
    bytes.reserve(bytes.size() + m.size() * 8);
    for (double v : m.values()) detail::put_f64(bytes, v);
    detail::write_bytes(path, bytes);
}

inline void write_field(const std::filesystem::path& path, const SupportMask& c) {
    auto bytes = detail::header(c.rows(), c.cols(), 1.0, 1.0, PayloadKind::mask);
    bytes.reserve(bytes.size() + c.size());
    for (std::uint8_t v : c.flags()) bytes.push_back(v ? 1 : 0);
    detail::write_bytes(path, bytes);
}

/// Read any of the three payload kinds back, bit-exactly.
inline FieldPayload read_field(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = detail::read_bytes(path);
    if (bytes.size() < detail::kHeaderBytes)
        throw TruncatedPayload("field file shorter than header: " + path.string());
    if (!std::equal(std::begin(detail::kFieldMagic), std::end(detail::kFieldMagic), bytes.begin()))
        throw BadMagic("bad magic in field file: " + path.string());

    const std::uint64_t rows = detail::get_u64(bytes.data() + 8);
    const std::uint64_t cols = detail::get_u64(bytes.data() + 16);
    const double dx = detail::get_f64(bytes.data() + 24);
    const double dy = detail::get_f64(bytes.data() + 32);
    const std::uint8_t kind = bytes[40];
    if (kind > 2) throw UnknownKind("unknown payload kind in field file: " + path.string());
    if (rows == 0 || cols == 0 || rows > detail::kMaxDim || cols > detail::kMaxDim)
        throw TruncatedPayload("implausible dimensions in field file: " + path.string());

    const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    const std::size_t unit = kind == 0 ? 16 : kind == 1 ? 8 : 1;
    if (bytes.size() != detail::kHeaderBytes + n * unit)
        throw TruncatedPayload("payload length does not match header: " + path.string());

    const std::uint8_t* p = bytes.data() + detail::kHeaderBytes;
    switch (static_cast<PayloadKind>(kind)) {
        case PayloadKind::complex_field: {
            ComplexField f(rows, cols, dx, dy);
            for (std::size_t i = 0; i < n; ++i)
                f[i] = Complex{detail::get_f64(p + 16 * i), detail::get_f64(p + 16 * i + 8)};
            return f;
        }
        case PayloadKind::magnitude: {
            std::vector<double> values(n);
            for (std::size_t i = 0; i < n; ++i) values[i] = detail::get_f64(p + 8 * i);
            return MagnitudeData(rows, cols, std::move(values), dx, dy);
        }
        default: {
            std::vector<std::uint8_t> flags(p, p + n);
            return SupportMask(rows, cols, std::move(flags));
        }
    }
}

/// Typed readers for callers that know which payload they expect. A file of
/// a different (valid) kind raises UnknownKind with the expectation named.
inline ComplexField read_complex_field(const std::filesystem::path& path) {
    FieldPayload payload = read_field(path);
    if (auto* f = std::get_if<ComplexField>(&payload)) return std::move(*f);
    throw UnknownKind("expected a complex field payload: " + path.string());
}

inline MagnitudeData read_magnitude(const std::filesystem::path& path) {
    FieldPayload payload = read_field(path);
    if (auto* m = std::get_if<MagnitudeData>(&payload)) return std::move(*m);
    throw UnknownKind("expected a magnitude payload: " + path.string());
}

inline SupportMask read_mask(const std::filesystem::path& path) {
    FieldPayload payload = read_field(path);
    if (auto* c = std::get_if<SupportMask>(&payload)) return std::move(*c);
    throw UnknownKind("expected a mask payload: " + path.string());
}

namespace detail {

// %.17g round-trips IEEE doubles exactly through decimal.
inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

/// Write an iteration trace as CSV. The error_sq column is kept but left
/// empty for runs without ground truth.
inline void write_trace_csv(const IterationTrace& trace, const std::filesystem::path& path) {
    if (trace.empty()) throw std::invalid_argument("write_trace_csv: trace is empty");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoFailure("cannot open for writing: " + path.string());
    out << "iter,zeta,error_sq,tv,tv_substeps,elapsed_ms\n";
    for (const TraceRecord& rec : trace) {
        out << rec.iter << ',' << detail::fmt17(rec.zeta) << ','
            << (rec.error_sq ? detail::fmt17(*rec.error_sq) : std::string{}) << ','
            << detail::fmt17(rec.tv_value) << ',' << rec.tv_substeps << ','
            << detail::fmt17(rec.elapsed_ms) << '\n';
    }
    if (!out) throw IoFailure("write failed: " + path.string());
}

enum class GrayChannel { amplitude, phase };

/// 8-bit binary portable graymap (P5, maxval 255) of one channel of a field.
/// Amplitude maps [min,max] -> [0,255]; a degenerate range maps to all zeros.
/// Phase maps [-pi,pi] -> [0,255].
inline void export_grayscale(const ComplexField& f, GrayChannel channel,
                             const std::filesystem::path& path) {
    std::vector<double> values(f.size());
    if (channel == GrayChannel::amplitude) {
        for (std::size_t i = 0; i < f.size(); ++i) values[i] = std::abs(f[i]);
    } else {
        for (std::size_t i = 0; i < f.size(); ++i) values[i] = std::arg(f[i]);
    }

    double lo, hi;
    if (channel == GrayChannel::amplitude) {
        const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
        lo = *mn;
        hi = *mx;
    } else {
        lo = -std::numbers::pi;
        hi = std::numbers::pi;
    }

    std::vector<std::uint8_t> pixels(f.size());
    if (hi > lo) {
        const double scale = 255.0 / (hi - lo);
        for (std::size_t i = 0; i < f.size(); ++i)
            pixels[i] = static_cast<std::uint8_t>(
                std::clamp(std::lround((values[i] - lo) * scale), 0l, 255l));
    }
    // degenerate range: all zeros by convention

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open for writing: " + path.string());
    out << "P5\n" << f.cols() << ' ' << f.rows() << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
    if (!out) throw IoFailure("write failed: " + path.string());
}

}  // namespace cgpr
