#pragma once

#include <array>
#include <bit>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "polariton/errors.hpp"
#include "polariton/numeric/state.hpp"

namespace polariton {

// Flat little-endian dump of a WavepacketState; byte layout in docs/checkpoint-format.md.
inline constexpr std::array<char, 4> checkpoint_magic{'P', 'L', 'T', 'N'};
inline constexpr std::uint32_t checkpoint_version = 1;

namespace detail {

template <typename U>
void put_le(std::string& buf, U v) {
    for (std::size_t b = 0; b < sizeof(U); ++b) buf.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}
inline void put_f64(std::string& buf, double v) { put_le(buf, std::bit_cast<std::uint64_t>(v)); }

template <typename U>
U get_le(const std::string& buf, std::size_t& pos) {
    if (pos + sizeof(U) > buf.size()) throw ConfigError("checkpoint: truncated file");
    U v = 0;
    for (std::size_t b = 0; b < sizeof(U); ++b)
        v |= static_cast<U>(static_cast<unsigned char>(buf[pos + b])) << (8 * b);
    pos += sizeof(U);
    return v;
}
inline double get_f64(const std::string& buf, std::size_t& pos) {
    return std::bit_cast<double>(get_le<std::uint64_t>(buf, pos));
}

}  // namespace detail

inline std::string serialize_checkpoint(const WavepacketState& s) {
    std::string buf(checkpoint_magic.begin(), checkpoint_magic.end());
    const auto& g = s.grid;
    detail::put_le<std::uint32_t>(buf, checkpoint_version);
    detail::put_le<std::uint32_t>(buf, g.two_dimensional() ? 2u : 1u);
    detail::put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(g.nx()));
    detail::put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(g.ny()));
    detail::put_f64(buf, g.dx());
    detail::put_f64(buf, g.two_dimensional() ? g.dy() : 0.0);
    detail::put_f64(buf, g.x(0));
    detail::put_f64(buf, g.y(0));
    detail::put_f64(buf, s.time);
    detail::put_f64(buf, s.z_center);
    for (const auto& v : s.psi) {
        detail::put_f64(buf, v.real());
        detail::put_f64(buf, v.imag());
    }
    return buf;
}

inline WavepacketState deserialize_checkpoint(const std::string& buf) {
    if (buf.size() < 4 || std::memcmp(buf.data(), checkpoint_magic.data(), 4) != 0)
        throw ConfigError("checkpoint: bad magic");
    std::size_t pos = 4;
    const auto version = detail::get_le<std::uint32_t>(buf, pos);
    if (version != checkpoint_version) throw ConfigError("checkpoint: unsupported version");
    const auto ndim = detail::get_le<std::uint32_t>(buf, pos);
    const auto nx = detail::get_le<std::uint32_t>(buf, pos);
    const auto ny = detail::get_le<std::uint32_t>(buf, pos);
    const double dx = detail::get_f64(buf, pos);
    const double dy = detail::get_f64(buf, pos);
    const double x0 = detail::get_f64(buf, pos);
    const double y0 = detail::get_f64(buf, pos);
    if (ndim != 1 && ndim != 2) throw ConfigError("checkpoint: ndim must be 1 or 2");
    if (ndim == 1 && ny != 1) throw ConfigError("checkpoint: 1-D dump with ny != 1");
    auto grid = ndim == 1 ? TransverseGrid::one_d(nx, 0.5 * nx * dx)
                          : TransverseGrid::two_d(nx, 0.5 * nx * dx, ny, 0.5 * ny * dy);
    if (std::abs(grid.x(0) - x0) > 1e-12 * std::abs(x0) || std::abs(grid.y(0) - y0) > 1e-12 * std::abs(y0))
        throw ConfigError("checkpoint: grid origin is not the symmetric [-X, X) layout");
    WavepacketState s(grid);
    s.time = detail::get_f64(buf, pos);
    s.z_center = detail::get_f64(buf, pos);
    for (auto& v : s.psi) {
        const double re = detail::get_f64(buf, pos);
        const double im = detail::get_f64(buf, pos);
        v = {re, im};
    }
    if (pos != buf.size()) throw ConfigError("checkpoint: trailing bytes");
    s.norm = discrete_norm(s);
    return s;
}

inline void write_checkpoint(const std::string& path, const WavepacketState& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("checkpoint: cannot open " + path);
    const auto buf = serialize_checkpoint(s);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw ConfigError("checkpoint: write failed for " + path);
}

inline WavepacketState read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("checkpoint: cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_checkpoint(buf);
}

}  // namespace polariton
