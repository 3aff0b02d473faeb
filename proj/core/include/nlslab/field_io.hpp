#pragma once

#include <filesystem>
#include <iosfwd>

#include "nlslab/grid.hpp"

namespace nlslab {

/// Binary field dump ("NLSF").
///
/// Layout, all little-endian:
///   magic   4 bytes  "NLSF"
///   version u32      (currently 1)
///   nx, ny  u32 x 2
///   kind    u8       0 = real, 1 = complex
///   data    nx*ny pairs of f64 (re, im), x fastest
inline constexpr std::uint32_t kFieldDumpVersion = 1;

void write_field(std::ostream& out, const Field& field);
Field read_field(std::istream& in);

void write_field(const std::filesystem::path& path, const Field& field);
Field read_field(const std::filesystem::path& path);

}  // namespace nlslab
