#include "nlslab/field_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "nlslab/error.hpp"

namespace nlslab {

namespace {

constexpr std::array<char, 4> kMagic{'N', 'L', 'S', 'F'};

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<unsigned char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
  if (!in) throw Error(ErrorKind::io, "NLSF: truncated stream");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_field(std::ostream& out, const Field& field) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kFieldDumpVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(field.nx()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(field.ny()));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(field.kind()));
  for (const Complex& z : field.values()) {
    put_le<double>(out, z.real());
    put_le<double>(out, z.imag());
  }
  if (!out) throw Error(ErrorKind::io, "NLSF: write failed");
}

Field read_field(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error(ErrorKind::io, "NLSF: bad magic");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kFieldDumpVersion) {
    throw Error(ErrorKind::io, "NLSF: unsupported version " + std::to_string(version));
  }
  const auto nx = get_le<std::uint32_t>(in);
  const auto ny = get_le<std::uint32_t>(in);
  const auto kind = get_le<std::uint8_t>(in);
  if (kind > 1) throw Error(ErrorKind::io, "NLSF: unknown field kind");
  ComplexVector values(static_cast<Eigen::Index>(nx) * ny);
  for (auto& z : values) {
    const double re = get_le<double>(in);
    const double im = get_le<double>(in);
    z = Complex(re, im);
  }
  if (kind == 0) {
    if (values.imag().cwiseAbs().maxCoeff() != 0.0) {
      throw Error(ErrorKind::io, "NLSF: real-kind field has nonzero imaginary part");
    }
    return Field::from_real(values.real(), nx, ny);
  }
  return Field::from_complex(values, nx, ny);
}

void write_field(const std::filesystem::path& path, const Field& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "NLSF: cannot open " + path.string());
  write_field(out, field);
}

Field read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "NLSF: cannot open " + path.string());
  return read_field(in);
}

}  // namespace nlslab
