#include "heisenwave/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <vector>

#include "heisenwave/errors.hpp"

namespace heisenwave {

namespace {

constexpr std::array<char, 4> kMagic{'H', 'W', 'F', '1'};

template <class T>
void put_le(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) throw FormatError("HWF1: truncated stream");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_hwf1(std::ostream& out, const SampledField& f) {
  out.write(kMagic.data(), kMagic.size());
  for (Axis a : {Axis::p, Axis::q, Axis::t}) {
    put_le<std::uint32_t>(out, f.grid().axis(a).samples);
    put_le<double>(out, f.grid().axis(a).half_extent);
  }
  for (const Complex& v : f.values()) {
    put_le<double>(out, v.real());
    put_le<double>(out, v.imag());
  }
  if (!out) throw FormatError("HWF1: write failed");
}

SampledField read_hwf1(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw FormatError("HWF1: bad magic");
  std::array<AxisSpec, 3> axes;
  for (auto& a : axes) {
    a.samples = get_le<std::uint32_t>(in);
    a.half_extent = get_le<double>(in);
  }
  GridSpec grid = [&] {
    try {
      return GridSpec(axes[0], axes[1], axes[2]);
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("HWF1: ") + e.what());
    }
  }();
  std::vector<Complex> values(grid.size());
  for (auto& v : values) {
    const double re = get_le<double>(in);
    const double im = get_le<double>(in);
    v = {re, im};
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("HWF1: trailing bytes");
  try {
    return SampledField(grid, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("HWF1: ") + e.what());
  }
}

void save_hwf1(const std::filesystem::path& path, const SampledField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_hwf1(out, f);
}

SampledField load_hwf1(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_hwf1(in);
}

void write_csv(std::ostream& out, const SampledField& f) {
  const GridSpec& g = f.grid();
  out << "p,q,t,re,im\n" << std::setprecision(17);
  for (std::size_t ip = 0; ip < g.p().samples; ++ip)
    for (std::size_t iq = 0; iq < g.q().samples; ++iq)
      for (std::size_t it = 0; it < g.t().samples; ++it) {
        const GroupPoint w = g.point(ip, iq, it);
        const Complex v = f(ip, iq, it);
        out << w.p << ',' << w.q << ',' << w.t << ',' << v.real() << ',' << v.imag() << '\n';
      }
  if (!out) throw FormatError("CSV: write failed");
}

void save_csv(const std::filesystem::path& path, const SampledField& f) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_csv(out, f);
}

}  // namespace heisenwave
