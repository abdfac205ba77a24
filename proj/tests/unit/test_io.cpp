#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>

#include <heisenwave/io.hpp>

using namespace heisenwave;

namespace {

SampledField sample_field() {
  const GridSpec g(AxisSpec{2.0, 5}, AxisSpec{3.0, 4}, AxisSpec{1.5, 3});
  return SampledField::sample(g, [](const GroupPoint& w) { return Complex(w.p + 0.1 * w.t, w.q * w.q); });
}

std::string bytes(const SampledField& f) {
  std::ostringstream out(std::ios::binary);
  write_hwf1(out, f);
  return out.str();
}

}  // namespace

TEST_CASE("HWF1 layout and round trip") {
  const SampledField f = sample_field();
  const std::string b = bytes(f);
  CHECK(b.substr(0, 4) == "HWF1");
  CHECK(b.size() == 4 + 3 * (4 + 8) + f.size() * 16);

  std::istringstream in(b, std::ios::binary);
  const SampledField g = read_hwf1(in);
  CHECK(g.grid() == f.grid());
  CHECK(max_abs_difference(f, g) == 0.0);
  CHECK(bytes(g) == b);
}

TEST_CASE("HWF1 rejects malformed input") {
  const std::string good = bytes(sample_field());
  auto read = [](std::string s) {
    std::istringstream in(s, std::ios::binary);
    return read_hwf1(in);
  };
  CHECK_THROWS_AS(read("HWF2" + good.substr(4)), FormatError);
  CHECK_THROWS_AS(read(good.substr(0, good.size() - 3)), FormatError);
  CHECK_THROWS_AS(read(good + "x"), FormatError);
  CHECK_THROWS_AS(read(""), FormatError);
  CHECK_THROWS_AS(load_hwf1("/nonexistent/dir/field.hwf1"), FormatError);
}

TEST_CASE("files round trip byte for byte") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "heisenwave_unit_roundtrip.hwf1";
  save_hwf1(path, sample_field());
  const SampledField back = load_hwf1(path);
  const auto path2 = dir / "heisenwave_unit_roundtrip2.hwf1";
  save_hwf1(path2, back);
  CHECK(std::filesystem::file_size(path) == std::filesystem::file_size(path2));
  CHECK(bytes(load_hwf1(path2)) == bytes(sample_field()));
  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}

TEST_CASE("CSV rows") {
  const SampledField f = sample_field();
  std::ostringstream out;
  write_csv(out, f);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "p,q,t,re,im");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == f.size());
}
