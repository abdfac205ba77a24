#pragma once

#include <filesystem>
#include <iosfwd>

#include "heisenwave/field.hpp"

namespace heisenwave {

/// HWF1 layout: "HWF1", then per axis (p, q, t) a u32 sample count and an f64 half extent,
/// then all values as (re, im) f64 pairs with t fastest. Everything little-endian.
void write_hwf1(std::ostream& out, const SampledField& f);
SampledField read_hwf1(std::istream& in);

void save_hwf1(const std::filesystem::path& path, const SampledField& f);
SampledField load_hwf1(const std::filesystem::path& path);

/// One row per node: p,q,t,re,im with a header line.
void write_csv(std::ostream& out, const SampledField& f);
void save_csv(const std::filesystem::path& path, const SampledField& f);

}  // namespace heisenwave
