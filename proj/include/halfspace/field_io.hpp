#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "halfspace/grid.hpp"

namespace halfspace {

/// Binary container layout (all integers little-endian):
///   "HSFIELD1" | u32 n | f64 L | u64 N | u8 stagger | u8 kind (0 full, 1 half) | u8 bc | u8 pad
///   | u64 count | count x f64 values, row-major with the normal axis fastest.
using AnyField = std::variant<SampledField, HalfField>;

void write_field(std::ostream& out, const SampledField& f);
void write_field(std::ostream& out, const HalfField& f);
AnyField read_field(std::istream& in);

void save_field(const std::string& path, const AnyField& f);
AnyField load_field(const std::string& path);

/// CSV with columns i0..i{n-1}, x0..x{n-1}, value.
void write_csv(std::ostream& out, const SampledField& f);
void write_csv(std::ostream& out, const HalfField& f);

}  // namespace halfspace
