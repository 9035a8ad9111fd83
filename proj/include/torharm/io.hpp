#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "torharm/torus.hpp"

namespace torharm {

/// Shortest round-trip form (%.17g), with ".0" appended to integral values so
/// that every number reads back as a float.
std::string format_number(double v);

/// Grid text format, version 1:
///   # torharm-grid v1
///   # rho_min rho_max n_rho z_min z_max n_z a     (the values, in this order)
///   rho,z,value,flag        (one row per cell, z outermost)
void write_grid(std::ostream& os, const FieldGrid& grid);
void write_grid(const std::string& path, const FieldGrid& grid);

/// Parses the format above. Throws InvalidArgument on any malformed line.
FieldGrid read_grid(std::istream& is);
FieldGrid read_grid(const std::string& path);

CellFlag parse_flag(std::string_view s);

}  // namespace torharm
