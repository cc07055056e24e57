#pragma once

#include <string>

#include "sbrw/dirichlet.hpp"

namespace sbrw {

// Complex file: {"maximal_faces": [[ids...], ...]}.
SimplicialComplex load_complex(const std::string& path);
SimplicialComplex complex_from_json_text(const std::string& text);
std::string complex_to_json_text(const SimplicialComplex& X);

// Boundary file: {"A": [[ids...], ...],
//                 "f": [{"cell": [ids...], "sign": 1, "value": v}, ...]}.
BoundaryData load_boundary(const std::string& path);
BoundaryData boundary_from_json_text(const std::string& text);

// Oriented cell from "v1,v2,..." as listed (orientation = listed order).
OrientedCell parse_oriented_cell(const std::string& spec);

// All floating output with 12 significant digits, '.' decimal point.
std::string fmt(double v);
std::string cell_json(const Cell& c);

// FNV-1a digest of an output byte stream, for run manifests.
uint64_t digest64(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sbrw
