#pragma once

// Text formats.
//   .rmx   "rows cols" then rows*cols tokens "p" or "p/q"
//   .gr    "n m" then m lines "u v" (0-based)
//   matroid: an optional "field q" / "field gf P" line followed by an .rmx body

#include <iosfwd>
#include <string>

#include "forge/graph.hpp"
#include "forge/matrix.hpp"
#include "forge/matroid.hpp"

namespace forge {

/// Throws Error(kParseError) on malformed input.
RatMatrix read_rmx(std::istream& in);
RatMatrix parse_rmx(const std::string& text);
void write_rmx(std::ostream& out, const RatMatrix& a);
std::string format_rmx(const RatMatrix& a);

Graph read_gr(std::istream& in);
void write_gr(std::ostream& out, const Graph& g);

LinearMatroid read_matroid(std::istream& in);
/// Tag line plus the representation of the live elements.
void write_matroid(std::ostream& out, const LinearMatroid& m);

RatMatrix load_rmx(const std::string& path);
void save_text(const std::string& path, const std::string& contents);

}  // namespace forge
