#include "forge/io.hpp"

#include <fstream>
#include <sstream>

#include "forge/error.hpp"

namespace forge {
namespace {

std::size_t read_count(std::istream& in, const char* what) {
  long long v = -1;
  if (!(in >> v) || v < 0) throw Error(ErrorCode::kParseError, std::string("expected ") + what);
  return static_cast<std::size_t>(v);
}

RatMatrix read_rmx_body(std::istream& in, std::size_t rows) {
  const std::size_t cols = read_count(in, "column count");
  RatMatrix a(rows, cols);
  std::string token;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (!(in >> token)) {
        throw Error(ErrorCode::kParseError, "matrix ends early at entry (" + std::to_string(i) +
                                                "," + std::to_string(j) + ")");
      }
      a(i, j) = parse_rational(token);
    }
  }
  if (in >> token) throw Error(ErrorCode::kParseError, "trailing token '" + token + "'");
  return a;
}

}  // namespace

RatMatrix read_rmx(std::istream& in) { return read_rmx_body(in, read_count(in, "row count")); }

RatMatrix parse_rmx(const std::string& text) {
  std::istringstream in(text);
  return read_rmx(in);
}

void write_rmx(std::ostream& out, const RatMatrix& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << to_string(a(i, j));
    }
    out << '\n';
  }
}

std::string format_rmx(const RatMatrix& a) {
  std::ostringstream out;
  write_rmx(out, a);
  return out.str();
}

Graph read_gr(std::istream& in) {
  const std::size_t n = read_count(in, "vertex count");
  const std::size_t m = read_count(in, "edge count");
  Graph g(n);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t u = read_count(in, "edge endpoint");
    const std::size_t v = read_count(in, "edge endpoint");
    if (u >= n || v >= n || u == v) {
      throw Error(ErrorCode::kParseError, "bad edge " + std::to_string(u) + " " + std::to_string(v));
    }
    g.add_edge(u, v);
  }
  return g;
}

void write_gr(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

LinearMatroid read_matroid(std::istream& in) {
  std::string first;
  if (!(in >> first)) throw Error(ErrorCode::kParseError, "empty matroid file");
  FieldSpec field = FieldSpec::rationals();
  std::size_t rows = 0;
  if (first == "field") {
    std::string tag;
    in >> tag;
    if (tag == "gf") {
      field = FieldSpec::prime(read_count(in, "field characteristic"));
    } else if (tag != "q") {
      throw Error(ErrorCode::kParseError, "unknown field tag '" + tag + "'");
    }
    rows = read_count(in, "row count");
  } else {
    try {
      rows = static_cast<std::size_t>(std::stoull(first));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "expected row count, got '" + first + "'");
    }
  }
  return matroid_of(read_rmx_body(in, rows), field);
}

void write_matroid(std::ostream& out, const LinearMatroid& m) {
  if (m.field().is_rational()) {
    out << "field q\n";
  } else {
    out << "field gf " << m.field().characteristic() << '\n';
  }
  write_rmx(out, m.representation().select_columns(m.elements()));
}

RatMatrix load_rmx(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  return read_rmx(in);
}

void save_text(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write " + path);
  out << contents;
}

}  // namespace forge
