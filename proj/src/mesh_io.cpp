#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fvpg/errors.hpp"
#include "fvpg/format.hpp"
#include "fvpg/mesh.hpp"

namespace fvpg {

namespace {

// Tokenized line cursor over the mesh text; skips blanks and '#' comments.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Returns false at end of input. Yields the stripped non-empty line.
  bool next(std::string_view& line) {
    while (pos_ < text_.size()) {
      std::size_t eol = text_.find('\n', pos_);
      if (eol == std::string_view::npos) eol = text_.size();
      std::string_view raw = text_.substr(pos_, eol - pos_);
      pos_ = eol + 1;
      ++line_no_;
      if (const std::size_t h = raw.find('#'); h != std::string_view::npos)
        raw = raw.substr(0, h);
      const std::size_t b = raw.find_first_not_of(" \t\r");
      if (b == std::string_view::npos) continue;
      const std::size_t e = raw.find_last_not_of(" \t\r");
      line = raw.substr(b, e - b + 1);
      return true;
    }
    return false;
  }

  int line_no() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_number(std::string_view tok, int line, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" +
                               std::string(tok) + "'");
  return v;
}

}  // namespace

Triangulation read_mesh(std::string_view text) {
  LineReader in(text);
  std::string_view line;

  if (!in.next(line)) throw ParseError(1, "empty mesh file");
  if (line != "fvpg-mesh 1")
    throw ParseError(in.line_no(), "expected header 'fvpg-mesh 1'");

  if (!in.next(line)) throw ParseError(in.line_no() + 1, "missing 'vertices N'");
  auto toks = split_ws(line);
  if (toks.size() != 2 || toks[0] != "vertices")
    throw ParseError(in.line_no(), "expected 'vertices N'");
  const int nv = parse_number<int>(toks[1], in.line_no(), "a vertex count");
  if (nv < 3) throw ParseError(in.line_no(), "need at least 3 vertices");

  std::vector<Vec2> vertices;
  vertices.reserve(nv);
  for (int i = 0; i < nv; ++i) {
    if (!in.next(line))
      throw ParseError(in.line_no() + 1, "unexpected end of file in vertex list");
    toks = split_ws(line);
    if (toks.size() != 2)
      throw ParseError(in.line_no(), "expected 'x y'");
    vertices.push_back({parse_number<double>(toks[0], in.line_no(), "a coordinate"),
                        parse_number<double>(toks[1], in.line_no(), "a coordinate")});
  }

  if (!in.next(line)) throw ParseError(in.line_no() + 1, "missing 'triangles M'");
  toks = split_ws(line);
  if (toks.size() != 2 || toks[0] != "triangles")
    throw ParseError(in.line_no(), "expected 'triangles M'");
  const int nt = parse_number<int>(toks[1], in.line_no(), "a triangle count");
  if (nt < 1) throw ParseError(in.line_no(), "need at least 1 triangle");

  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(nt);
  for (int i = 0; i < nt; ++i) {
    if (!in.next(line))
      throw ParseError(in.line_no() + 1, "unexpected end of file in triangle list");
    toks = split_ws(line);
    if (toks.size() != 3)
      throw ParseError(in.line_no(), "expected 'i j k'");
    triangles.push_back({parse_number<int>(toks[0], in.line_no(), "a vertex index"),
                         parse_number<int>(toks[1], in.line_no(), "a vertex index"),
                         parse_number<int>(toks[2], in.line_no(), "a vertex index")});
  }

  if (in.next(line))
    throw ParseError(in.line_no(), "trailing content after triangle list");

  return Triangulation::build(std::move(vertices), std::move(triangles));
}

Triangulation read_mesh_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return read_mesh(ss.str());
}

std::string write_mesh(const Triangulation& t) {
  std::string out;
  out += "fvpg-mesh 1\n";
  out += "vertices " + std::to_string(t.vertex_count()) + "\n";
  for (const Vec2& v : t.vertices())
    out += format_double(v.x) + " " + format_double(v.y) + "\n";
  out += "triangles " + std::to_string(t.cell_count()) + "\n";
  for (const auto& tri : t.cells())
    out += std::to_string(tri[0]) + " " + std::to_string(tri[1]) + " " +
           std::to_string(tri[2]) + "\n";
  return out;
}

void write_mesh_file(const Triangulation& t, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError(0, "cannot open '" + path + "' for writing");
  f << write_mesh(t);
}

}  // namespace fvpg
