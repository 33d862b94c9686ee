#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "feplast/mesh.hpp"

namespace feplast {

namespace {

// Line-oriented reader that strips '#' comments and tracks the line number
// for error reporting. Each content line is tokenized on whitespace.
class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // next non-empty content line split into tokens; false at end of input
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  long line() const { return line_; }

private:
  std::istream& in_;
  long line_ = 0;
};

[[noreturn]] void fail(const LineReader& reader, const std::string& what) {
  throw ParseError("mesh format error at line " + std::to_string(reader.line()) + ": " +
                       what,
                   reader.line());
}

long parse_count(LineReader& reader, const std::vector<std::string>& tokens,
                 const char* keyword) {
  if (tokens.size() != 2 || tokens[0] != keyword) {
    fail(reader, std::string("expected '") + keyword + " <count>'");
  }
  try {
    const long n = std::stol(tokens[1]);
    if (n < 0) fail(reader, "negative count");
    return n;
  } catch (const std::logic_error&) {
    fail(reader, "count is not an integer");
  }
}

std::vector<std::string> expect_line(LineReader& reader, const char* context) {
  std::vector<std::string> tokens;
  if (!reader.next(tokens)) {
    fail(reader, std::string("unexpected end of file while reading ") + context);
  }
  return tokens;
}

double to_double(LineReader& reader, const std::string& tok) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::logic_error&) {
    fail(reader, "expected a number, got '" + tok + "'");
  }
  if (used != tok.size()) fail(reader, "trailing characters in number '" + tok + "'");
  return v;
}

int to_index(LineReader& reader, const std::string& tok) {
  try {
    size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::logic_error&) {
    fail(reader, "expected an integer index, got '" + tok + "'");
  }
}

} // namespace

Mesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open mesh file: " + path);
  }
  LineReader reader(in);

  auto header = expect_line(reader, "header");
  if (header.size() != 2 || header[0] != "tetmesh" || header[1] != "1") {
    fail(reader, "expected header 'tetmesh 1'");
  }

  Mesh mesh;
  const long n_nodes = parse_count(reader, expect_line(reader, "node count"), "nodes");
  mesh.nodes.reserve(n_nodes);
  for (long i = 0; i < n_nodes; ++i) {
    const auto t = expect_line(reader, "node coordinates");
    if (t.size() != 3) fail(reader, "node line needs 3 coordinates");
    mesh.nodes.emplace_back(to_double(reader, t[0]), to_double(reader, t[1]),
                            to_double(reader, t[2]));
  }

  const long n_tets = parse_count(reader, expect_line(reader, "tet count"), "tets");
  mesh.tets.reserve(n_tets);
  for (long i = 0; i < n_tets; ++i) {
    const auto t = expect_line(reader, "tet connectivity");
    if (t.size() != 4) fail(reader, "tet line needs 4 node indices");
    mesh.tets.push_back({to_index(reader, t[0]), to_index(reader, t[1]),
                         to_index(reader, t[2]), to_index(reader, t[3])});
  }

  mesh.dirichlet.assign(mesh.nodes.size(), {false, false, false});
  const long n_dir = parse_count(reader, expect_line(reader, "dirichlet count"), "dirichlet");
  for (long i = 0; i < n_dir; ++i) {
    const auto t = expect_line(reader, "dirichlet flags");
    if (t.size() != 4) fail(reader, "dirichlet line needs node index and 3 flags");
    const int node = to_index(reader, t[0]);
    if (node < 0 || node >= static_cast<int>(mesh.nodes.size())) {
      throw InvariantViolation("dirichlet entry references missing node");
    }
    for (int k = 0; k < 3; ++k) {
      const int flag = to_index(reader, t[k + 1]);
      if (flag != 0 && flag != 1) fail(reader, "dirichlet flags must be 0 or 1");
      mesh.dirichlet[node][k] = mesh.dirichlet[node][k] || (flag == 1);
    }
  }

  const long n_neu = parse_count(reader, expect_line(reader, "neumann count"), "neumann");
  mesh.neumann.reserve(n_neu);
  for (long i = 0; i < n_neu; ++i) {
    const auto t = expect_line(reader, "neumann face");
    if (t.size() != 6) fail(reader, "neumann line needs 3 node indices and 3 traction values");
    NeumannFace f;
    f.nodes = {to_index(reader, t[0]), to_index(reader, t[1]), to_index(reader, t[2])};
    f.traction = Vec3(to_double(reader, t[3]), to_double(reader, t[4]),
                      to_double(reader, t[5]));
    mesh.neumann.push_back(f);
  }

  std::vector<std::string> extra;
  if (reader.next(extra)) {
    fail(reader, "unexpected content after the neumann section");
  }

  mesh.validate();
  return mesh;
}

void write_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open mesh file for writing: " + path);
  }

  char buf[128];
  out << "tetmesh 1\n";
  out << "nodes " << mesh.nodes.size() << "\n";
  for (const auto& p : mesh.nodes) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p[0], p[1], p[2]);
    out << buf;
  }
  out << "tets " << mesh.tets.size() << "\n";
  for (const auto& t : mesh.tets) {
    out << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << "\n";
  }

  std::vector<size_t> fixed;
  for (size_t i = 0; i < mesh.dirichlet.size(); ++i) {
    const auto& d = mesh.dirichlet[i];
    if (d[0] || d[1] || d[2]) fixed.push_back(i);
  }
  out << "dirichlet " << fixed.size() << "\n";
  for (size_t i : fixed) {
    const auto& d = mesh.dirichlet[i];
    out << i << ' ' << int(d[0]) << ' ' << int(d[1]) << ' ' << int(d[2]) << "\n";
  }

  out << "neumann " << mesh.neumann.size() << "\n";
  for (const auto& f : mesh.neumann) {
    std::snprintf(buf, sizeof buf, "%d %d %d %.17g %.17g %.17g\n", f.nodes[0],
                  f.nodes[1], f.nodes[2], f.traction[0], f.traction[1], f.traction[2]);
    out << buf;
  }

  if (!out.good()) {
    throw IoError("failed writing mesh file: " + path);
  }
}

} // namespace feplast
