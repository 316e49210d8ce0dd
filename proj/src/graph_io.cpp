#include "pyro/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pyro {

namespace {

bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

Topology read_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) throw ParseError(line_no, "missing header 'n m'");
  long long n = -1;
  long long m = -1;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || n < 0 || m < 0 || (header >> extra)) {
      throw ParseError(line_no, "expected header 'n m'");
    }
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line, line_no)) throw ParseError(line_no, "missing edge lines");
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) throw ParseError(line_no, "expected edge 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(line_no, "vertex id out of range");
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  std::vector<std::string> names;
  while (next_content_line(in, line, line_no)) {
    std::istringstream row(line);
    std::string keyword;
    long long id = -1;
    std::string label;
    std::string extra;
    if (!(row >> keyword >> id >> label) || keyword != "name" || (row >> extra)) {
      throw ParseError(line_no, "expected 'name <id> <label>'");
    }
    if (id < 0 || id >= n) throw ParseError(line_no, "vertex id out of range");
    if (names.empty()) names.resize(static_cast<std::size_t>(n));
    if (!names[id].empty()) throw ParseError(line_no, "vertex named twice");
    names[id] = label;
  }
  for (const auto& s : names) {
    if (s.empty()) throw ParseError(line_no, "name map must cover every vertex");
  }
  try {
    return Topology::finite(static_cast<std::size_t>(n), edges, std::move(names));
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
}

Topology read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Topology& graph) {
  if (graph.is_grid()) throw std::invalid_argument("only finite graphs can be written");
  const auto edges = graph.edges();
  out << graph.size() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u << ' ' << v << '\n';
  if (graph.has_names()) {
    for (VertexId v = 0; v < graph.size(); ++v) out << "name " << v << ' ' << graph.name(v) << '\n';
  }
}

}  // namespace pyro
