#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "pyro/topology.hpp"

namespace pyro {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Finite graph text format:
//
//   n m
//   u v        (m lines, 0-indexed, undirected)
//   name i s   (optional, one per vertex: vertex i is called s)
//
// Blank lines and lines starting with '#' are ignored.
Topology read_graph(std::istream& in);
Topology read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Topology& graph);

}  // namespace pyro
