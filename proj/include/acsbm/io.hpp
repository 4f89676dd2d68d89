#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "acsbm/graph.hpp"

namespace acsbm {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct EdgeListOptions {
  // Subtracted from every id read; 1 accepts 1-based files.
  NodeId id_offset = 0;
};

// Edge list format, one edge per line:
//
//   u v [w]
//
// Ids are non-negative integers, w is a positive integer multiplicity
// (default 1). Repeated pairs accumulate. Lines starting with '#' are
// comments, except a header of the form "# nodes N", which fixes the node
// count (allowing trailing isolated nodes) and makes any id >= N an error.
// Without a header, N = 1 + largest id.
Graph parse_edge_list(std::istream& in, const EdgeListOptions& opts = {});
Graph read_edge_list(const std::filesystem::path& path,
                     const EdgeListOptions& opts = {});
// Always writes the "# nodes N" header so isolated nodes survive.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

// Label files hold one block id per line; line number is node id.
std::vector<BlockId> parse_labels(std::istream& in);
std::vector<BlockId> read_labels(const std::filesystem::path& path);
void write_labels(std::ostream& out, const Partition& p);
void write_labels(const std::filesystem::path& path, const Partition& p);

// Partition over max(label)+1 blocks, or `k` blocks when k > 0.
Partition partition_from_labels(const std::vector<BlockId>& labels,
                                BlockId k = 0);

}  // namespace acsbm
