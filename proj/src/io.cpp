#include "acsbm/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>

namespace acsbm {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

std::int64_t parse_int(std::string_view tok, std::size_t line_no,
                       const char* what) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line_no, std::string("malformed ") + what + " '" +
                                  std::string(tok) + "'");
  }
  return value;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

Graph parse_edge_list(std::istream& in, const EdgeListOptions& opts) {
  std::vector<Edge> edges;
  std::optional<std::int64_t> declared_n;
  std::int64_t max_id = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0].front() == '#') {
      // "# nodes N" or "#nodes N"
      if (tokens[0] == "#" && tokens.size() == 3 && tokens[1] == "nodes") {
        declared_n = parse_int(tokens[2], line_no, "node count");
      } else if (tokens[0] == "#nodes" && tokens.size() == 2) {
        declared_n = parse_int(tokens[1], line_no, "node count");
      }
      if (declared_n && *declared_n < 0) {
        throw ParseError(line_no, "negative node count");
      }
      continue;
    }
    if (tokens.size() < 2 || tokens.size() > 3) {
      throw ParseError(line_no, "expected 'u v [w]'");
    }
    const std::int64_t u = parse_int(tokens[0], line_no, "node id") - opts.id_offset;
    const std::int64_t v = parse_int(tokens[1], line_no, "node id") - opts.id_offset;
    const std::int64_t w =
        tokens.size() == 3 ? parse_int(tokens[2], line_no, "weight") : 1;
    if (u < 0 || v < 0) throw ParseError(line_no, "negative node id");
    if (w < 0) throw ParseError(line_no, "negative weight");
    if (u > INT32_MAX || v > INT32_MAX) throw ParseError(line_no, "node id too large");
    if (declared_n && (u >= *declared_n || v >= *declared_n)) {
      throw ParseError(line_no, "node id beyond declared node count " +
                                    std::to_string(*declared_n));
    }
    max_id = std::max({max_id, u, v});
    if (w == 0) continue;
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
  }
  const std::int64_t n = declared_n.value_or(max_id + 1);
  return Graph(static_cast<NodeId>(n), std::move(edges));
}

Graph read_edge_list(const std::filesystem::path& path,
                     const EdgeListOptions& opts) {
  auto in = open_in(path);
  return parse_edge_list(in, opts);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.num_nodes() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (e.w != 1) out << ' ' << e.w;
    out << '\n';
  }
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  auto out = open_out(path);
  write_edge_list(out, g);
}

std::vector<BlockId> parse_labels(std::istream& in) {
  std::vector<BlockId> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 1) throw ParseError(line_no, "expected one label");
    const std::int64_t r = parse_int(tokens[0], line_no, "label");
    if (r < 0 || r > INT32_MAX) throw ParseError(line_no, "label out of range");
    labels.push_back(static_cast<BlockId>(r));
  }
  return labels;
}

std::vector<BlockId> read_labels(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_labels(in);
}

void write_labels(std::ostream& out, const Partition& p) {
  for (BlockId r : p.assignment()) out << r << '\n';
}

void write_labels(const std::filesystem::path& path, const Partition& p) {
  auto out = open_out(path);
  write_labels(out, p);
}

Partition partition_from_labels(const std::vector<BlockId>& labels, BlockId k) {
  BlockId max_label = -1;
  for (BlockId r : labels) max_label = std::max(max_label, r);
  return Partition(k > 0 ? k : std::max<BlockId>(max_label + 1, 1), labels);
}

}  // namespace acsbm
