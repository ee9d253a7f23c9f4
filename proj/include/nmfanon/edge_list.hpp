#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <zlib.h>

#include "nmfanon/graph.hpp"

namespace nmfanon {

inline constexpr const char* kVersion = "1.0.0";

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// What preprocessing dropped while reading an edge list.
struct IngestStats {
  std::size_t lines = 0;
  std::size_t edge_lines = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;        // repeated pairs, either orientation
  std::size_t isolated_dropped = 0;  // vertices left without edges
  std::size_t isolated_kept = 0;     // from "# isolated:" annotations
};

struct ParsedGraph {
  Graph graph;
  IngestStats stats;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

inline VertexId parse_id(std::string_view tok, std::size_t line) {
  VertexId v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, "invalid vertex id '" + std::string(tok) + "'");
  return v;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
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

}  // namespace detail

/// Reads a whitespace-separated edge list ("u v" per line, '#' comments) and
/// preprocesses it into a simple undirected graph: duplicate pairs in either
/// orientation collapse, self-loops are dropped, and vertices left without
/// edges are dropped. Vertices listed in "# isolated: <id>" annotations are
/// kept so written graphs survive a round trip.
inline ParsedGraph parse_edge_list(std::istream& in) {
  ParsedGraph out;
  auto& st = out.stats;
  std::set<VertexId> seen;
  std::set<VertexId> annotated;
  std::vector<EdgeKey> edges;
  std::string raw;
  while (std::getline(in, raw)) {
    ++st.lines;
    std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view tag = "# isolated:";
      if (line.starts_with(tag)) {
        auto tok = detail::trim(line.substr(tag.size()));
        annotated.insert(detail::parse_id(tok, st.lines));
      }
      continue;
    }
    auto toks = detail::split_ws(line);
    if (toks.size() != 2)
      throw ParseError(st.lines, "expected two vertex ids, got " +
                                     std::to_string(toks.size()) + " fields");
    VertexId u = detail::parse_id(toks[0], st.lines);
    VertexId v = detail::parse_id(toks[1], st.lines);
    ++st.edge_lines;
    seen.insert(u);
    seen.insert(v);
    if (u == v) {
      ++st.self_loops;
      continue;
    }
    edges.emplace_back(u, v);
  }
  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  st.duplicates = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());

  std::set<VertexId> endpoint;
  for (const auto& e : edges) {
    endpoint.insert(e.a());
    endpoint.insert(e.b());
  }
  for (VertexId v : seen)
    if (!endpoint.contains(v) && !annotated.contains(v)) ++st.isolated_dropped;
  for (VertexId v : endpoint) out.graph.insert_vertex(v);
  for (VertexId v : annotated)
    if (out.graph.insert_vertex(v)) ++st.isolated_kept;
  for (const auto& e : edges) out.graph.add_edge(e);
  return out;
}

inline ParsedGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

/// Reads a file, transparently inflating gzip input (e.g. SNAP's .txt.gz).
inline std::string read_file(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) throw std::runtime_error("cannot open " + path);
  std::string data;
  char buf[1 << 16];
  int n;
  while ((n = gzread(f, buf, sizeof buf)) > 0) data.append(buf, static_cast<std::size_t>(n));
  int err = 0;
  const char* msg = gzerror(f, &err);
  std::string error = err < 0 ? msg : "";
  gzclose(f);
  if (!error.empty()) throw std::runtime_error("read " + path + ": " + error);
  return data;
}

inline ParsedGraph load_edge_list(const std::string& path) {
  return parse_edge_list(read_file(path));
}

/// Header fields written above the edges; ordered by key.
using HeaderFields = std::map<std::string, std::string>;

/// Canonical edge list: a header, "# isolated: <id>" for every vertex without
/// edges, then one "a b" line per edge in key order.
inline std::string write_graph(const Graph& g, const HeaderFields& header = {}) {
  std::ostringstream out;
  out << "# nmfanon " << kVersion << "\n";
  for (const auto& [key, value] : header) out << "# " << key << ": " << value << "\n";
  out << "# vertices: " << g.num_vertices() << "\n";
  out << "# edges: " << g.num_edges() << "\n";
  g.for_each_vertex([&](VertexId v, const Graph::Neighbors& ns) {
    if (ns.empty()) out << "# isolated: " << v << "\n";
  });
  for (const EdgeKey& e : g.edges()) out << e.a() << ' ' << e.b() << '\n';
  return out.str();
}

inline void save_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace nmfanon
