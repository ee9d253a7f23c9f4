#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nmfanon {

using VertexId = std::uint64_t;
using Count = std::size_t;

/// Raised when a caller violates an operation's precondition (missing vertex,
/// duplicate or absent edge, self-loop).
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Canonical unordered vertex pair: a < b always holds.
class EdgeKey {
 public:
  EdgeKey() = default;
  EdgeKey(VertexId x, VertexId y) : a_(std::min(x, y)), b_(std::max(x, y)) {
    if (x == y) throw GraphError("self-loop edge " + std::to_string(x));
  }

  VertexId a() const { return a_; }
  VertexId b() const { return b_; }

  /// Endpoint opposite to `x`; `x` must be an endpoint.
  VertexId other(VertexId x) const { return x == a_ ? b_ : a_; }
  bool has(VertexId x) const { return x == a_ || x == b_; }

  auto operator<=>(const EdgeKey&) const = default;

 private:
  VertexId a_ = 0;
  VertexId b_ = 1;
};

inline std::string to_string(const EdgeKey& e) {
  return "(" + std::to_string(e.a()) + "," + std::to_string(e.b()) + ")";
}

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& e) const noexcept {
    std::uint64_t h = e.a() * 0x9E3779B97F4A7C15ULL;
    h ^= e.b() + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

/// Undirected simple graph with sorted adjacency lists.
///
/// Vertices are never removed: an edge deletion can leave an isolated vertex
/// behind and it stays in the vertex set. Fresh ids handed out by add_vertex()
/// are strictly greater than every id the graph has ever held.
class Graph {
 public:
  using Neighbors = std::vector<VertexId>;

  Graph() = default;

  bool has_vertex(VertexId v) const { return adj_.contains(v); }

  bool has_edge(VertexId u, VertexId v) const {
    auto it = adj_.find(u);
    if (it == adj_.end() || u == v) return false;
    return std::binary_search(it->second.begin(), it->second.end(), v);
  }
  bool has_edge(const EdgeKey& e) const { return has_edge(e.a(), e.b()); }

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  /// Inserts `v` if absent. Returns true when the vertex is new.
  bool insert_vertex(VertexId v) {
    auto [it, inserted] = adj_.try_emplace(v);
    if (inserted) next_id_ = std::max(next_id_, v + 1);
    return inserted;
  }

  /// Adds a vertex with a fresh id (max id ever seen + 1).
  VertexId add_vertex() {
    VertexId v = next_id_;
    insert_vertex(v);
    return v;
  }

  void add_edge(const EdgeKey& e) {
    auto& na = neighbors_mut(e.a());
    auto& nb = neighbors_mut(e.b());
    auto pos = std::lower_bound(na.begin(), na.end(), e.b());
    if (pos != na.end() && *pos == e.b())
      throw GraphError("duplicate edge " + to_string(e));
    na.insert(pos, e.b());
    nb.insert(std::lower_bound(nb.begin(), nb.end(), e.a()), e.a());
    ++num_edges_;
  }

  void remove_edge(const EdgeKey& e) {
    auto& na = neighbors_mut(e.a());
    auto& nb = neighbors_mut(e.b());
    auto pos = std::lower_bound(na.begin(), na.end(), e.b());
    if (pos == na.end() || *pos != e.b())
      throw GraphError("absent edge " + to_string(e));
    na.erase(pos);
    nb.erase(std::lower_bound(nb.begin(), nb.end(), e.a()));
    --num_edges_;
  }

  const Neighbors& neighbors(VertexId v) const {
    auto it = adj_.find(v);
    if (it == adj_.end())
      throw GraphError("unknown vertex " + std::to_string(v));
    return it->second;
  }

  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  /// Vertices in ascending id order.
  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    out.reserve(adj_.size());
    for (const auto& [v, _] : adj_) out.push_back(v);
    return out;
  }

  /// Edges in lexicographic key order.
  std::vector<EdgeKey> edges() const {
    std::vector<EdgeKey> out;
    out.reserve(num_edges_);
    for (const auto& [v, ns] : adj_)
      for (auto it = std::upper_bound(ns.begin(), ns.end(), v); it != ns.end();
           ++it)
        out.emplace_back(v, *it);
    return out;
  }

  /// Calls fn(v, neighbors) for each vertex in ascending id order.
  template <typename Fn>
  void for_each_vertex(Fn&& fn) const {
    for (const auto& [v, ns] : adj_) fn(v, ns);
  }

  VertexId next_id() const { return next_id_; }

  bool operator==(const Graph& other) const {
    return num_edges_ == other.num_edges_ && adj_ == other.adj_;
  }

 private:
  Neighbors& neighbors_mut(VertexId v) {
    auto it = adj_.find(v);
    if (it == adj_.end())
      throw GraphError("unknown vertex " + std::to_string(v));
    return it->second;
  }

  std::map<VertexId, Neighbors> adj_;
  std::size_t num_edges_ = 0;
  VertexId next_id_ = 0;
};

/// Calls fn(z) for each common neighbor z of u and v (sorted merge).
template <typename Fn>
void for_each_common_neighbor(const Graph& g, VertexId u, VertexId v, Fn&& fn) {
  const auto& nu = g.neighbors(u);
  const auto& nv = g.neighbors(v);
  auto i = nu.begin();
  auto j = nv.begin();
  while (i != nu.end() && j != nv.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      fn(*i);
      ++i;
      ++j;
    }
  }
}

/// |N(u) ∩ N(v)|. The pair does not need to be an edge.
inline Count common_neighbor_count(const Graph& g, VertexId u, VertexId v) {
  if (u == v) throw GraphError("common_neighbor_count on identical vertices");
  Count n = 0;
  for_each_common_neighbor(g, u, v, [&](VertexId) { ++n; });
  return n;
}

inline Count common_neighbor_count(const Graph& g, const EdgeKey& e) {
  return common_neighbor_count(g, e.a(), e.b());
}

inline std::vector<VertexId> common_neighbors(const Graph& g, VertexId u,
                                              VertexId v) {
  std::vector<VertexId> out;
  for_each_common_neighbor(g, u, v, [&](VertexId z) { out.push_back(z); });
  return out;
}

/// Exact triangle count via forward (u < v < w) merge intersection.
inline Count triangle_count(const Graph& g) {
  Count total = 0;
  g.for_each_vertex([&](VertexId u, const Graph::Neighbors& nu) {
    for (auto it = std::upper_bound(nu.begin(), nu.end(), u); it != nu.end();
         ++it) {
      VertexId v = *it;
      for_each_common_neighbor(g, u, v, [&](VertexId w) {
        if (w > v) ++total;
      });
    }
  });
  return total;
}

/// Depth-limited breadth-first search. Returns layers[d] = vertices at exact
/// distance d from `source` for d = 0..max_depth (trailing empty layers are
/// dropped). Each layer is sorted ascending.
inline std::vector<std::vector<VertexId>> bfs_layers(
    const Graph& g, VertexId source,
    std::size_t max_depth = static_cast<std::size_t>(-1)) {
  if (!g.has_vertex(source))
    throw GraphError("unknown vertex " + std::to_string(source));
  std::vector<std::vector<VertexId>> layers{{source}};
  std::unordered_map<VertexId, bool> seen{{source, true}};
  while (layers.size() <= max_depth) {
    std::vector<VertexId> next;
    for (VertexId x : layers.back())
      for (VertexId y : g.neighbors(x))
        if (seen.try_emplace(y, true).second) next.push_back(y);
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    layers.push_back(std::move(next));
  }
  return layers;
}

/// Vertices at shortest-path distance exactly `hop` from v (hop >= 1).
inline std::vector<VertexId> hop_neighbors(const Graph& g, VertexId v,
                                           std::size_t hop) {
  if (hop == 0) throw GraphError("hop_neighbors requires hop >= 1");
  auto layers = bfs_layers(g, v, hop);
  if (layers.size() <= hop) return {};
  return std::move(layers[hop]);
}

/// Shortest-path distance from u to v, or nullopt when unreachable within
/// `max_depth` hops.
inline std::optional<std::size_t> bounded_distance(const Graph& g, VertexId u,
                                                   VertexId v,
                                                   std::size_t max_depth) {
  if (!g.has_vertex(v)) throw GraphError("unknown vertex " + std::to_string(v));
  if (u == v) return 0;
  std::unordered_map<VertexId, bool> seen{{u, true}};
  std::vector<VertexId> frontier{u};
  for (std::size_t d = 1; d <= max_depth && !frontier.empty(); ++d) {
    std::vector<VertexId> next;
    for (VertexId x : frontier)
      for (VertexId y : g.neighbors(x)) {
        if (y == v) return d;
        if (seen.try_emplace(y, true).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return std::nullopt;
}

/// True iff dist(u, v) >= d; unreachable pairs count as infinitely far.
inline bool spl_at_least(const Graph& g, VertexId u, VertexId v, std::size_t d) {
  if (u == v) throw GraphError("spl_at_least on identical vertices");
  if (!g.has_vertex(u)) throw GraphError("unknown vertex " + std::to_string(u));
  if (d == 0) return true;
  return !bounded_distance(g, u, v, d - 1).has_value();
}

}  // namespace nmfanon
