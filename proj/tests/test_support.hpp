#pragma once

// Fixtures, random generators and brute-force oracles shared by the unit and
// acceptance suites. The oracles deliberately avoid the library's own
// intersection/BFS code paths.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "nmfanon/graph.hpp"

namespace nmfanon::testing {

inline Graph make_graph(std::initializer_list<std::pair<VertexId, VertexId>> edges,
                        std::initializer_list<VertexId> extra_vertices = {}) {
  Graph g;
  for (auto [u, v] : edges) {
    g.insert_vertex(u);
    g.insert_vertex(v);
  }
  for (VertexId v : extra_vertices) g.insert_vertex(v);
  for (auto [u, v] : edges) g.add_edge(EdgeKey(u, v));
  return g;
}

inline Graph make_graph(const std::vector<std::pair<VertexId, VertexId>>& edges) {
  Graph g;
  for (auto [u, v] : edges) {
    g.insert_vertex(u);
    g.insert_vertex(v);
  }
  for (auto [u, v] : edges) g.add_edge(EdgeKey(u, v));
  return g;
}

/// The 4-NMF example graph on v1..v5.
inline Graph g5() {
  return make_graph({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 5}});
}

inline Graph complete(VertexId n, VertexId first = 1) {
  Graph g;
  for (VertexId i = 0; i < n; ++i) g.insert_vertex(first + i);
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) g.add_edge(EdgeKey(first + i, first + j));
  return g;
}

inline Graph path(VertexId n, VertexId first = 1) {
  Graph g;
  for (VertexId i = 0; i < n; ++i) g.insert_vertex(first + i);
  for (VertexId i = 0; i + 1 < n; ++i) g.add_edge(EdgeKey(first + i, first + i + 1));
  return g;
}

inline Graph cycle(VertexId n, VertexId first = 1) {
  Graph g = path(n, first);
  g.add_edge(EdgeKey(first, first + n - 1));
  return g;
}

/// Center 0 with leaves 1..n.
inline Graph star(VertexId n) {
  Graph g;
  g.insert_vertex(0);
  for (VertexId i = 1; i <= n; ++i) {
    g.insert_vertex(i);
    g.add_edge(EdgeKey(0, i));
  }
  return g;
}

/// Erdős–Rényi G(n, p) on ids 0..n-1, isolated vertices kept.
inline Graph gnp(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Graph g;
  for (VertexId i = 0; i < n; ++i) g.insert_vertex(i);
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j)
      if (unit(rng) < p) g.add_edge(EdgeKey(i, j));
  return g;
}

/// G(n, p) with the isolated vertices dropped, as ingestion would.
inline Graph gnp_connected_only(std::size_t n, double p, std::uint64_t seed) {
  Graph full = gnp(n, p, seed);
  Graph g;
  for (const EdgeKey& e : full.edges()) {
    g.insert_vertex(e.a());
    g.insert_vertex(e.b());
  }
  for (const EdgeKey& e : full.edges()) g.add_edge(e);
  return g;
}

/// Adjacency matrix view for the oracles.
struct Dense {
  std::vector<VertexId> ids;
  std::map<VertexId, std::size_t> index;
  std::vector<std::vector<bool>> adj;

  explicit Dense(const Graph& g) : ids(g.vertices()) {
    for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
    adj.assign(ids.size(), std::vector<bool>(ids.size(), false));
    for (const EdgeKey& e : g.edges()) {
      adj[index[e.a()]][index[e.b()]] = true;
      adj[index[e.b()]][index[e.a()]] = true;
    }
  }
  std::size_t n() const { return ids.size(); }
};

/// Triangles through (u, v) by scanning every third vertex.
inline std::size_t brute_triangles_through(const Graph& g, VertexId u, VertexId v) {
  Dense d(g);
  std::size_t a = d.index.at(u), b = d.index.at(v), t = 0;
  for (std::size_t c = 0; c < d.n(); ++c)
    if (c != a && c != b && d.adj[a][b] && d.adj[a][c] && d.adj[b][c]) ++t;
  return t;
}

/// Triangles by enumerating every vertex triple.
inline std::size_t brute_triangle_count(const Graph& g) {
  Dense d(g);
  std::size_t t = 0;
  for (std::size_t a = 0; a < d.n(); ++a)
    for (std::size_t b = a + 1; b < d.n(); ++b)
      if (d.adj[a][b])
        for (std::size_t c = b + 1; c < d.n(); ++c)
          if (d.adj[a][c] && d.adj[b][c]) ++t;
  return t;
}

/// All-pairs distances by Floyd–Warshall (-1 = unreachable).
inline std::vector<std::vector<long>> floyd(const Dense& d) {
  const long inf = 1L << 40;
  std::vector<std::vector<long>> dist(d.n(), std::vector<long>(d.n(), inf));
  for (std::size_t i = 0; i < d.n(); ++i) {
    dist[i][i] = 0;
    for (std::size_t j = 0; j < d.n(); ++j)
      if (d.adj[i][j]) dist[i][j] = 1;
  }
  for (std::size_t m = 0; m < d.n(); ++m)
    for (std::size_t i = 0; i < d.n(); ++i)
      for (std::size_t j = 0; j < d.n(); ++j)
        dist[i][j] = std::min(dist[i][j], dist[i][m] + dist[m][j]);
  for (auto& row : dist)
    for (auto& x : row)
      if (x >= inf) x = -1;
  return dist;
}

/// Betweenness by enumerating every shortest path of every unordered pair.
inline std::map<VertexId, double> naive_betweenness(const Graph& g) {
  Dense d(g);
  auto dist = floyd(d);
  std::map<VertexId, double> bc;
  for (VertexId v : d.ids) bc[v] = 0.0;
  // explicit path enumeration by DFS along distance-decreasing edges
  for (std::size_t s = 0; s < d.n(); ++s)
    for (std::size_t t = s + 1; t < d.n(); ++t) {
      if (dist[s][t] <= 1) continue;
      std::vector<std::vector<std::size_t>> paths;
      std::vector<std::size_t> cur{s};
      auto dfs = [&](auto&& self, std::size_t x) -> void {
        if (x == t) {
          paths.push_back(cur);
          return;
        }
        for (std::size_t y = 0; y < d.n(); ++y)
          if (d.adj[x][y] && dist[y][t] == dist[x][t] - 1) {
            cur.push_back(y);
            self(self, y);
            cur.pop_back();
          }
      };
      dfs(dfs, s);
      std::map<std::size_t, std::size_t> through;
      for (const auto& p : paths)
        for (std::size_t i = 1; i + 1 < p.size(); ++i) ++through[p[i]];
      for (const auto& [x, c] : through)
        bc[d.ids[x]] += static_cast<double>(c) / static_cast<double>(paths.size());
    }
  return bc;
}

/// Mean distance over reachable ordered pairs, from Floyd–Warshall.
inline double naive_apl(const Graph& g) {
  Dense d(g);
  auto dist = floyd(d);
  double sum = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < d.n(); ++i)
    for (std::size_t j = 0; j < d.n(); ++j)
      if (i != j && dist[i][j] > 0) {
        sum += static_cast<double>(dist[i][j]);
        ++pairs;
      }
  return pairs ? sum / static_cast<double>(pairs) : 0.0;
}

/// NMF value frequency check written independently of the library.
inline bool value_counts_at_least(const std::vector<std::size_t>& values, std::size_t k) {
  std::map<std::size_t, std::size_t> f;
  for (auto v : values) f[v]++;
  return std::all_of(f.begin(), f.end(), [&](const auto& kv) { return kv.second >= k; });
}

/// NMF of every edge via the dense oracle.
inline std::vector<std::size_t> brute_nmf_values(const Graph& g) {
  Dense d(g);
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < d.n(); ++a)
    for (std::size_t b = a + 1; b < d.n(); ++b)
      if (d.adj[a][b]) {
        std::size_t c = 0;
        for (std::size_t z = 0; z < d.n(); ++z)
          if (d.adj[a][z] && d.adj[b][z]) ++c;
        out.push_back(c);
      }
  return out;
}

inline bool vertices_preserved(const Graph& original, const Graph& result) {
  for (VertexId v : original.vertices())
    if (!result.has_vertex(v)) return false;
  return true;
}

/// Mean local clustering coefficient from the adjacency matrix; degree < 2
/// vertices count as zero.
inline double brute_clustering(const Graph& g) {
  Dense d(g);
  if (d.n() == 0) return 0.0;
  double sum = 0;
  for (std::size_t v = 0; v < d.n(); ++v) {
    std::vector<std::size_t> ns;
    for (std::size_t x = 0; x < d.n(); ++x)
      if (d.adj[v][x]) ns.push_back(x);
    if (ns.size() < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < ns.size(); ++i)
      for (std::size_t j = i + 1; j < ns.size(); ++j)
        if (d.adj[ns[i]][ns[j]]) ++links;
    sum += 2.0 * links / (static_cast<double>(ns.size()) * (ns.size() - 1));
  }
  return sum / static_cast<double>(d.n());
}

}  // namespace nmfanon::testing
