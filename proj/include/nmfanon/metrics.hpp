#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "nmfanon/graph.hpp"
#include "nmfanon/random.hpp"

namespace nmfanon {

/// Exact (every vertex is a BFS source) or source-sampled evaluation.
struct MetricMode {
  std::size_t samples = 0;  // 0 = exact
  std::uint64_t seed = 0;

  static MetricMode exact() { return {}; }
  static MetricMode sampled(std::size_t n, std::uint64_t seed) { return {n, seed}; }
  bool is_exact() const { return samples == 0; }
};

/// Vertices with fewer than this many vertices are measured exactly unless a
/// mode is forced.
inline constexpr std::size_t kSampledAbove = 10000;
inline constexpr std::size_t kDefaultSamples = 1000;

inline MetricMode default_mode(const Graph& g, std::uint64_t seed) {
  return g.num_vertices() > kSampledAbove ? MetricMode::sampled(kDefaultSamples, seed)
                                          : MetricMode::exact();
}

/// Mean local clustering coefficient. Vertices of degree < 2 count as 0 unless
/// `exclude_low_degree` drops them from the mean.
inline double avg_clustering_coefficient(const Graph& g,
                                         bool exclude_low_degree = false) {
  double sum = 0.0;
  std::size_t counted = 0;
  g.for_each_vertex([&](VertexId v, const Graph::Neighbors& ns) {
    const std::size_t d = ns.size();
    if (d < 2) {
      if (!exclude_low_degree) ++counted;
      return;
    }
    std::size_t links = 0;
    for (VertexId x : ns)
      for_each_common_neighbor(g, v, x, [&](VertexId y) {
        if (y > x) ++links;
      });
    sum += static_cast<double>(links) / (static_cast<double>(d) * (d - 1) / 2.0);
    ++counted;
  });
  return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

namespace detail {

/// Sources for a metric run: all vertices in id order, or `samples` distinct
/// vertices drawn uniformly with the mode's seed.
inline std::vector<VertexId> metric_sources(const Graph& g, const MetricMode& mode) {
  std::vector<VertexId> vs = g.vertices();
  if (mode.is_exact() || mode.samples >= vs.size()) return vs;
  Rng rng(mode.seed);
  for (std::size_t i = 0; i < mode.samples; ++i) {
    std::size_t j = i + uniform_index(rng, vs.size() - i);
    std::swap(vs[i], vs[j]);
  }
  vs.resize(mode.samples);
  return vs;
}

}  // namespace detail

struct PathLengthResult {
  double value = 0.0;
  bool sampled = false;
  std::size_t sources = 0;
  std::uint64_t seed = 0;
  std::uint64_t reachable_pairs = 0;  // ordered pairs over the sources used
  double std_error = 0.0;             // of the per-source means; 0 when exact
};

/// Mean shortest-path length over reachable ordered pairs (unreachable pairs
/// are excluded).
inline PathLengthResult average_path_length(const Graph& g, const MetricMode& mode) {
  PathLengthResult r;
  r.sampled = !mode.is_exact();
  r.seed = mode.seed;
  auto sources = detail::metric_sources(g, mode);
  r.sources = sources.size();

  std::uint64_t total = 0;
  std::vector<double> means;
  for (VertexId s : sources) {
    auto layers = bfs_layers(g, s);
    std::uint64_t dist_sum = 0, pairs = 0;
    for (std::size_t d = 1; d < layers.size(); ++d) {
      dist_sum += d * layers[d].size();
      pairs += layers[d].size();
    }
    total += dist_sum;
    r.reachable_pairs += pairs;
    if (pairs > 0) means.push_back(static_cast<double>(dist_sum) / pairs);
  }
  if (r.reachable_pairs > 0)
    r.value = static_cast<double>(total) / static_cast<double>(r.reachable_pairs);
  if (r.sampled && means.size() > 1) {
    double mu = 0.0;
    for (double m : means) mu += m;
    mu /= means.size();
    double var = 0.0;
    for (double m : means) var += (m - mu) * (m - mu);
    var /= (means.size() - 1);
    r.std_error = std::sqrt(var / means.size());
  }
  return r;
}

/// Shortest-path betweenness of every vertex (unordered pairs, unnormalized),
/// via single-source dependency accumulation. In sampled mode the
/// accumulated dependencies are scaled by |V| / samples.
inline std::map<VertexId, double> betweenness(const Graph& g, const MetricMode& mode) {
  std::map<VertexId, double> bc;
  g.for_each_vertex([&](VertexId v, const Graph::Neighbors&) { bc[v] = 0.0; });
  auto sources = detail::metric_sources(g, mode);

  std::unordered_map<VertexId, double> sigma, delta;
  std::unordered_map<VertexId, std::int64_t> dist;
  std::unordered_map<VertexId, std::vector<VertexId>> preds;
  for (VertexId s : sources) {
    sigma.clear();
    delta.clear();
    dist.clear();
    preds.clear();
    std::vector<VertexId> order;
    std::vector<VertexId> queue{s};
    sigma[s] = 1.0;
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId x = queue[head];
      order.push_back(x);
      for (VertexId y : g.neighbors(x)) {
        auto [it, fresh] = dist.try_emplace(y, dist[x] + 1);
        if (fresh) queue.push_back(y);
        if (it->second == dist[x] + 1) {
          sigma[y] += sigma[x];
          preds[y].push_back(x);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      VertexId w = *it;
      for (VertexId p : preds[w]) delta[p] += sigma[p] / sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  double scale = 0.5;
  if (!sources.empty() && sources.size() < g.num_vertices())
    scale *= static_cast<double>(g.num_vertices()) / sources.size();
  for (auto& [_, value] : bc) value *= scale;
  return bc;
}

/// Equal-width histogram over [0, max value].
struct Histogram {
  double bin_width = 0.0;
  std::vector<std::size_t> counts;
};

inline Histogram make_histogram(const std::map<VertexId, double>& values,
                                std::size_t bins) {
  Histogram h;
  if (bins == 0) bins = 1;
  h.counts.assign(bins, 0);
  double hi = 0.0;
  for (const auto& [_, x] : values) hi = std::max(hi, x);
  h.bin_width = hi > 0.0 ? hi / static_cast<double>(bins) : 1.0;
  for (const auto& [_, x] : values) {
    auto b = static_cast<std::size_t>(x / h.bin_width);
    h.counts[std::min(b, bins - 1)]++;
  }
  return h;
}

struct ChangeReport {
  std::size_t edges_added = 0;
  std::size_t edges_removed = 0;
  double edges_added_ratio = 0.0;
  double edges_removed_ratio = 0.0;
  std::int64_t vertices_added = 0;
};

/// Edge and vertex changes of `anonymized` relative to `original`. Every
/// original vertex must still be present.
inline ChangeReport change_report(const Graph& original, const Graph& anonymized) {
  ChangeReport r;
  original.for_each_vertex([&](VertexId v, const Graph::Neighbors&) {
    if (!anonymized.has_vertex(v))
      throw GraphError("vertex " + std::to_string(v) +
                       " of the original graph is missing");
  });
  for (const EdgeKey& e : anonymized.edges())
    if (!original.has_edge(e)) ++r.edges_added;
  for (const EdgeKey& e : original.edges())
    if (!anonymized.has_edge(e)) ++r.edges_removed;
  const double m = static_cast<double>(original.num_edges());
  auto ratio = [&](std::size_t n) {
    if (n == 0) return 0.0;
    return m > 0 ? n / m : std::numeric_limits<double>::infinity();
  };
  r.edges_added_ratio = ratio(r.edges_added);
  r.edges_removed_ratio = ratio(r.edges_removed);
  r.vertices_added = static_cast<std::int64_t>(anonymized.num_vertices()) -
                     static_cast<std::int64_t>(original.num_vertices());
  return r;
}

struct MetricsReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t triangles = 0;
  double avg_clustering = 0.0;
  PathLengthResult avg_path_length;
  std::map<VertexId, double> betweenness;
  Histogram betweenness_histogram;
  std::optional<ChangeReport> changes;
};

struct MetricsOptions {
  std::optional<MetricMode> mode;  // default: default_mode()
  std::uint64_t seed = 0;
  std::size_t histogram_bins = 20;
  bool exclude_low_degree_cc = false;
};

inline MetricsReport compute_metrics(const Graph& g, const MetricsOptions& opts = {}) {
  MetricsReport r;
  MetricMode mode = opts.mode.value_or(default_mode(g, opts.seed));
  r.vertices = g.num_vertices();
  r.edges = g.num_edges();
  r.triangles = triangle_count(g);
  r.avg_clustering = avg_clustering_coefficient(g, opts.exclude_low_degree_cc);
  r.avg_path_length = average_path_length(g, mode);
  r.betweenness = betweenness(g, mode);
  r.betweenness_histogram = make_histogram(r.betweenness, opts.histogram_bins);
  return r;
}

}  // namespace nmfanon
