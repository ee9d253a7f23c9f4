#pragma once

#include <map>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "nmfanon/audit.hpp"
#include "nmfanon/grouping.hpp"
#include "nmfanon/random.hpp"
#include "nmfanon/result.hpp"

namespace nmfanon {

struct KdaOptions {
  /// k of the NMF anonymity to preserve. Defaults to the input's own level
  /// (its smallest NMF class).
  std::optional<Count> k_nmf;
  bool trace = false;
};

namespace detail {

struct DegreeEntry {
  Count degree = 0;
  VertexId v = 0;
  bool operator<(const DegreeEntry& o) const {
    if (degree != o.degree) return degree > o.degree;
    return v < o.v;
  }
};

class KdaRun {
 public:
  KdaRun(const Graph& g, Count k, Rng& rng, bool trace)
      : graph_(g), k_(k), rng_(rng), tracing_(trace) {
    graph_.for_each_vertex([&](VertexId v, const Graph::Neighbors& ns) {
      pending_.insert({ns.size(), v});
    });
  }

  void run() {
    while (!pending_.empty()) {
      const DegreeEntry top = *pending_.begin();
      if (current_ && top.degree >= *current_) {
        if (!groups_.contains(top.degree))
          throw StateError("unanonymized vertex rose above the group degree");
        mark(top.v, top.degree);
        continue;
      }
      const bool complete = !current_ || groups_.at(*current_).members.size() >= k_;
      if (!complete) {
        raise(top.v, *current_);
        continue;
      }
      const std::size_t n_u = pending_.size();
      if (current_ && n_u < k_) {
        raise(top.v, *current_);
        continue;
      }
      if (current_ && n_u >= k_ + 1) {
        std::vector<Count> view;
        for (const auto& en : pending_) {
          if (view.size() == k_ + 1) break;
          view.push_back(en.degree);
        }
        if (greedy_group_decision(view, *current_, k_) == GroupDecision::merge) {
          raise(top.v, *current_);
          continue;
        }
      }
      current_ = top.degree;
      groups_[top.degree].g_d = top.degree;
      std::vector<VertexId> same;
      for (const auto& en : pending_) {
        if (en.degree != top.degree) break;
        same.push_back(en.v);
      }
      for (VertexId v : same) mark(v, top.degree);
    }
  }

  void run_as_is() {
    while (!pending_.empty()) {
      const DegreeEntry top = *pending_.begin();
      mark(top.v, top.degree);
    }
  }

  /// Adds a cycle on fresh vertices so that NMF-0 edges, if any, reach k_nmf.
  void pad_zero_class(Count k_nmf) {
    Count zeros = 0;
    for (const EdgeKey& e : graph_.edges())
      if (common_neighbor_count(graph_, e) == 0) ++zeros;
    if (zeros == 0 || zeros >= k_nmf) return;
    Count deg2 = 0;
    graph_.for_each_vertex([&](VertexId, const Graph::Neighbors& ns) {
      if (ns.size() == 2) ++deg2;
    });
    Count length = std::max<Count>({4, k_nmf - zeros, deg2 == 0 ? k_ : 0});
    std::vector<VertexId> ring;
    for (Count i = 0; i < length; ++i) ring.push_back(graph_.add_vertex());
    for (Count i = 0; i < length; ++i) {
      EdgeKey e(ring[i], ring[(i + 1) % length]);
      graph_.add_edge(e);
      log(e, EdgeKey{}, 0, "padding");
      ++edges_added_;
    }
    groups_[2].g_d = 2;
    groups_[2].members.insert(ring.begin(), ring.end());
    padding_vertices_ = length;
  }

  AnonymizationResult result() const {
    AnonymizationResult r;
    r.graph = graph_;
    for (const auto& [_, grp] : groups_) r.degree_groups.push_back(grp);
    r.edges_added = edges_added_;
    r.vertices_added = padding_vertices_;
    r.padding_vertices = padding_vertices_;
    r.failed_vertices = failed_;
    r.trace = trace_;
    return r;
  }

 private:
  void mark(VertexId v, Count degree) {
    pending_.erase({degree, v});
    groups_[degree].g_d = degree;
    groups_[degree].members.insert(v);
  }

  bool is_pending(VertexId v) const {
    return pending_.contains({graph_.degree(v), v});
  }

  /// A vertex already placed in a degree class may still take one edge when
  /// its class keeps k members without it and the next class up exists.
  bool can_migrate(VertexId w) const {
    Count d = graph_.degree(w);
    auto from = groups_.find(d);
    if (from == groups_.end() || !from->second.members.contains(w)) return false;
    return from->second.members.size() > k_ && groups_.contains(d + 1);
  }

  struct Targets {
    std::vector<VertexId> vertices;
    std::size_t hop = 0;  // 0 = another component
    bool migrate = false;
  };

  /// Vertices at SPL >= 3 from u that can take one more edge: pending vertices
  /// that stay within g_d, nearest hop layer (3, 4, ...) first, then other
  /// components; failing that, grouped vertices that can migrate one class up.
  Targets targets(VertexId u, Count g_d) const {
    auto layers = bfs_layers(graph_, u);
    std::unordered_set<VertexId> reached;
    for (const auto& layer : layers) reached.insert(layer.begin(), layer.end());
    auto search = [&](auto&& ok, bool migrate) {
      for (std::size_t hop = 3; hop < layers.size(); ++hop) {
        Targets t{{}, hop, migrate};
        for (VertexId w : layers[hop])
          if (ok(w)) t.vertices.push_back(w);
        if (!t.vertices.empty()) return t;
      }
      Targets t{{}, 0, migrate};
      graph_.for_each_vertex([&](VertexId w, const Graph::Neighbors&) {
        if (!reached.contains(w) && ok(w)) t.vertices.push_back(w);
      });
      return t;
    };
    auto pending_ok = [&](VertexId w) {
      return w != u && is_pending(w) && graph_.degree(w) + 1 <= g_d;
    };
    Targets t = search(pending_ok, false);
    if (!t.vertices.empty()) return t;
    return search([&](VertexId w) { return w != u && can_migrate(w); }, true);
  }

  void raise(VertexId u, Count g_d) {
    while (graph_.degree(u) < g_d) {
      auto t = targets(u, g_d);
      if (t.vertices.empty()) {
        pending_.erase({graph_.degree(u), u});
        failed_.push_back(u);
        return;
      }
      VertexId w = t.vertices[uniform_index(rng_, t.vertices.size())];
      if (!spl_at_least(graph_, u, w, 3))
        throw StateError("KDA target within distance 2");
      Count du = graph_.degree(u), dw = graph_.degree(w);
      pending_.erase({du, u});
      if (t.migrate) {
        groups_.at(dw).members.erase(w);
        groups_.at(dw + 1).members.insert(w);
      } else {
        pending_.erase({dw, w});
        pending_.insert({dw + 1, w});
      }
      EdgeKey e(u, w);
      graph_.add_edge(e);
      ++edges_added_;
      pending_.insert({du + 1, u});
      log(e, e, t.hop, t.migrate ? "kda-migrate" : "kda");
    }
    mark(u, g_d);
  }

  void log(const EdgeKey& e, const EdgeKey& target, std::size_t hop,
           const char* phase) {
    if (!tracing_) return;
    TraceRecord rec;
    rec.kind = TraceRecord::Kind::edge_added;
    rec.target = target;
    rec.edge = e;
    rec.hop = hop;
    rec.classification = "nmf:0";
    rec.phase = phase;
    trace_.push_back(std::move(rec));
  }

  Graph graph_;
  Count k_;
  Rng& rng_;
  bool tracing_;
  std::set<DegreeEntry> pending_;
  std::map<Count, DegreeGroup> groups_;
  std::optional<Count> current_;
  std::vector<VertexId> failed_;
  std::vector<TraceRecord> trace_;
  std::size_t edges_added_ = 0;
  std::size_t padding_vertices_ = 0;
};

}  // namespace detail

/// k-degree anonymization that only adds edges between vertices at shortest
/// path length >= 3, so no triangle is created and every existing edge keeps
/// its NMF. Deficient vertices link to unanonymized vertices; when none is
/// left, to grouped vertices whose class can spare them (they move one class
/// up). Vertices that still cannot be raised are reported in failed_vertices.
inline AnonymizationResult kda_anonymize(const Graph& g, Count k_deg, Rng& rng,
                                         const KdaOptions& opts = {}) {
  if (k_deg == 0) throw std::invalid_argument("k_deg must be >= 1");
  Count k_nmf = opts.k_nmf.value_or(
      anonymity_level(NmfSequence::build(g).values()));
  detail::KdaRun run(g, k_deg, rng, opts.trace);
  if (audit_kdegree(g, k_deg).empty()) {
    // already k-degree anonymous: record the classes, change nothing
    run.run_as_is();
    auto r = run.result();
    r.already_anonymous = true;
    return r;
  }
  run.run();
  if (k_nmf > 0) run.pad_zero_class(k_nmf);
  return run.result();
}

/// Both guarantees hold on the KDA output.
inline bool audit_after_kda(Count k_nmf, Count k_deg, const Graph& result) {
  return audit_knmf(result, k_nmf).empty() && audit_kdegree(result, k_deg).empty();
}

}  // namespace nmfanon
