#pragma once

#include <map>
#include <set>
#include <vector>

#include "nmfanon/nmf_sequence.hpp"

namespace nmfanon {

/// Violation counts of one k for the mutual friend attack (edges) and the
/// degree attack (vertices).
struct AuditReport {
  Count k = 0;
  Count knmf_violations = 0;
  Count kdeg_violations = 0;
  std::vector<EdgeKey> violating_edges;
  std::vector<VertexId> violating_vertices;
};

/// E'_e: every edge whose NMF equals `nmf_value`, in key order.
inline std::vector<EdgeKey> candidate_edges(const Graph& g, Count nmf_value) {
  std::vector<EdgeKey> out;
  for (const EdgeKey& e : g.edges())
    if (common_neighbor_count(g, e) == nmf_value) out.push_back(e);
  return out;
}

namespace detail {

template <typename Item>
std::vector<Item> rare_items(const std::vector<std::pair<Item, Count>>& items,
                             Count k) {
  std::map<Count, Count> freq;
  for (const auto& [_, v] : items) ++freq[v];
  std::vector<Item> out;
  for (const auto& [item, v] : items)
    if (freq[v] < k) out.push_back(item);
  return out;
}

}  // namespace detail

/// Edges whose NMF value occurs fewer than k times, from a value histogram.
inline std::vector<EdgeKey> knmf_violations(const NmfSequence& seq, Count k) {
  std::vector<std::pair<EdgeKey, Count>> items;
  items.reserve(seq.size());
  for (const auto& en : seq.ordered()) items.emplace_back(en.edge, en.nmf);
  auto out = detail::rare_items(items, k);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<EdgeKey> audit_knmf(const Graph& g, Count k) {
  return knmf_violations(NmfSequence::build(g), k);
}

/// Vertices whose degree occurs fewer than k times, in id order.
inline std::vector<VertexId> audit_kdegree(const Graph& g, Count k) {
  std::vector<std::pair<VertexId, Count>> items;
  items.reserve(g.num_vertices());
  g.for_each_vertex([&](VertexId v, const Graph::Neighbors& ns) {
    items.emplace_back(v, ns.size());
  });
  return detail::rare_items(items, k);
}

/// One report per k over the same graph. The NMF sequence is built once.
inline std::vector<AuditReport> audit_sweep(const Graph& g,
                                            const std::vector<Count>& ks) {
  NmfSequence seq = NmfSequence::build(g);
  std::vector<AuditReport> out;
  for (Count k : ks) {
    AuditReport r;
    r.k = k;
    r.violating_edges = knmf_violations(seq, k);
    r.violating_vertices = audit_kdegree(g, k);
    r.knmf_violations = r.violating_edges.size();
    r.kdeg_violations = r.violating_vertices.size();
    out.push_back(std::move(r));
  }
  return out;
}

/// The anonymity level of a value sequence: the smallest class size
/// (0 for an empty sequence).
inline Count anonymity_level(const std::vector<Count>& values) {
  std::map<Count, Count> freq;
  for (Count v : values) ++freq[v];
  Count level = 0;
  for (const auto& [_, n] : freq)
    if (level == 0 || n < level) level = n;
  return level;
}

}  // namespace nmfanon
