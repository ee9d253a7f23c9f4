#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nmfanon/audit.hpp"
#include "nmfanon/context.hpp"
#include "nmfanon/edge_list.hpp"
#include "nmfanon/metrics.hpp"
#include "nmfanon/result.hpp"

namespace nmfanon {

using json = nlohmann::ordered_json;

inline json edge_json(const EdgeKey& e) { return json::array({e.a(), e.b()}); }

inline json to_json(const IngestStats& s) {
  return {{"lines", s.lines},
          {"edge_lines", s.edge_lines},
          {"self_loops_dropped", s.self_loops},
          {"duplicates_dropped", s.duplicates},
          {"isolated_dropped", s.isolated_dropped},
          {"isolated_kept", s.isolated_kept}};
}

inline json to_json(const AuditReport& r, bool with_lists) {
  json j = {{"k", r.k},
            {"knmf_violations", r.knmf_violations},
            {"kdeg_violations", r.kdeg_violations}};
  if (with_lists) {
    json edges = json::array();
    for (const auto& e : r.violating_edges) edges.push_back(edge_json(e));
    j["violating_edges"] = std::move(edges);
    j["violating_vertices"] = r.violating_vertices;
  }
  return j;
}

inline std::string audit_csv(const std::vector<AuditReport>& reports) {
  std::ostringstream out;
  out << "k,knmf_violations,kdeg_violations\n";
  for (const auto& r : reports)
    out << r.k << ',' << r.knmf_violations << ',' << r.kdeg_violations << '\n';
  return out.str();
}

inline json to_json(const TraceRecord& t) {
  json j = {{"kind", to_string(t.kind)}, {"phase", t.phase}};
  if (t.kind == TraceRecord::Kind::vertex_added) {
    j["vertex"] = t.vertex;
  } else {
    j["edge"] = edge_json(t.edge);
  }
  j["target"] = edge_json(t.target);
  j["hop"] = t.hop;
  j["score"] = t.score;
  if (!t.classification.empty()) j["classification"] = t.classification;
  return j;
}

/// One JSON object per line.
inline std::string trace_jsonl(const std::vector<TraceRecord>& trace) {
  std::string out;
  for (const auto& t : trace) {
    out += to_json(t).dump();
    out += '\n';
  }
  return out;
}

inline json to_json(const AnonymizationResult& r) {
  json groups = json::array();
  for (const auto& g : r.groups)
    groups.push_back({{"g_f", g.g_f}, {"size", g.members.size()}});
  json j = {{"vertices", r.graph.num_vertices()},
            {"edges", r.graph.num_edges()},
            {"edges_added", r.edges_added},
            {"edges_removed", r.edges_removed},
            {"vertices_added", r.vertices_added},
            {"already_anonymous", r.already_anonymous},
            {"fallback_edges", r.fallback_edges},
            {"rollbacks", r.rollbacks},
            {"atpp_violations", r.atpp_violations}};
  if (!r.groups.empty()) j["groups"] = std::move(groups);
  if (!r.degree_groups.empty()) {
    json dg = json::array();
    for (const auto& g : r.degree_groups)
      dg.push_back({{"g_d", g.g_d}, {"size", g.members.size()}});
    j["degree_groups"] = std::move(dg);
    j["failed_vertices"] = r.failed_vertices;
    j["padding_vertices"] = r.padding_vertices;
  }
  return j;
}

inline json to_json(const PathLengthResult& p) {
  json j = {{"value", p.value},
            {"mode", p.sampled ? "sampled" : "exact"},
            {"sources", p.sources},
            {"reachable_pairs", p.reachable_pairs}};
  if (p.sampled) {
    j["seed"] = p.seed;
    j["std_error"] = p.std_error;
  }
  return j;
}

inline json to_json(const ChangeReport& c) {
  return {{"edges_added", c.edges_added},
          {"edges_removed", c.edges_removed},
          {"edges_added_ratio", c.edges_added_ratio},
          {"edges_removed_ratio", c.edges_removed_ratio},
          {"vertices_added", c.vertices_added}};
}

inline json to_json(const MetricsReport& m) {
  json j = {{"vertices", m.vertices},
            {"edges", m.edges},
            {"triangles", m.triangles},
            {"avg_clustering", m.avg_clustering},
            {"avg_path_length", to_json(m.avg_path_length)},
            {"betweenness_histogram",
             {{"bin_width", m.betweenness_histogram.bin_width},
              {"counts", m.betweenness_histogram.counts}}}};
  if (m.changes) j["changes"] = to_json(*m.changes);
  return j;
}

/// Per-vertex betweenness as "vertex,betweenness" rows in id order.
inline std::string betweenness_csv(const std::map<VertexId, double>& bc) {
  std::ostringstream out;
  out << "vertex,betweenness\n" << std::setprecision(17);
  for (const auto& [v, x] : bc) out << v << ',' << x << '\n';
  return out.str();
}

}  // namespace nmfanon
