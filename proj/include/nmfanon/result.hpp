#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "nmfanon/context.hpp"

namespace nmfanon {

/// Vertices sharing the group degree g_d after k-degree anonymization.
struct DegreeGroup {
  Count g_d = 0;
  std::set<VertexId> members;

  bool operator==(const DegreeGroup&) const = default;
};

struct AnonymizationResult {
  Graph graph;
  std::vector<Group> groups;
  std::size_t edges_added = 0;
  std::size_t edges_removed = 0;
  std::size_t vertices_added = 0;
  std::vector<TraceRecord> trace;

  bool already_anonymous = false;
  std::size_t fallback_edges = 0;  // edges that needed fresh vertices in BFSEA
  std::size_t rollbacks = 0;       // ADD&DEL group restarts
  std::size_t atpp_violations = 0;
  std::vector<std::string> atpp_messages;

  // k-degree layer only
  std::vector<DegreeGroup> degree_groups;
  std::vector<VertexId> failed_vertices;
  std::size_t padding_vertices = 0;

  bool success() const { return atpp_violations == 0 && failed_vertices.empty(); }
};

struct AnonymizeOptions {
  bool trace = false;
  /// Called after every edge anonymization step with the live context.
  std::function<void(const AnonContext&)> on_step;
  /// Called after each ADD&DEL rollback with the restored context and the
  /// snapshot it was restored from.
  std::function<void(const AnonContext&, const AnonContext&)> on_rollback;
};

inline AnonymizationResult make_result(const AnonContext& ctx) {
  AnonymizationResult r;
  r.graph = ctx.graph();
  for (const auto& [_, grp] : ctx.state().groups()) r.groups.push_back(grp);
  r.edges_added = ctx.edges_added();
  r.edges_removed = ctx.edges_removed();
  r.vertices_added = ctx.vertices_added();
  r.trace = ctx.trace();
  r.atpp_violations = ctx.atpp_violations();
  r.atpp_messages = ctx.atpp_messages();
  return r;
}

}  // namespace nmfanon
