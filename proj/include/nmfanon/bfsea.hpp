#pragma once

#include <map>
#include <set>
#include <vector>

#include "nmfanon/context.hpp"
#include "nmfanon/random.hpp"

namespace nmfanon {

/// CV_i: candidate vertices drawn from the i-hop neighbors of a target edge.
struct CandidateSet {
  std::size_t hop = 0;
  std::set<VertexId> vertices;
};

enum class EdgeClass { reject, anonymized, unanonymized };

struct Classification {
  EdgeClass kind = EdgeClass::unanonymized;
  Count group = 0;  // target group when kind == anonymized

  bool operator==(const Classification&) const = default;
};

inline std::string to_string(const Classification& c) {
  switch (c.kind) {
    case EdgeClass::reject: return "reject";
    case EdgeClass::anonymized: return "anonymized:" + std::to_string(c.group);
    case EdgeClass::unanonymized: return "unanonymized";
  }
  return "?";
}

struct EdgeAnonOutcome {
  enum class Status { anonymized, fallback_vertices_added };

  Status status = Status::anonymized;
  std::vector<EdgeKey> edges_added;
  std::vector<VertexId> vertices_added;
  std::vector<std::pair<EdgeKey, Classification>> new_edge_classification;
};

/// Where a new edge with NMF `nmf_e` may go while the current group is `g_f`.
/// Edges at or above g_f can only join an existing group of exactly their NMF;
/// anything else above g_f would break the descending processing order.
inline Classification classify_new_edge(const std::set<Count>& group_nmfs,
                                        Count nmf_e, Count g_f) {
  if (nmf_e < g_f) return {EdgeClass::unanonymized, 0};
  if (group_nmfs.contains(nmf_e)) return {EdgeClass::anonymized, nmf_e};
  return {EdgeClass::reject, 0};
}

inline Classification classify_new_edge(const AnonState& st, Count nmf_e,
                                        Count g_f) {
  return classify_new_edge(st.group_keys(), nmf_e, g_f);
}

/// nmf'(w, x): 0 when (w, x) is already an edge, else |N(w) ∩ N(x)|.
inline Count nmf_prime(const Graph& g, VertexId w, VertexId x) {
  if (g.has_edge(w, x)) return 0;
  return common_neighbor_count(g, w, x);
}

/// Linking w to x (when not yet adjacent) creates a triangle (x, w, z) for each
/// common neighbor z; both (x, z) and (w, z) must still be unanonymized.
inline bool link_preserves_anonymized(const Graph& g, const AnonState& st,
                                      VertexId w, VertexId x) {
  if (g.has_edge(w, x)) return true;
  bool ok = true;
  for_each_common_neighbor(g, w, x, [&](VertexId z) {
    if (ok && (st.is_anonymized(EdgeKey(x, z)) || st.is_anonymized(EdgeKey(w, z))))
      ok = false;
  });
  return ok;
}

/// Conditions (b) and (c) for w with respect to the target edge (u, v).
inline bool is_valid_candidate(const Graph& g, const AnonState& st, VertexId u,
                               VertexId v, VertexId w) {
  if (w == u || w == v) return false;
  if (g.has_edge(w, u) && g.has_edge(w, v)) return false;
  return link_preserves_anonymized(g, st, w, u) &&
         link_preserves_anonymized(g, st, w, v);
}

/// CV_i for target (u, v): members of neig_i(u) ∪ neig_i(v) that satisfy the
/// triangle and anonymized-triangle conditions.
inline CandidateSet generate_candidates(const Graph& g, const AnonState& st,
                                        VertexId u, VertexId v, std::size_t hop) {
  CandidateSet cs;
  cs.hop = hop;
  for (VertexId src : {u, v})
    for (VertexId w : hop_neighbors(g, src, hop))
      if (is_valid_candidate(g, st, u, v, w)) cs.vertices.insert(w);
  return cs;
}

inline Count candidate_score(const Graph& g, VertexId w, VertexId u, VertexId v) {
  return nmf_prime(g, w, u) + nmf_prime(g, w, v);
}

/// Maximum mutual friend criterion for hops 1-2 (ties to the smallest id),
/// uniform random choice for hop >= 3.
inline VertexId select_candidate(const Graph& g, const CandidateSet& cands,
                                 VertexId u, VertexId v, Rng& rng) {
  if (cands.vertices.empty())
    throw GraphError("select_candidate on an empty candidate set");
  if (cands.hop >= 3) {
    auto it = cands.vertices.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(
                         uniform_index(rng, cands.vertices.size())));
    return *it;
  }
  VertexId best = *cands.vertices.begin();
  Count best_score = candidate_score(g, best, u, v);
  for (VertexId w : cands.vertices) {
    Count s = candidate_score(g, w, u, v);
    if (s > best_score) {
      best = w;
      best_score = s;
    }
  }
  return best;
}

/// Drops candidates that can no longer be linked once w_max has joined a
/// triangle with the target edge (u, v).
inline void dynamic_removal(const Graph& g, const AnonState& st,
                            CandidateSet& cands, VertexId w_max, VertexId u,
                            VertexId v) {
  for (auto it = cands.vertices.begin(); it != cands.vertices.end();) {
    VertexId w = *it;
    bool drop = false;
    if (w != w_max && g.has_edge(w, w_max)) {
      if (st.is_anonymized(EdgeKey(w, w_max))) {
        drop = true;
      } else {
        for (VertexId x : {u, v})
          if (g.has_edge(w_max, x) && st.is_anonymized(EdgeKey(w_max, x)) &&
              !g.has_edge(w, x))
            drop = true;
      }
    }
    it = drop ? cands.vertices.erase(it) : std::next(it);
  }
}

namespace detail {

/// Planned link of w to the endpoints of the target it is not adjacent to.
struct LinkPlan {
  std::vector<EdgeKey> new_edges;
  std::vector<Classification> classes;
};

/// Evaluates linking w to (u, v) without mutating the graph. Returns false
/// when the link would touch an anonymized edge, when a new edge must be
/// rejected, or when an existing unanonymized edge would be pushed to an NMF
/// at or above g_f that no group holds.
inline bool plan_link(const AnonContext& ctx, VertexId u, VertexId v,
                      VertexId w, Count g_f, LinkPlan& plan) {
  const Graph& g = ctx.graph();
  const AnonState& st = ctx.state();
  if (!is_valid_candidate(g, st, u, v, w)) return false;

  std::vector<VertexId> missing;
  for (VertexId x : {u, v})
    if (!g.has_edge(x, w)) missing.push_back(x);

  const auto keys = st.group_keys();
  const EdgeKey target(u, v);
  std::map<EdgeKey, Count> bumps;
  plan = {};
  for (VertexId x : missing) {
    Count value = common_neighbor_count(g, x, w);
    // the other endpoint becomes a common neighbor when both links are made
    if (missing.size() == 2) ++value;
    auto cls = classify_new_edge(keys, value, g_f);
    if (cls.kind == EdgeClass::reject) return false;
    plan.new_edges.emplace_back(x, w);
    plan.classes.push_back(cls);
    for_each_common_neighbor(g, x, w, [&](VertexId z) {
      for (EdgeKey side : {EdgeKey(x, z), EdgeKey(w, z)})
        if (side != target) ++bumps[side];
    });
  }
  for (const auto& [side, delta] : bumps) {
    Count after = ctx.nmf(side) + delta;
    if (after >= g_f && !keys.contains(after)) return false;
  }
  return true;
}

inline void apply_link(AnonContext& ctx, const EdgeKey& target,
                       const LinkPlan& plan, std::size_t hop, Count score,
                       const char* phase, EdgeAnonOutcome& out) {
  for (const EdgeKey& ne : plan.new_edges) {
    ctx.add_edge(ne);
    out.edges_added.push_back(ne);
  }
  for (std::size_t i = 0; i < plan.new_edges.size(); ++i) {
    const auto& cls = plan.classes[i];
    if (cls.kind == EdgeClass::anonymized)
      ctx.mark_anonymized(plan.new_edges[i], cls.group);
    out.new_edge_classification.emplace_back(plan.new_edges[i], cls);
    if (ctx.tracing()) {
      TraceRecord rec;
      rec.kind = TraceRecord::Kind::edge_added;
      rec.target = target;
      rec.edge = plan.new_edges[i];
      rec.hop = hop;
      rec.score = score;
      rec.classification = to_string(cls);
      rec.phase = phase;
      ctx.log(std::move(rec));
    }
  }
}

}  // namespace detail

/// Raises nmf(e) to g_f by linking breadth-first candidates to its endpoints.
/// Falls back to fresh vertices linked to both endpoints when no candidate is
/// left anywhere in the graph. `e` ends up anonymized in group g_f, which must
/// already exist.
inline EdgeAnonOutcome anonymize_edge_by_addition(AnonContext& ctx,
                                                  const EdgeKey& e, Count g_f,
                                                  Rng& rng) {
  if (ctx.state().is_anonymized(e))
    throw StateError("edge " + to_string(e) + " is already anonymized");
  if (ctx.nmf(e) >= g_f)
    throw StateError("edge " + to_string(e) + " already has NMF >= " +
                     std::to_string(g_f));
  if (!ctx.state().has_group(g_f))
    throw StateError("no group with NMF " + std::to_string(g_f));

  const VertexId u = e.a();
  const VertexId v = e.b();
  EdgeAnonOutcome out;

  for (std::size_t hop = 1; ctx.nmf(e) < g_f; ++hop) {
    if (hop_neighbors(ctx.graph(), u, hop).empty() &&
        hop_neighbors(ctx.graph(), v, hop).empty())
      break;
    CandidateSet cands = generate_candidates(ctx.graph(), ctx.state(), u, v, hop);
    while (!cands.vertices.empty() && ctx.nmf(e) < g_f) {
      VertexId w = select_candidate(ctx.graph(), cands, u, v, rng);
      cands.vertices.erase(w);
      detail::LinkPlan plan;
      if (!detail::plan_link(ctx, u, v, w, g_f, plan)) continue;
      Count score = candidate_score(ctx.graph(), w, u, v);
      detail::apply_link(ctx, e, plan, hop, score, "bfsea", out);
      dynamic_removal(ctx.graph(), ctx.state(), cands, w, u, v);
    }
  }

  if (ctx.nmf(e) < g_f) {
    out.status = EdgeAnonOutcome::Status::fallback_vertices_added;
    while (ctx.nmf(e) < g_f) {
      VertexId y = ctx.add_vertex();
      out.vertices_added.push_back(y);
      if (ctx.tracing()) {
        TraceRecord rec;
        rec.kind = TraceRecord::Kind::vertex_added;
        rec.target = e;
        rec.vertex = y;
        rec.phase = "fallback";
        ctx.log(std::move(rec));
      }
      detail::LinkPlan plan;
      plan.new_edges = {EdgeKey(u, y), EdgeKey(v, y)};
      auto cls = classify_new_edge(ctx.state(), 1, g_f);
      plan.classes = {cls, cls};
      detail::apply_link(ctx, e, plan, 0, 0, "fallback", out);
    }
  }
  ctx.mark_anonymized(e, g_f);
  return out;
}

}  // namespace nmfanon
