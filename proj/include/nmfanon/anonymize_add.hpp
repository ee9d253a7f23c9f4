#pragma once

#include <algorithm>
#include <vector>

#include "nmfanon/bfsea.hpp"
#include "nmfanon/grouping.hpp"
#include "nmfanon/result.hpp"

namespace nmfanon {

namespace detail {

inline Count group_size(const AnonState& st, Count g_f) {
  return st.has_group(g_f) ? st.group(g_f).members.size() : 0;
}

/// Marks every pending edge whose NMF equals g_f into group g_f.
inline void mark_all_with_nmf(AnonContext& ctx, Count g_f) {
  std::vector<EdgeKey> hits;
  for (const auto& en : ctx.pending()) {
    if (en.nmf < g_f) break;
    if (en.nmf == g_f) hits.push_back(en.edge);
  }
  for (const auto& e : hits) ctx.mark_anonymized(e, g_f);
}

/// One group per distinct NMF value; used when the input already satisfies
/// k-NMF anonymity.
inline void group_as_is(AnonContext& ctx) {
  while (!ctx.pending().empty()) {
    Count value = ctx.pending().begin()->nmf;
    ctx.open_or_resume_group(value);
    mark_all_with_nmf(ctx, value);
  }
  ctx.state().finalize_current();
}

inline std::vector<Count> pending_prefix(const AnonContext& ctx, std::size_t n) {
  std::vector<Count> out;
  for (const auto& en : ctx.pending()) {
    if (out.size() == n) break;
    out.push_back(en.nmf);
  }
  return out;
}

inline void log_vertex(AnonContext& ctx, const EdgeKey& target, VertexId y,
                       const char* phase) {
  if (!ctx.tracing()) return;
  TraceRecord rec;
  rec.kind = TraceRecord::Kind::vertex_added;
  rec.target = target;
  rec.vertex = y;
  rec.phase = phase;
  ctx.log(std::move(rec));
}

inline void add_logged_edge(AnonContext& ctx, const EdgeKey& target,
                            const EdgeKey& e, const char* phase) {
  ctx.add_edge(e);
  if (!ctx.tracing()) return;
  TraceRecord rec;
  rec.kind = TraceRecord::Kind::edge_added;
  rec.target = target;
  rec.edge = e;
  rec.phase = phase;
  ctx.log(std::move(rec));
}

/// Adds disjoint cliques on fresh vertices, each edge with NMF g_f, until at
/// least `needed` edges were marked into group g_f.
inline void pad_group(AnonContext& ctx, Count g_f, Count needed) {
  const Count size = g_f + 2;
  while (needed > 0) {
    std::vector<VertexId> fresh;
    for (Count i = 0; i < size; ++i) {
      fresh.push_back(ctx.add_vertex());
      log_vertex(ctx, EdgeKey{}, fresh.back(), "cleanup");
    }
    std::vector<EdgeKey> made;
    for (std::size_t i = 0; i < fresh.size(); ++i)
      for (std::size_t j = i + 1; j < fresh.size(); ++j) {
        made.emplace_back(fresh[i], fresh[j]);
        add_logged_edge(ctx, EdgeKey{}, made.back(), "cleanup");
      }
    for (const auto& e : made) ctx.mark_anonymized(e, g_f);
    needed -= std::min<Count>(needed, made.size());
  }
}

}  // namespace detail

/// Terminal step for the last (< 2k) unanonymized edges E_u. They form one
/// group whose NMF starts at max f_e; each edge is lifted to it with helper
/// vertices linked to both endpoints (each helper edge has NMF 1), and the
/// 2*sd helper edges form their own group. When 2*sd < k the group NMF is
/// raised by one and the computation repeats.
///
/// A group NMF is only accepted when the resulting group (existing members
/// plus E_u) reaches k; when no such value exists near the top of G_f, the
/// group is padded with fresh cliques whose edges carry that NMF.
inline void cleanup(AnonContext& ctx, Count k) {
  std::vector<NmfEntry> rest(ctx.pending().begin(), ctx.pending().end());
  if (rest.empty()) return;
  ctx.state().finalize_current();
  const AnonState& st = ctx.state();
  const Count top = rest.front().nmf;
  const Count n_u = rest.size();

  if (rest.back().nmf == top && (n_u >= k || st.has_group(top))) {
    ctx.open_or_resume_group(top);
    for (const auto& en : rest) ctx.mark_anonymized(en.edge, top);
    ctx.state().finalize_current();
    return;
  }

  auto sd_at = [&](Count g) {
    Count sd = 0;
    for (const auto& en : rest) sd += g - en.nmf;
    return sd;
  };
  auto helpers_ok = [&](Count g, Count sd) {
    if (sd == 0) return true;
    Count helper_group = detail::group_size(st, 1) + 2 * sd + (g == 1 ? n_u : 0);
    return helper_group >= k;
  };
  auto group_ok = [&](Count g, Count sd) {
    return detail::group_size(st, g) + n_u + (g == 1 ? 2 * sd : 0) >= k;
  };

  Count max_key = st.groups().empty() ? top : st.groups().rbegin()->first;
  Count limit = std::max(top, max_key) + k + 1;
  std::optional<Count> chosen;
  for (Count g = top; g <= limit; ++g) {
    Count sd = sd_at(g);
    if (helpers_ok(g, sd) && group_ok(g, sd)) {
      chosen = g;
      break;
    }
  }
  Count padding = 0;
  if (!chosen) {
    // only reachable when |E_u| < k and no existing group can absorb E_u
    Count g = top;
    while (!helpers_ok(g, sd_at(g))) ++g;
    chosen = g;
    Count sd = sd_at(g);
    Count have = detail::group_size(st, g) + n_u + (g == 1 ? 2 * sd : 0);
    padding = k - have;
  }

  const Count g_f = *chosen;
  ctx.open_or_resume_group(g_f);
  std::vector<EdgeKey> helper_edges;
  for (const auto& en : rest) {
    for (Count i = en.nmf; i < g_f; ++i) {
      VertexId y = ctx.add_vertex();
      detail::log_vertex(ctx, en.edge, y, "cleanup");
      for (VertexId x : {en.edge.a(), en.edge.b()}) {
        helper_edges.emplace_back(x, y);
        detail::add_logged_edge(ctx, en.edge, helper_edges.back(), "cleanup");
      }
    }
  }
  for (const auto& en : rest) ctx.mark_anonymized(en.edge, g_f);
  if (g_f == 1) {
    for (const auto& e : helper_edges) ctx.mark_anonymized(e, 1);
  }
  if (padding > 0) detail::pad_group(ctx, g_f, padding);
  if (g_f != 1 && !helper_edges.empty()) {
    ctx.open_or_resume_group(1);
    for (const auto& e : helper_edges) ctx.mark_anonymized(e, 1);
  }
  ctx.state().finalize_current();
}

/// ADD: anonymize by edge addition only, in descending NMF order.
inline AnonymizationResult add_anonymize(const Graph& g, Count k,
                                         GroupingStrategy strategy, Rng& rng,
                                         const AnonymizeOptions& opts = {}) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  AnonContext ctx(g);
  ctx.set_tracing(opts.trace);
  if (is_k_anonymous(ctx.sequence(), k)) {
    detail::group_as_is(ctx);
    auto r = make_result(ctx);
    r.already_anonymous = true;
    return r;
  }

  std::size_t fallback_edges = 0;
  auto raise = [&](const EdgeKey& e, Count g_f) {
    auto outcome = anonymize_edge_by_addition(ctx, e, g_f, rng);
    if (outcome.status == EdgeAnonOutcome::Status::fallback_vertices_added)
      ++fallback_edges;
    if (opts.on_step) opts.on_step(ctx);
  };

  while (!ctx.pending().empty()) {
    const NmfEntry top = *ctx.pending().begin();
    const auto cur = ctx.state().current_group();

    if (cur && top.nmf >= *cur) {
      // an edge pushed up to an existing group's NMF by earlier additions
      if (!ctx.state().has_group(top.nmf))
        throw StateError("unanonymized edge " + to_string(top.edge) +
                         " rose above the current group NMF");
      ctx.mark_anonymized(top.edge, top.nmf);
      continue;
    }

    const bool complete = !cur || detail::group_size(ctx.state(), *cur) >= k;
    if (!complete) {
      raise(top.edge, *cur);
      continue;
    }
    if (ctx.pending().size() < 2 * k) {
      cleanup(ctx, k);
      if (opts.on_step) opts.on_step(ctx);
      break;
    }
    if (cur && strategy == GroupingStrategy::greedy) {
      auto view = detail::pending_prefix(ctx, k + 1);
      if (greedy_group_decision(view, *cur, k) == GroupDecision::merge) {
        raise(top.edge, *cur);
        continue;
      }
    }
    ctx.open_or_resume_group(top.nmf);
    detail::mark_all_with_nmf(ctx, top.nmf);
    if (opts.on_step) opts.on_step(ctx);
  }
  ctx.state().finalize_current();

  auto r = make_result(ctx);
  r.fallback_edges = fallback_edges;
  return r;
}

}  // namespace nmfanon
