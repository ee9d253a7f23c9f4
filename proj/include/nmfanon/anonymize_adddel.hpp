#pragma once

#include <set>
#include <vector>

#include "nmfanon/anonymize_add.hpp"

namespace nmfanon {

/// CE for target (u, v): for each common neighbor w with (u, w) and (v, w)
/// both unanonymized, the edge (x, w), x in {u, v}, whose removal destroys no
/// triangle holding an anonymized edge. When both sides qualify only the one
/// with fewer mutual friends is kept (ties to the smaller key).
inline std::vector<EdgeKey> deletion_candidates(const Graph& g,
                                                const AnonState& st, VertexId u,
                                                VertexId v) {
  auto removable = [&](VertexId x, VertexId w) {
    bool ok = true;
    for_each_common_neighbor(g, x, w, [&](VertexId z) {
      if (ok && (st.is_anonymized(EdgeKey(x, z)) || st.is_anonymized(EdgeKey(w, z))))
        ok = false;
    });
    return ok;
  };
  std::vector<EdgeKey> out;
  for (VertexId w : common_neighbors(g, u, v)) {
    EdgeKey uw(u, w), vw(v, w);
    if (st.is_anonymized(uw) || st.is_anonymized(vw)) continue;
    bool ru = removable(u, w);
    bool rv = removable(v, w);
    if (ru && rv) {
      Count nu = common_neighbor_count(g, uw);
      Count nv = common_neighbor_count(g, vw);
      out.push_back(nu < nv || (nu == nv && uw < vw) ? uw : vw);
    } else if (ru) {
      out.push_back(uw);
    } else if (rv) {
      out.push_back(vw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Lowers nmf(e) to g_f by removing, one at a time, the candidate edge with
/// the fewest mutual friends. CE is recomputed after every removal. On
/// success `e` is marked into group g_f; on failure the caller rolls back.
inline bool anonymize_edge_by_deletion(AnonContext& ctx, const EdgeKey& e,
                                       Count g_f) {
  if (ctx.state().is_anonymized(e))
    throw StateError("edge " + to_string(e) + " is already anonymized");
  if (ctx.nmf(e) <= g_f)
    throw StateError("edge " + to_string(e) + " already has NMF <= " +
                     std::to_string(g_f));
  while (ctx.nmf(e) > g_f) {
    auto ce = deletion_candidates(ctx.graph(), ctx.state(), e.a(), e.b());
    if (ce.empty()) return false;
    auto best = ce.front();
    Count best_nmf = ctx.nmf(best);
    for (const auto& c : ce) {
      Count n = ctx.nmf(c);
      if (n < best_nmf) {
        best = c;
        best_nmf = n;
      }
    }
    ctx.remove_edge(best);
    if (ctx.tracing()) {
      TraceRecord rec;
      rec.kind = TraceRecord::Kind::edge_removed;
      rec.target = e;
      rec.edge = best;
      rec.score = best_nmf;
      rec.phase = "deletion";
      ctx.log(std::move(rec));
    }
  }
  ctx.mark_anonymized(e, g_f);
  return true;
}

/// Mean of the values rounded half up.
inline Count rounded_mean(const std::vector<Count>& values) {
  Count sum = 0;
  for (Count v : values) sum += v;
  const Count n = values.size();
  return (2 * sum + n) / (2 * n);
}

/// ADD&DEL: groups take the rounded mean NMF of the next k unanonymized
/// edges; edges above it are lowered by deletion, edges below raised by
/// BFSEA. A failed deletion restores the snapshot taken at group start and
/// retries with g_f + 1.
inline AnonymizationResult adddel_anonymize(const Graph& g, Count k, Rng& rng,
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
  std::size_t rollbacks = 0;

  // Processes the next k unanonymized edges into group g_f.
  auto run_group = [&](Count g_f) -> bool {
    ctx.open_or_resume_group(g_f);
    Count members = 0;
    while (members < k) {
      if (ctx.pending().empty()) {
        Count have = detail::group_size(ctx.state(), g_f);
        if (have < k) detail::pad_group(ctx, g_f, k - have);
        return true;
      }
      const NmfEntry top = *ctx.pending().begin();
      if (top.nmf > g_f && ctx.state().has_group(top.nmf)) {
        ctx.mark_anonymized(top.edge, top.nmf);
        continue;
      }
      if (top.nmf > g_f) {
        if (!anonymize_edge_by_deletion(ctx, top.edge, g_f)) return false;
      } else if (top.nmf == g_f) {
        ctx.mark_anonymized(top.edge, g_f);
      } else {
        auto outcome = anonymize_edge_by_addition(ctx, top.edge, g_f, rng);
        if (outcome.status == EdgeAnonOutcome::Status::fallback_vertices_added)
          ++fallback_edges;
      }
      ++members;
      if (opts.on_step) opts.on_step(ctx);
    }
    return true;
  };

  while (!ctx.pending().empty()) {
    if (ctx.pending().size() < 2 * k) {
      cleanup(ctx, k);
      if (opts.on_step) opts.on_step(ctx);
      break;
    }
    const NmfEntry top = *ctx.pending().begin();
    if (ctx.state().has_group(top.nmf)) {
      ctx.mark_anonymized(top.edge, top.nmf);
      continue;
    }
    Count same = 0;
    for (const auto& en : ctx.pending()) {
      if (en.nmf != top.nmf) break;
      ++same;
    }
    if (same >= k) {
      ctx.open_or_resume_group(top.nmf);
      detail::mark_all_with_nmf(ctx, top.nmf);
      ctx.state().finalize_current();
      if (opts.on_step) opts.on_step(ctx);
      continue;
    }

    Count g_f = rounded_mean(detail::pending_prefix(ctx, k));
    const AnonContext snapshot = ctx;
    while (!run_group(g_f)) {
      ctx = snapshot;
      ++rollbacks;
      if (opts.on_rollback) opts.on_rollback(ctx, snapshot);
      ++g_f;
    }
    ctx.state().finalize_current();
  }
  ctx.state().finalize_current();

  auto r = make_result(ctx);
  r.fallback_edges = fallback_edges;
  r.rollbacks = rollbacks;
  return r;
}

}  // namespace nmfanon
