#pragma once

#include <string>
#include <vector>

#include "nmfanon/anon_state.hpp"

namespace nmfanon {

/// One record of the operation log kept during an anonymization run.
struct TraceRecord {
  enum class Kind { edge_added, edge_removed, vertex_added };

  Kind kind = Kind::edge_added;
  EdgeKey target;           // edge being anonymized when the operation happened
  EdgeKey edge;             // the edge added/removed (unused for vertex_added)
  VertexId vertex = 0;      // the vertex added (vertex_added only)
  std::size_t hop = 0;      // BFS hop of the candidate; 0 outside BFSEA
  Count score = 0;          // selection score nmf'(w,u)+nmf'(w,v)
  std::string classification;  // "anonymized:<g_f>", "unanonymized", ...
  std::string phase;           // "bfsea", "fallback", "cleanup", "deletion", "kda"

  bool operator==(const TraceRecord&) const = default;
};

inline const char* to_string(TraceRecord::Kind k) {
  switch (k) {
    case TraceRecord::Kind::edge_added: return "edge_added";
    case TraceRecord::Kind::edge_removed: return "edge_removed";
    case TraceRecord::Kind::vertex_added: return "vertex_added";
  }
  return "?";
}

/// The mutable triple an anonymization driver works on: graph, NMF sequence
/// and anonymization state, plus an ordered index of the unanonymized edges.
/// All graph mutations go through here so the sequence stays
/// in sync, and any change to the NMF of an anonymized edge is counted as an
/// ATPP violation.
///
/// The type is a regular value: copying it takes a snapshot, assigning a
/// snapshot back rolls the run back.
class AnonContext {
 public:
  AnonContext() = default;
  explicit AnonContext(Graph g) : graph_(std::move(g)) {
    seq_ = NmfSequence::build(graph_);
    pending_ = seq_.ordered();
  }

  const Graph& graph() const { return graph_; }
  const NmfSequence& sequence() const { return seq_; }
  const AnonState& state() const { return state_; }
  AnonState& state() { return state_; }

  /// Unanonymized edges in sequence order.
  const NmfOrderedSet& pending() const { return pending_; }

  Count nmf(const EdgeKey& e) const {
    auto v = seq_.nmf(e);
    if (!v) throw GraphError("edge " + to_string(e) + " not in graph");
    return *v;
  }

  void add_edge(const EdgeKey& e) {
    graph_.add_edge(e);
    apply(seq_.refresh(graph_, touched_by(graph_, e)));
    ++edges_added_;
  }

  void remove_edge(const EdgeKey& e) {
    auto touched = touched_by(graph_, e);
    graph_.remove_edge(e);
    apply(seq_.refresh(graph_, touched));
    ++edges_removed_;
  }

  VertexId add_vertex() {
    ++vertices_added_;
    return graph_.add_vertex();
  }

  void mark_anonymized(const EdgeKey& e, Count group_key) {
    Count value = nmf(e);
    state_.mark_anonymized(e, value, group_key);
    pending_.erase({e, value});
  }

  /// Opens a group keyed `g_f`, or resumes the existing one with that key.
  /// Returns true when a new group was created.
  bool open_or_resume_group(Count g_f) {
    state_.finalize_current();
    if (state_.has_group(g_f)) {
      state_.resume_group(g_f);
      return false;
    }
    state_.open_group(g_f);
    return true;
  }

  void log(TraceRecord rec) {
    if (tracing_) trace_.push_back(std::move(rec));
  }
  void set_tracing(bool on) { tracing_ = on; }
  bool tracing() const { return tracing_; }
  const std::vector<TraceRecord>& trace() const { return trace_; }

  std::size_t edges_added() const { return edges_added_; }
  std::size_t edges_removed() const { return edges_removed_; }
  std::size_t vertices_added() const { return vertices_added_; }
  std::size_t atpp_violations() const { return atpp_violations_; }
  const std::vector<std::string>& atpp_messages() const { return atpp_messages_; }

  /// Structural equality of graph, sequence, state and pending index.
  bool same_structure(const AnonContext& o) const {
    return graph_ == o.graph_ && seq_ == o.seq_ && state_ == o.state_ &&
           pending_ == o.pending_;
  }

 private:
  void apply(const std::vector<NmfChange>& changes) {
    for (const auto& ch : changes) {
      if (state_.is_anonymized(ch.edge)) {
        ++atpp_violations_;
        atpp_messages_.push_back(
            "anonymized edge " + to_string(ch.edge) + " changed from " +
            std::to_string(ch.before.value_or(0)) +
            (ch.after ? " to " + std::to_string(*ch.after) : " to <removed>"));
        continue;
      }
      if (ch.before) pending_.erase({ch.edge, *ch.before});
      if (ch.after) pending_.insert({ch.edge, *ch.after});
    }
  }

  Graph graph_;
  NmfSequence seq_;
  AnonState state_;
  NmfOrderedSet pending_;
  std::vector<TraceRecord> trace_;
  bool tracing_ = false;
  std::size_t edges_added_ = 0;
  std::size_t edges_removed_ = 0;
  std::size_t vertices_added_ = 0;
  std::size_t atpp_violations_ = 0;
  std::vector<std::string> atpp_messages_;
};

}  // namespace nmfanon
