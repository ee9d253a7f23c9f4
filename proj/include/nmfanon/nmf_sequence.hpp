#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "nmfanon/graph.hpp"

namespace nmfanon {

/// One (edge, number-of-mutual-friends) pair of the sequence.
struct NmfEntry {
  EdgeKey edge;
  Count nmf = 0;

  bool operator==(const NmfEntry&) const = default;
};

/// Sequence order: nmf descending, then edge key ascending.
struct NmfOrder {
  bool operator()(const NmfEntry& x, const NmfEntry& y) const {
    if (x.nmf != y.nmf) return x.nmf > y.nmf;
    return x.edge < y.edge;
  }
};

using NmfOrderedSet = std::set<NmfEntry, NmfOrder>;

/// Signalled when an entry disagrees with the graph outside the touched set.
class StaleSequenceError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A value change produced by refresh(). `before`/`after` are empty when the
/// edge entered or left the sequence.
struct NmfChange {
  EdgeKey edge;
  std::optional<Count> before;
  std::optional<Count> after;
};

/// The sorted NMF sequence f together with its edge list l, maintained
/// incrementally as the graph is mutated.
class NmfSequence {
 public:
  NmfSequence() = default;

  static NmfSequence build(const Graph& g) {
    NmfSequence seq;
    for (const EdgeKey& e : g.edges()) seq.insert(e, common_neighbor_count(g, e));
    return seq;
  }

  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

  std::optional<Count> nmf(const EdgeKey& e) const {
    auto it = value_.find(e);
    if (it == value_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const EdgeKey& e) const { return value_.contains(e); }

  const NmfOrderedSet& ordered() const { return order_; }

  std::vector<NmfEntry> entries() const { return {order_.begin(), order_.end()}; }

  std::vector<Count> values() const {
    std::vector<Count> out;
    out.reserve(order_.size());
    for (const auto& en : order_) out.push_back(en.nmf);
    return out;
  }

  /// Recomputes the entries of `touched` against `g` and returns the entries
  /// whose value changed (including insertions and removals).
  template <typename Range>
  std::vector<NmfChange> refresh(const Graph& g, const Range& touched) {
    std::vector<NmfChange> changes;
    for (const EdgeKey& e : touched) {
      std::optional<Count> before = nmf(e);
      std::optional<Count> after;
      if (g.has_edge(e)) after = common_neighbor_count(g, e);
      if (before == after) continue;
      if (before) erase(e, *before);
      if (after) insert(e, *after);
      changes.push_back({e, before, after});
    }
    return changes;
  }

  /// Throws StaleSequenceError unless the sequence equals a full rebuild.
  void verify(const Graph& g) const {
    if (size() != g.num_edges())
      throw StaleSequenceError("sequence size " + std::to_string(size()) +
                               " != edge count " +
                               std::to_string(g.num_edges()));
    for (const auto& [e, value] : value_) {
      if (!g.has_edge(e))
        throw StaleSequenceError("sequence holds removed edge " + to_string(e));
      Count actual = common_neighbor_count(g, e);
      if (actual != value)
        throw StaleSequenceError("stale entry " + to_string(e) + ": holds " +
                                 std::to_string(value) + ", graph has " +
                                 std::to_string(actual));
    }
  }

  bool operator==(const NmfSequence& other) const {
    return order_ == other.order_;
  }

 private:
  void insert(const EdgeKey& e, Count v) {
    value_[e] = v;
    order_.insert({e, v});
  }
  void erase(const EdgeKey& e, Count v) {
    value_.erase(e);
    order_.erase({e, v});
  }

  NmfOrderedSet order_;
  std::map<EdgeKey, Count> value_;
};

inline NmfSequence build_sequence(const Graph& g) { return NmfSequence::build(g); }

/// Edges whose NMF can change when (x, w) is added to or removed from `g`:
/// the edge itself plus (x, z) and (w, z) for every common neighbor z.
/// The common neighbors of x and w are the same before and after the mutation.
inline std::vector<EdgeKey> touched_by(const Graph& g, const EdgeKey& e) {
  std::vector<EdgeKey> out{e};
  for_each_common_neighbor(g, e.a(), e.b(), [&](VertexId z) {
    out.emplace_back(e.a(), z);
    out.emplace_back(e.b(), z);
  });
  return out;
}

/// Recomputes the touched entries in place; `touched` must cover every edge
/// whose value may have changed. Throws StaleSequenceError when `check` is set
/// and the result differs from a full rebuild.
template <typename Range>
std::vector<NmfChange> refresh_after_mutation(NmfSequence& seq, const Graph& g,
                                              const Range& touched,
                                              bool check = false) {
  auto changes = seq.refresh(g, touched);
  if (check) seq.verify(g);
  return changes;
}

/// True iff every value present occurs at least k times.
inline bool is_k_anonymous_values(const std::vector<Count>& values, Count k) {
  std::map<Count, Count> freq;
  for (Count v : values) ++freq[v];
  for (const auto& [_, n] : freq)
    if (n < k) return false;
  return true;
}

inline bool is_k_anonymous(const NmfSequence& seq, Count k) {
  return is_k_anonymous_values(seq.values(), k);
}

}  // namespace nmfanon
