#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nmfanon/nmf_sequence.hpp"

namespace nmfanon {

/// Raised when the anonymization bookkeeping is driven into an inconsistent
/// state (duplicate group, NMF mismatch on marking, double marking).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Group {
  Count g_f = 0;
  std::set<EdgeKey> members;
  bool finalized = false;

  bool operator==(const Group&) const = default;
};

/// Anonymized/unanonymized flags plus the registry of groups keyed by their
/// group NMF. The key set of `groups()` is G_f.
class AnonState {
 public:
  bool is_anonymized(const EdgeKey& e) const { return owner_.contains(e); }

  /// Group key of an anonymized edge.
  std::optional<Count> group_of(const EdgeKey& e) const {
    auto it = owner_.find(e);
    if (it == owner_.end()) return std::nullopt;
    return it->second;
  }

  bool has_group(Count g_f) const { return groups_.contains(g_f); }
  const Group& group(Count g_f) const { return groups_.at(g_f); }
  const std::map<Count, Group>& groups() const { return groups_; }

  std::set<Count> group_keys() const {
    std::set<Count> out;
    for (const auto& [key, _] : groups_) out.insert(key);
    return out;
  }

  std::optional<Count> current_group() const { return current_; }
  std::size_t anonymized_count() const { return owner_.size(); }

  /// Registers an empty, unfinalized group and makes it current.
  Group& open_group(Count g_f) {
    if (groups_.contains(g_f))
      throw StateError("group NMF " + std::to_string(g_f) + " already in G_f");
    if (current_ && !groups_.at(*current_).finalized)
      throw StateError("group " + std::to_string(*current_) + " is still open");
    auto& grp = groups_[g_f];
    grp.g_f = g_f;
    current_ = g_f;
    return grp;
  }

  /// Makes an existing group current again so further edges can be absorbed.
  void resume_group(Count g_f) {
    if (!groups_.contains(g_f))
      throw StateError("no group with NMF " + std::to_string(g_f));
    current_ = g_f;
  }

  void finalize_current() {
    if (current_) groups_.at(*current_).finalized = true;
  }

  /// `nmf` is the edge's current NMF; it must equal the group key.
  void mark_anonymized(const EdgeKey& e, Count nmf, Count group_key) {
    if (owner_.contains(e))
      throw StateError("edge " + to_string(e) + " already anonymized");
    auto it = groups_.find(group_key);
    if (it == groups_.end())
      throw StateError("no group with NMF " + std::to_string(group_key));
    if (nmf != group_key)
      throw StateError("edge " + to_string(e) + " has NMF " +
                       std::to_string(nmf) + ", group expects " +
                       std::to_string(group_key));
    it->second.members.insert(e);
    owner_.emplace(e, group_key);
  }

  bool operator==(const AnonState&) const = default;

 private:
  std::map<Count, Group> groups_;
  std::map<EdgeKey, Count> owner_;
  std::optional<Count> current_;
};

/// f^(u): the subsequence of unanonymized edges, order preserved.
inline std::vector<NmfEntry> unanonymized_view(const NmfSequence& seq,
                                               const AnonState& st) {
  std::vector<NmfEntry> out;
  for (const auto& en : seq.ordered())
    if (!st.is_anonymized(en.edge)) out.push_back(en);
  return out;
}

}  // namespace nmfanon
