#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "nmfanon/graph.hpp"

namespace nmfanon {

enum class GroupingStrategy { intuit, greedy };

enum class GroupDecision { merge, new_group };

/// I(i, j) = sum over l in [i, j] of (view[i] - view[l]), zero-based and
/// inclusive. `view` is sorted descending, so every term is non-negative.
inline Count interval_cost(std::span<const Count> view, std::size_t i,
                           std::size_t j) {
  if (i > j || j >= view.size())
    throw std::out_of_range("interval_cost(" + std::to_string(i) + ", " +
                            std::to_string(j) + ") on view of size " +
                            std::to_string(view.size()));
  Count cost = 0;
  for (std::size_t l = i; l <= j; ++l) cost += view[i] - view[l];
  return cost;
}

struct GroupCosts {
  Count merge = 0;
  Count new_group = 0;
};

/// C_merge = (g - view[0]) + I(1, k) and C_new = I(0, k - 1). The view must
/// hold at least k + 1 entries and view[0] <= g.
inline GroupCosts group_costs(std::span<const Count> view, Count g, Count k) {
  if (k == 0 || view.size() < k + 1)
    throw std::out_of_range("greedy grouping needs k + 1 lookahead entries");
  return {(g - view[0]) + interval_cost(view, 1, k),
          interval_cost(view, 0, k - 1)};
}

/// Merge only when strictly cheaper; a tie starts a new group.
inline GroupDecision greedy_group_decision(std::span<const Count> view, Count g,
                                           Count k) {
  auto c = group_costs(view, g, k);
  return c.merge < c.new_group ? GroupDecision::merge : GroupDecision::new_group;
}

inline const char* to_string(GroupingStrategy s) {
  return s == GroupingStrategy::intuit ? "intuit" : "greedy";
}

}  // namespace nmfanon
