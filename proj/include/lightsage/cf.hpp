#pragma once

#include "lightsage/graph.hpp"
#include "lightsage/ingest.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lightsage {

// User-item bipartite click structure with both directions materialized.
struct UserItemClicks {
  std::vector<std::string> users;
  std::vector<std::string> items;
  std::vector<std::vector<int>> user_items;  // sorted, deduplicated
  std::vector<std::vector<int>> item_users;  // sorted, deduplicated

  static UserItemClicks from_events(const std::vector<ClickEvent>& events);
  static UserItemClicks from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs);
};

struct CfConfig {
  double swing_alpha = 1.0;
  int top_n_per_item = 20;
  double penalty_factor = 0.5;
  double min_score = 0.1;
  int max_user_clicks = 100;  // swing power-user pruning

  void validate() const;
};

// Symmetric scores keyed by (item, item) with first < second.
using PairScoreMap = std::map<std::pair<std::string, std::string>, double>;

// score(i,j) = sum over user pairs {u,v} co-clicking both items of
// 1 / (alpha + |items(u) ∩ items(v)|). Users above max_user_clicks are
// excluded first; pairs below min_score are dropped; each item keeps its
// top_n_per_item partners (ties broken by ascending partner id).
PairScoreMap swing_scores(const UserItemClicks& clicks, const CfConfig& cfg);

// score(A,B) = number of distinct (user, normalized query) groups in which
// both items were clicked.
PairScoreMap search_cf_scores(const std::vector<SearchEvent>& events);

// Converts confidence scores to click-count-scale directed edges: both
// directions, weight = penalty_factor * max(score, min_score).
std::vector<CfEdge> scores_to_edges(const PairScoreMap& scores, const CfConfig& cfg, Provenance prov);

}  // namespace lightsage
