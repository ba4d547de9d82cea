#include "lightsage/cf.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lightsage {

void CfConfig::validate() const {
  if (swing_alpha <= 0.0) throw std::runtime_error("cf: swing_alpha must be positive");
  if (top_n_per_item < 1) throw std::runtime_error("cf: top_n_per_item must be >= 1");
  if (penalty_factor <= 0.0 || penalty_factor > 1.0) throw std::runtime_error("cf: penalty_factor must be in (0,1]");
  if (min_score < 0.0) throw std::runtime_error("cf: min_score must be >= 0");
  if (max_user_clicks < 1) throw std::runtime_error("cf: max_user_clicks must be >= 1");
}

namespace {

UserItemClicks build_clicks(const std::vector<std::pair<std::string, std::string>>& pairs) {
  UserItemClicks c;
  std::map<std::string, int> user_idx, item_idx;
  std::set<std::pair<int, int>> seen;
  for (const auto& [user, item] : pairs) {
    auto ui = user_idx.emplace(user, static_cast<int>(user_idx.size()));
    auto ii = item_idx.emplace(item, static_cast<int>(item_idx.size()));
    if (ui.second) c.users.push_back(user);
    if (ii.second) c.items.push_back(item);
    seen.insert({ui.first->second, ii.first->second});
  }
  c.user_items.resize(c.users.size());
  c.item_users.resize(c.items.size());
  for (const auto& [u, i] : seen) {
    c.user_items[u].push_back(i);
    c.item_users[i].push_back(u);
  }
  for (auto& v : c.user_items) std::sort(v.begin(), v.end());
  for (auto& v : c.item_users) std::sort(v.begin(), v.end());
  return c;
}

int sorted_intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
  int count = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (a[i] > b[j]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

UserItemClicks UserItemClicks::from_events(const std::vector<ClickEvent>& events) {
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(events.size());
  for (const auto& e : events) pairs.emplace_back(e.user, e.item);
  return build_clicks(pairs);
}

UserItemClicks UserItemClicks::from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
  return build_clicks(pairs);
}

PairScoreMap swing_scores(const UserItemClicks& clicks, const CfConfig& cfg) {
  cfg.validate();
  int n_items = static_cast<int>(clicks.items.size());

  std::vector<bool> user_ok(clicks.users.size());
  for (size_t u = 0; u < clicks.users.size(); ++u) {
    user_ok[u] = static_cast<int>(clicks.user_items[u].size()) <= cfg.max_user_clicks;
  }

  // Enumerate co-clicking user pairs once per item i and credit every common
  // item j > i; the pair {u,v} is then also seen from item j's side for the
  // items below it, so each unordered item pair accumulates its full sum.
  std::map<std::pair<int, int>, double> acc;
  std::vector<int> eligible;
  for (int i = 0; i < n_items; ++i) {
    eligible.clear();
    for (int u : clicks.item_users[i]) {
      if (user_ok[u]) eligible.push_back(u);
    }
    for (size_t a = 0; a < eligible.size(); ++a) {
      const auto& items_a = clicks.user_items[eligible[a]];
      for (size_t b = a + 1; b < eligible.size(); ++b) {
        const auto& items_b = clicks.user_items[eligible[b]];
        int common = sorted_intersection_size(items_a, items_b);
        if (common < 2) continue;  // only item i itself is shared
        double contrib = 1.0 / (cfg.swing_alpha + static_cast<double>(common));
        size_t x = 0, y = 0;
        while (x < items_a.size() && y < items_b.size()) {
          if (items_a[x] < items_b[y]) {
            ++x;
          } else if (items_a[x] > items_b[y]) {
            ++y;
          } else {
            if (items_a[x] > i) acc[{i, items_a[x]}] += contrib;
            ++x;
            ++y;
          }
        }
      }
    }
  }

  // min_score cut, then per-item top-N partner retention (score descending,
  // ties by ascending partner id). A pair survives if either endpoint keeps it.
  std::vector<std::vector<std::pair<int, double>>> partners(n_items);
  for (const auto& [pair, score] : acc) {
    if (score < cfg.min_score) continue;
    partners[pair.first].push_back({pair.second, score});
    partners[pair.second].push_back({pair.first, score});
  }
  std::set<std::pair<int, int>> kept;
  for (int i = 0; i < n_items; ++i) {
    auto& list = partners[i];
    std::sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return clicks.items[a.first] < clicks.items[b.first];
    });
    size_t keep = std::min(list.size(), static_cast<size_t>(cfg.top_n_per_item));
    for (size_t k = 0; k < keep; ++k) {
      int j = list[k].first;
      kept.insert({std::min(i, j), std::max(i, j)});
    }
  }

  PairScoreMap out;
  for (const auto& [i, j] : kept) {
    const std::string& a = clicks.items[i];
    const std::string& b = clicks.items[j];
    double score = acc.at({i, j});
    if (a < b) {
      out[{a, b}] = score;
    } else {
      out[{b, a}] = score;
    }
  }
  return out;
}

PairScoreMap search_cf_scores(const std::vector<SearchEvent>& events) {
  // Group clicks by (user, query); each group contributes 1 to every
  // unordered pair of distinct items it contains.
  std::map<std::pair<std::string, std::string>, std::set<std::string>> groups;
  for (const auto& e : events) {
    groups[{e.user, e.query}].insert(e.item);
  }
  PairScoreMap out;
  for (const auto& [key, items] : groups) {
    for (auto a = items.begin(); a != items.end(); ++a) {
      auto b = a;
      for (++b; b != items.end(); ++b) {
        out[{*a, *b}] += 1.0;
      }
    }
  }
  return out;
}

std::vector<CfEdge> scores_to_edges(const PairScoreMap& scores, const CfConfig& cfg, Provenance prov) {
  cfg.validate();
  std::vector<CfEdge> out;
  out.reserve(scores.size() * 2);
  for (const auto& [pair, score] : scores) {
    if (score < 0.0) throw std::runtime_error("cf: negative score for pair " + pair.first + "," + pair.second);
    double weight = cfg.penalty_factor * std::max(score, cfg.min_score);
    if (weight <= 0.0) continue;
    out.push_back(CfEdge{pair.first, pair.second, weight, prov});
    out.push_back(CfEdge{pair.second, pair.first, weight, prov});
  }
  return out;
}

}  // namespace lightsage
