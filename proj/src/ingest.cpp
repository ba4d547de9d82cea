#include "lightsage/ingest.hpp"

#include "lightsage/tsv.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

namespace lightsage {

void SpamPolicy::validate() const {
  if (max_clicks_per_user_per_day < 1 || max_clicks_per_user_item_pair < 1) {
    throw std::runtime_error("ingest: spam policy thresholds must be >= 1");
  }
}

std::string normalize_query(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char ch : raw) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

namespace {

// Shared line-oriented parse loop; row_fn returns false for malformed rows.
template <typename RowFn>
void parse_log(const std::string& path, ParseStats* stats, RowFn row_fn) {
  std::string content = read_file(path);
  ParseStats local;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++local.total_rows;
    if (row_fn(line)) {
      ++local.parsed;
    } else {
      ++local.skipped;
    }
  }
  if (local.total_rows > 0 && local.skipped * 2 > local.total_rows) {
    throw std::runtime_error("ingest: more than 50% malformed rows in " + path);
  }
  if (stats) *stats = local;
}

}  // namespace

std::vector<ClickEvent> parse_click_log(const std::string& path, ParseStats* stats) {
  std::vector<ClickEvent> events;
  parse_log(path, stats, [&](const std::string& line) {
    auto cols = split_tabs(line);
    if (cols.size() < 4) return false;
    if (cols[0].empty() || cols[2].empty()) return false;
    auto ts = parse_i64(cols[3]);
    if (!ts || *ts < 0) return false;
    if (!cols[1].empty() && cols[1] == cols[2]) return false;  // self-trigger
    events.push_back(ClickEvent{cols[0], cols[1], cols[2], *ts});
    return true;
  });
  return events;
}

std::vector<SearchEvent> parse_search_log(const std::string& path, ParseStats* stats) {
  std::vector<SearchEvent> events;
  parse_log(path, stats, [&](const std::string& line) {
    auto cols = split_tabs(line);
    if (cols.size() < 4) return false;
    if (cols[0].empty() || cols[2].empty()) return false;
    auto ts = parse_i64(cols[3]);
    if (!ts || *ts < 0) return false;
    std::string query = normalize_query(cols[1]);
    if (query.empty()) return false;
    events.push_back(SearchEvent{cols[0], query, cols[2], *ts});
    return true;
  });
  return events;
}

std::vector<ClickEvent> filter_spam(const std::vector<ClickEvent>& events, const SpamPolicy& policy) {
  policy.validate();

  // Pass 1: users exceeding the daily cap on any UTC day lose all events.
  std::map<std::pair<std::string, int64_t>, int> daily_counts;
  for (const auto& e : events) {
    ++daily_counts[{e.user, e.timestamp / 86400}];
  }
  std::unordered_set<std::string> banned;
  for (const auto& [key, count] : daily_counts) {
    if (count > policy.max_clicks_per_user_per_day) banned.insert(key.first);
  }

  // Pass 2: cap identical (user, trigger, clicked) triples, keeping earliest.
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<size_t>> triples;
  for (size_t i = 0; i < events.size(); ++i) {
    if (banned.count(events[i].user)) continue;
    triples[{events[i].user, events[i].trigger, events[i].item}].push_back(i);
  }
  std::vector<bool> keep(events.size(), false);
  for (auto& [key, idxs] : triples) {
    std::stable_sort(idxs.begin(), idxs.end(),
                     [&](size_t a, size_t b) { return events[a].timestamp < events[b].timestamp; });
    size_t cap = std::min(idxs.size(), static_cast<size_t>(policy.max_clicks_per_user_item_pair));
    for (size_t j = 0; j < cap; ++j) keep[idxs[j]] = true;
  }

  std::vector<ClickEvent> out;
  out.reserve(events.size());
  for (size_t i = 0; i < events.size(); ++i) {
    if (keep[i]) out.push_back(events[i]);
  }
  return out;
}

}  // namespace lightsage
