#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lightsage {

// One click recorded by the behavioral log. `trigger` is the product-detail
// page the user was on when the click happened; it is empty for clicks that
// did not originate from a PDP.
struct ClickEvent {
  std::string user;
  std::string trigger;
  std::string item;
  int64_t timestamp = 0;

  bool has_trigger() const { return !trigger.empty(); }
};

struct SearchEvent {
  std::string user;
  std::string query;  // normalized: lowercase, trimmed, whitespace collapsed
  std::string item;
  int64_t timestamp = 0;
};

struct SpamPolicy {
  int max_clicks_per_user_per_day = 1000;
  int max_clicks_per_user_item_pair = 5;

  void validate() const;
};

struct ParseStats {
  size_t total_rows = 0;
  size_t parsed = 0;
  size_t skipped = 0;
};

// TSV: user \t trigger_item(or empty) \t clicked_item \t timestamp.
// Malformed rows are skipped and counted; more than 50% malformed is fatal.
std::vector<ClickEvent> parse_click_log(const std::string& path, ParseStats* stats = nullptr);

// TSV: user \t query \t clicked_item \t timestamp.
std::vector<SearchEvent> parse_search_log(const std::string& path, ParseStats* stats = nullptr);

std::string normalize_query(const std::string& raw);

// Drops every event of any user whose click count exceeds the daily cap on
// some UTC calendar day, then caps identical (user, trigger, clicked) triples
// at max_clicks_per_user_item_pair keeping the earliest ones. Idempotent;
// output preserves input order.
std::vector<ClickEvent> filter_spam(const std::vector<ClickEvent>& events, const SpamPolicy& policy);

}  // namespace lightsage
