#include "lightsage/synthetic.hpp"

#include "lightsage/rng.hpp"
#include "lightsage/tsv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lightsage {

namespace {

constexpr int64_t kDaySeconds = 86400;
constexpr int kTrainDays = 30;
constexpr int kRelaxDays = 4;
constexpr int kFutureDay = kTrainDays + kRelaxDays;

std::string item_name(int idx) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "i%06d", idx);
  return buf;
}

std::string user_name(int idx) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "u%06d", idx);
  return buf;
}

struct World {
  const SyntheticSpec& spec;
  int n_categories;
  std::vector<int> cluster_of;                  // item idx -> cluster
  std::vector<std::vector<int>> cluster_items;  // full pool per cluster
  std::vector<std::vector<int>> cluster_seeds;  // training-eligible items
  std::vector<int> tail_items;                  // global, ascending
  std::vector<bool> is_tail;

  explicit World(const SyntheticSpec& s) : spec(s) {
    n_categories = std::max(1, s.n_clusters / 2);
    cluster_of.resize(s.n_items);
    cluster_items.resize(s.n_clusters);
    for (int i = 0; i < s.n_items; ++i) {
      int c = i % s.n_clusters;
      cluster_of[i] = c;
      cluster_items[c].push_back(i);
    }
    is_tail.assign(s.n_items, false);
    cluster_seeds.resize(s.n_clusters);
    for (int c = 0; c < s.n_clusters; ++c) {
      const auto& pool = cluster_items[c];
      size_t n_tail = static_cast<size_t>(std::floor(s.tail_fraction * static_cast<double>(pool.size())));
      size_t n_seed = pool.size() - n_tail;
      for (size_t j = 0; j < pool.size(); ++j) {
        if (j < n_seed) {
          cluster_seeds[c].push_back(pool[j]);
        } else {
          is_tail[pool[j]] = true;
          tail_items.push_back(pool[j]);
        }
      }
    }
    std::sort(tail_items.begin(), tail_items.end());
  }

  int home_cluster(int user_idx) const { return user_idx % spec.n_clusters; }

  // Uniform user whose home cluster is c.
  int user_in_cluster(int c, Rng& rng) const {
    int count = (spec.n_users - c + spec.n_clusters - 1) / spec.n_clusters;
    if (count <= 0) return c % spec.n_users;
    return c + static_cast<int>(rng.below(static_cast<uint64_t>(count))) * spec.n_clusters;
  }

  int other_cluster(int c, Rng& rng) const {
    if (spec.n_clusters <= 1) return c;
    int o = static_cast<int>(rng.below(static_cast<uint64_t>(spec.n_clusters - 1)));
    return o >= c ? o + 1 : o;
  }

  int pick(const std::vector<int>& pool, Rng& rng) const {
    return pool[rng.below(pool.size())];
  }

  int64_t stamp(int day_lo, int day_hi, Rng& rng) const {
    int64_t day = day_lo + static_cast<int64_t>(rng.below(static_cast<uint64_t>(day_hi - day_lo + 1)));
    return day * kDaySeconds + static_cast<int64_t>(rng.below(kDaySeconds));
  }
};

std::string query_name(int cluster, int k) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "q%03d_%d", cluster, k);
  return buf;
}

}  // namespace

std::vector<std::string> SyntheticSpec::validate() const {
  if (n_items < 1 || n_clusters < 1 || n_users < 1 || n_events < 0) {
    throw std::runtime_error("synthetic: counts must be positive");
  }
  if (n_clusters > n_items) {
    throw std::runtime_error("synthetic: n_clusters must not exceed n_items");
  }
  if (intra_cluster_prob < 0.0 || intra_cluster_prob > 1.0) {
    throw std::runtime_error("synthetic: intra_cluster_prob must be in [0,1]");
  }
  if (tail_fraction < 0.0 || tail_fraction >= 1.0) {
    throw std::runtime_error("synthetic: tail_fraction must be in [0,1)");
  }
  std::vector<std::string> warnings;
  if (intra_cluster_prob < 0.5) {
    warnings.push_back("intra_cluster_prob < 0.5 gives weak planted structure");
  }
  return warnings;
}

SyntheticBundle generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  World w(spec);
  Rng rng(spec.rng_seed);
  SyntheticBundle out;

  // Item features. Category follows the cluster (two clusters share one
  // category), brand pools are per category, price and rating carry no
  // cluster signal at all: content matching alone should place a tail item
  // near its category's clusters but cannot pin the exact one.
  const int brands_per_category = 6;
  const int n_shops = 50;
  for (int i = 0; i < spec.n_items; ++i) {
    FeatureRow row;
    row.item = item_name(i);
    int cat = w.cluster_of[i] % w.n_categories;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "cat%03d", cat);
    row.category = buf;
    std::snprintf(buf, sizeof(buf), "b%03d_%d", cat, static_cast<int>(rng.below(brands_per_category)));
    row.brand = buf;
    std::snprintf(buf, sizeof(buf), "s%04d", static_cast<int>(rng.below(n_shops)));
    row.shop = buf;
    row.price = std::round(std::pow(10.0, rng.next_double() * 3.0) * 100.0) / 100.0;
    row.rating = std::round((1.0 + rng.next_double() * 4.0) * 100.0) / 100.0;
    out.features.push_back(std::move(row));
    out.clusters.emplace_back(item_name(i), w.cluster_of[i]);
  }
  for (int t : w.tail_items) out.tail_items.push_back(item_name(t));

  // Training window. PDP pairs are the strong signal; plain clicks and
  // search bursts only feed the CF algorithms. Tail items never appear.
  int64_t n_pdp = spec.n_events * 70 / 100;
  int64_t n_plain = spec.n_events * 15 / 100;
  int64_t n_search = spec.n_events - n_pdp - n_plain;

  auto draw_cluster = [&](int user) {
    int home = w.home_cluster(user);
    if (rng.next_double() < spec.intra_cluster_prob) return home;
    return w.other_cluster(home, rng);
  };

  for (int64_t e = 0; e < n_pdp; ++e) {
    int u = static_cast<int>(rng.below(spec.n_users));
    int home = w.home_cluster(u);
    const auto& home_seeds = w.cluster_seeds[home];
    if (home_seeds.empty()) continue;
    int trigger = w.pick(home_seeds, rng);
    int clicked;
    if (rng.next_double() < spec.intra_cluster_prob && home_seeds.size() >= 2) {
      do {
        clicked = w.pick(home_seeds, rng);
      } while (clicked == trigger);
    } else {
      int oc = w.other_cluster(home, rng);
      const auto& pool = w.cluster_seeds[oc];
      if (pool.empty()) continue;
      clicked = w.pick(pool, rng);
      if (clicked == trigger) continue;
    }
    out.clicks_train.push_back(ClickEvent{user_name(u), item_name(trigger), item_name(clicked),
                                          w.stamp(0, kTrainDays - 1, rng)});
  }

  for (int64_t e = 0; e < n_plain; ++e) {
    int u = static_cast<int>(rng.below(spec.n_users));
    int c = draw_cluster(u);
    const auto& pool = w.cluster_seeds[c];
    if (pool.empty()) continue;
    out.clicks_train.push_back(
        ClickEvent{user_name(u), "", item_name(w.pick(pool, rng)), w.stamp(0, kTrainDays - 1, rng)});
  }

  const int queries_per_cluster = 5;
  for (int64_t emitted = 0; emitted < n_search;) {
    int u = static_cast<int>(rng.below(spec.n_users));
    int c = draw_cluster(u);
    const auto& pool = w.cluster_seeds[c];
    if (pool.empty()) {
      ++emitted;
      continue;
    }
    std::string q = query_name(c, static_cast<int>(rng.below(queries_per_cluster)));
    int burst = 1 + static_cast<int>(rng.below(3));
    for (int b = 0; b < burst && emitted < n_search; ++b, ++emitted) {
      out.searches_train.push_back(
          SearchEvent{user_name(u), q, item_name(w.pick(pool, rng)), w.stamp(0, kTrainDays - 1, rng)});
    }
  }

  // Relaxed window: the inference logs are the training logs plus this
  // traffic. Every tail item surfaces here, through one of two channels:
  // even-positioned tail items get PDP pairs (reachable for a direct-click
  // inference graph), odd-positioned ones only plain co-clicks and search
  // bursts (reachable only once CF edges are in play).
  out.clicks_infer = out.clicks_train;
  out.searches_infer = out.searches_train;

  int64_t n_relax = spec.n_events / 5;
  int64_t n_relax_tail = w.tail_items.empty() ? 0 : n_relax / 2;
  int64_t n_relax_general = n_relax - n_relax_tail;

  size_t tail_cursor = 0;
  for (int64_t emitted = 0; emitted < n_relax_tail;) {
    size_t pos = tail_cursor++ % w.tail_items.size();
    int t = w.tail_items[pos];
    int c = w.cluster_of[t];
    const auto& seeds = w.cluster_seeds[c];
    if (seeds.empty()) {
      ++emitted;
      continue;
    }
    int u = w.user_in_cluster(c, rng);
    bool pdp_channel = (pos % 2 == 0);
    if (pdp_channel) {
      out.clicks_infer.push_back(ClickEvent{user_name(u), item_name(w.pick(seeds, rng)), item_name(t),
                                            w.stamp(kTrainDays, kTrainDays + kRelaxDays - 1, rng)});
      ++emitted;
    } else if (rng.below(2) == 0) {
      // Plain co-clicks: the user touches the tail item and two seeds, which
      // is what the swing substructure needs.
      int64_t ts = w.stamp(kTrainDays, kTrainDays + kRelaxDays - 1, rng);
      out.clicks_infer.push_back(ClickEvent{user_name(u), "", item_name(t), ts});
      out.clicks_infer.push_back(ClickEvent{user_name(u), "", item_name(w.pick(seeds, rng)), ts + 1});
      out.clicks_infer.push_back(ClickEvent{user_name(u), "", item_name(w.pick(seeds, rng)), ts + 2});
      emitted += 3;
    } else {
      // Search burst: tail item and a seed under one (user, query) group.
      std::string q = query_name(c, static_cast<int>(rng.below(queries_per_cluster)));
      int64_t ts = w.stamp(kTrainDays, kTrainDays + kRelaxDays - 1, rng);
      out.searches_infer.push_back(SearchEvent{user_name(u), q, item_name(t), ts});
      out.searches_infer.push_back(SearchEvent{user_name(u), q, item_name(w.pick(seeds, rng)), ts + 1});
      emitted += 2;
    }
  }

  for (int64_t e = 0; e < n_relax_general; ++e) {
    int u = static_cast<int>(rng.below(spec.n_users));
    int c = draw_cluster(u);
    const auto& seeds = w.cluster_seeds[c];
    if (seeds.size() < 2) continue;
    int trigger = w.pick(seeds, rng);
    int clicked;
    do {
      clicked = w.pick(seeds, rng);
    } while (clicked == trigger);
    out.clicks_infer.push_back(ClickEvent{user_name(u), item_name(trigger), item_name(clicked),
                                          w.stamp(kTrainDays, kTrainDays + kRelaxDays - 1, rng)});
  }

  // Future clicks: triggers are always seed items (the pages users land on),
  // clicked items come from the full pool so tail items are represented.
  // Every tail item is guaranteed at least one future pair.
  int64_t n_future = spec.n_events / 20;
  for (int64_t e = 0; e < n_future; ++e) {
    int u = static_cast<int>(rng.below(spec.n_users));
    int home = w.home_cluster(u);
    const auto& seeds = w.cluster_seeds[home];
    if (seeds.empty()) continue;
    int trigger = w.pick(seeds, rng);
    int c = rng.next_double() < spec.intra_cluster_prob ? home : w.other_cluster(home, rng);
    int clicked = w.pick(w.cluster_items[c], rng);
    if (clicked == trigger) continue;
    out.future_clicks.push_back(FuturePair{user_name(u), item_name(trigger), item_name(clicked)});
  }
  for (int t : w.tail_items) {
    int c = w.cluster_of[t];
    const auto& seeds = w.cluster_seeds[c];
    if (seeds.empty()) continue;
    int u = w.user_in_cluster(c, rng);
    out.future_clicks.push_back(FuturePair{user_name(u), item_name(w.pick(seeds, rng)), item_name(t)});
  }

  return out;
}

std::string clicks_to_tsv(const std::vector<ClickEvent>& events) {
  std::string s;
  for (const auto& e : events) {
    s += e.user;
    s += '\t';
    s += e.trigger;
    s += '\t';
    s += e.item;
    s += '\t';
    s += std::to_string(e.timestamp);
    s += '\n';
  }
  return s;
}

std::string searches_to_tsv(const std::vector<SearchEvent>& events) {
  std::string s;
  for (const auto& e : events) {
    s += e.user;
    s += '\t';
    s += e.query;
    s += '\t';
    s += e.item;
    s += '\t';
    s += std::to_string(e.timestamp);
    s += '\n';
  }
  return s;
}

std::string features_to_tsv(const std::vector<FeatureRow>& rows) {
  std::string s = "item\tcategory:sparse\tbrand:sparse\tshop:sparse\tprice:dense\trating:dense\n";
  char buf[32];
  for (const auto& r : rows) {
    s += r.item;
    s += '\t';
    s += r.category;
    s += '\t';
    s += r.brand;
    s += '\t';
    s += r.shop;
    s += '\t';
    std::snprintf(buf, sizeof(buf), "%.2f", r.price);
    s += buf;
    s += '\t';
    std::snprintf(buf, sizeof(buf), "%.2f", r.rating);
    s += buf;
    s += '\n';
  }
  return s;
}

std::string clusters_to_tsv(const std::vector<std::pair<std::string, int>>& clusters) {
  std::string s;
  for (const auto& [item, c] : clusters) {
    s += item;
    s += '\t';
    s += std::to_string(c);
    s += '\n';
  }
  return s;
}

std::string future_clicks_to_tsv(const std::vector<FuturePair>& pairs) {
  std::string s;
  for (const auto& p : pairs) {
    s += p.user;
    s += '\t';
    s += p.trigger;
    s += '\t';
    s += p.item;
    s += '\n';
  }
  return s;
}

std::vector<FuturePair> load_future_clicks(const std::string& path) {
  std::string content = read_file(path);
  std::vector<FuturePair> out;
  size_t start = 0;
  while (start < content.size()) {
    size_t end = content.find('\n', start);
    if (end == std::string::npos) end = content.size();
    std::string line = content.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cols = split_tabs(line);
    if (cols.size() < 3 || cols[1].empty() || cols[2].empty()) {
      throw std::runtime_error("ingest: malformed future-click row: " + line);
    }
    out.push_back(FuturePair{cols[0], cols[1], cols[2]});
  }
  return out;
}

void write_bundle(const SyntheticBundle& bundle, const std::string& dir) {
  atomic_write_file(dir + "/clicks.tsv", clicks_to_tsv(bundle.clicks_train));
  atomic_write_file(dir + "/searches.tsv", searches_to_tsv(bundle.searches_train));
  atomic_write_file(dir + "/clicks_infer.tsv", clicks_to_tsv(bundle.clicks_infer));
  atomic_write_file(dir + "/searches_infer.tsv", searches_to_tsv(bundle.searches_infer));
  atomic_write_file(dir + "/features.tsv", features_to_tsv(bundle.features));
  atomic_write_file(dir + "/clusters.tsv", clusters_to_tsv(bundle.clusters));
  atomic_write_file(dir + "/future_clicks.tsv", future_clicks_to_tsv(bundle.future_clicks));
}

}  // namespace lightsage
