#pragma once

#include "lightsage/ingest.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lightsage {

// Desk-scale synthetic dataset with planted cluster structure. Items are
// partitioned into clusters; click pairs stay inside a cluster with
// probability intra_cluster_prob. A tail_fraction of each cluster's items is
// withheld from the training window entirely: those items only appear in the
// relaxed (post-training) window and in the future-click holdout, which is
// what the long-tail population logic is evaluated against.
struct SyntheticSpec {
  int n_items = 1000;
  int n_clusters = 10;
  int n_users = 2000;
  int64_t n_events = 100000;
  double intra_cluster_prob = 0.9;
  double tail_fraction = 0.2;
  uint64_t rng_seed = 7;

  // Throws on hard violations; returns human-readable warnings otherwise.
  std::vector<std::string> validate() const;
};

struct FeatureRow {
  std::string item;
  std::string category;
  std::string brand;
  std::string shop;
  double price = 0.0;
  double rating = 0.0;
};

struct FuturePair {
  std::string user;
  std::string trigger;
  std::string item;
};

struct SyntheticBundle {
  std::vector<ClickEvent> clicks_train;
  std::vector<SearchEvent> searches_train;
  // Superset logs for the inference graph: training window plus the relaxed
  // window in which tail items surface.
  std::vector<ClickEvent> clicks_infer;
  std::vector<SearchEvent> searches_infer;
  std::vector<FeatureRow> features;
  std::vector<std::pair<std::string, int>> clusters;  // item -> cluster id
  std::vector<FuturePair> future_clicks;
  std::vector<std::string> tail_items;  // sorted
};

SyntheticBundle generate_synthetic(const SyntheticSpec& spec);

// File renderers shared by the CLI and tests; byte-stable.
std::string clicks_to_tsv(const std::vector<ClickEvent>& events);
std::string searches_to_tsv(const std::vector<SearchEvent>& events);
std::string features_to_tsv(const std::vector<FeatureRow>& rows);
std::string clusters_to_tsv(const std::vector<std::pair<std::string, int>>& clusters);
std::string future_clicks_to_tsv(const std::vector<FuturePair>& pairs);

std::vector<FuturePair> load_future_clicks(const std::string& path);

// Writes the whole bundle under dir (clicks.tsv, searches.tsv,
// clicks_infer.tsv, searches_infer.tsv, features.tsv, clusters.tsv,
// future_clicks.tsv).
void write_bundle(const SyntheticBundle& bundle, const std::string& dir);

}  // namespace lightsage
