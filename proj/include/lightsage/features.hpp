#pragma once

#include "lightsage/types.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace lightsage {

// Token -> contiguous index map for one sparse field. Index 0 is reserved
// for out-of-vocabulary tokens; known tokens start at 1 in first-seen order.
struct Vocabulary {
  std::vector<std::string> tokens;
  std::unordered_map<std::string, int> index;

  int add(const std::string& token);
  int lookup(const std::string& token) const;  // 0 when unknown
  int size() const { return static_cast<int>(tokens.size()) + 1; }

  std::string serialize() const;
  static Vocabulary deserialize(const std::string& text);
};

struct SparseField {
  std::string name;
  Vocabulary vocab;
  std::vector<int> values;  // per item row, vocabulary index
};

struct DenseField {
  std::string name;
  std::vector<double> raw;          // file values (price keeps its raw scale)
  std::vector<double> model_value;  // standardized transform fed to the model
  double mean = 0.0;
  double stddev = 1.0;
};

// Per-item content features. Sparse fields map through vocabularies, dense
// fields are standardized at load (price is log1p-transformed first), and an
// optional pretrained column carries fixed-length float vectors.
struct NodeFeatureStore {
  std::vector<std::string> items;
  std::unordered_map<std::string, int> item_index;
  std::vector<SparseField> sparse;
  std::vector<DenseField> dense;
  int pretrained_dim = 0;
  Matrix pretrained;  // pretrained_dim x n_items, zero column when missing
  std::vector<bool> has_pretrained;
  size_t skipped_rows = 0;

  int find_item(const std::string& id) const {
    auto it = item_index.find(id);
    return it == item_index.end() ? -1 : it->second;
  }
  int item_count() const { return static_cast<int>(items.size()); }
  const SparseField* sparse_field(const std::string& name) const;
  const DenseField* dense_field(const std::string& name) const;
};

// Header row declares column kinds: `item` then `name:sparse|dense|pretrained`.
NodeFeatureStore load_features(const std::string& path);

// Half-decade price band: floor(log10(max(price, 0.01)) * 2).
int price_band(double price);

// Hierarchical content key used for seed matching; level 0 is
// (category, brand, price band), level 1 drops the band, level 2 keeps only
// the category. Requires sparse fields "category"/"brand" and dense "price".
std::string content_key(const NodeFeatureStore& store, int item_row, int level);

}  // namespace lightsage
