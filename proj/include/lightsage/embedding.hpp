#pragma once

#include "lightsage/types.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace lightsage {

enum class EmbProvenance { gnn_seed, graph_populated, content_populated };

const char* provenance_name(EmbProvenance p);
EmbProvenance provenance_from_name(const std::string& name);

// Item -> embedding vector with a provenance tag. Items are kept in sorted
// order; vectors are stored as rows. Values are quantized to f32 on save.
struct EmbeddingStore {
  std::vector<std::string> items;
  std::unordered_map<std::string, int> index;
  Matrix vectors;  // n x d
  std::vector<EmbProvenance> prov;

  int dim() const { return static_cast<int>(vectors.cols()); }
  int count() const { return static_cast<int>(items.size()); }
  int find(const std::string& id) const {
    auto it = index.find(id);
    return it == index.end() ? -1 : it->second;
  }

  // Builds a store from unsorted entries; sorts by item id.
  static EmbeddingStore build(std::vector<std::string> ids, Matrix vecs, std::vector<EmbProvenance> prov);
};

enum class EmbeddingEncoding { csv, base64 };

std::string embeddings_to_text(const EmbeddingStore& store, EmbeddingEncoding enc = EmbeddingEncoding::csv);
EmbeddingStore embeddings_from_text(const std::string& content);
void save_embeddings(const EmbeddingStore& store, const std::string& path,
                     EmbeddingEncoding enc = EmbeddingEncoding::csv);
EmbeddingStore load_embeddings(const std::string& path);

}  // namespace lightsage
