#pragma once

#include "lightsage/ingest.hpp"
#include "lightsage/types.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace lightsage {

class NodeFeatureStore;

enum class Provenance { direct, swing, search_cf };

struct EdgeAttr {
  double weight = 0.0;  // always the sum of the provenance components
  double direct_w = 0.0;
  double swing_w = 0.0;
  double searchcf_w = 0.0;

  void add(Provenance p, double w);
};

struct Edge {
  NodeIndex dst = 0;
  EdgeAttr attr;
};

struct GraphBuildConfig {
  int min_edge_users = 2;
  enum class Mode { training, inference } mode = Mode::training;
  // Inference graphs relax thresholds by this divisor (never below 1 user).
  double relax_divisor = 2.0;

  int effective_min_edge_users() const;
  void validate() const;
};

// Immutable directed weighted item graph. Node indices are contiguous and
// assigned in ascending item-id order, so index comparisons double as the
// canonical id tie-breaking everywhere downstream.
class ItemGraph {
 public:
  ItemGraph() = default;
  // Endpoints of `edges` must be indices into `ids`; self-loops rejected.
  ItemGraph(std::vector<std::string> ids, std::vector<std::pair<std::pair<NodeIndex, NodeIndex>, EdgeAttr>> edges);

  int node_count() const { return static_cast<int>(ids_.size()); }
  int64_t edge_count() const { return static_cast<int64_t>(out_adj_.size()); }
  const std::vector<std::string>& node_ids() const { return ids_; }
  const std::string& node_id(NodeIndex v) const { return ids_[v]; }
  NodeIndex node_index(const std::string& id) const;  // -1 when absent

  std::span<const Edge> out_edges(NodeIndex v) const;
  std::span<const Edge> in_edges(NodeIndex v) const;

  int out_degree(NodeIndex v) const { return static_cast<int>(out_off_[v + 1] - out_off_[v]); }
  int in_degree(NodeIndex v) const { return static_cast<int>(in_off_[v + 1] - in_off_[v]); }
  double weighted_out_degree(NodeIndex v) const { return w_out_[v]; }
  double weighted_in_degree(NodeIndex v) const { return w_in_[v]; }

  // Flat edge list in canonical (src, dst) order.
  struct FlatEdge {
    NodeIndex src;
    NodeIndex dst;
    EdgeAttr attr;
  };
  std::vector<FlatEdge> flat_edges() const;

 private:
  std::vector<std::string> ids_;
  std::map<std::string, NodeIndex> index_;
  std::vector<int64_t> out_off_;
  std::vector<Edge> out_adj_;  // CSR, dst ascending within each source
  std::vector<int64_t> in_off_;
  std::vector<Edge> in_adj_;  // Edge.dst holds the SOURCE here
  std::vector<double> w_out_, w_in_;
};

// (src item, dst item) -> distinct supporting users, already thresholded.
using DirectEdgeMap = std::map<std::pair<std::string, std::string>, int>;

// Distinct-user counting over PDP click pairs; drops self-pairs and pairs
// below the effective weak-edge threshold.
DirectEdgeMap build_direct_edges(const std::vector<ClickEvent>& events, const GraphBuildConfig& cfg);

struct CfEdge {
  std::string src;
  std::string dst;
  double weight = 0.0;
  Provenance prov = Provenance::swing;
};

// Merges direct and CF edges (summing provenance components), drops edges
// whose endpoints have no feature row, and produces the canonical graph.
ItemGraph assemble_graph(const DirectEdgeMap& direct, const std::vector<CfEdge>& cf_edges,
                         const NodeFeatureStore& features, size_t* dropped_endpoints = nullptr);

struct GraphStats {
  int64_t nodes = 0;
  int64_t edges = 0;
  int64_t direct_edges = 0;
  int64_t swing_edges = 0;
  int64_t searchcf_edges = 0;
  std::map<int, int64_t> out_degree_hist;
};

GraphStats graph_stats(const ItemGraph& g);
std::string stats_to_json(const GraphStats& s);

// TSV: src \t dst \t weight \t direct_w \t swing_w \t searchcf_w, canonical order.
std::string graph_to_tsv(const ItemGraph& g);
ItemGraph graph_from_tsv(const std::string& content);
void save_graph(const ItemGraph& g, const std::string& path);
ItemGraph load_graph(const std::string& path);

}  // namespace lightsage
