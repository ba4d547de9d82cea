#include "lightsage/graph.hpp"

#include "lightsage/features.hpp"
#include "lightsage/tsv.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lightsage {

void EdgeAttr::add(Provenance p, double w) {
  switch (p) {
    case Provenance::direct:
      direct_w += w;
      break;
    case Provenance::swing:
      swing_w += w;
      break;
    case Provenance::search_cf:
      searchcf_w += w;
      break;
  }
  weight = direct_w + swing_w + searchcf_w;
}

int GraphBuildConfig::effective_min_edge_users() const {
  if (mode == Mode::training) return min_edge_users;
  return std::max(1, static_cast<int>(std::floor(min_edge_users / relax_divisor)));
}

void GraphBuildConfig::validate() const {
  if (min_edge_users < 1) throw std::runtime_error("graph: min_edge_users must be >= 1");
  if (relax_divisor < 1.0) throw std::runtime_error("graph: relax_divisor must be >= 1");
}

ItemGraph::ItemGraph(std::vector<std::string> ids,
                     std::vector<std::pair<std::pair<NodeIndex, NodeIndex>, EdgeAttr>> edges) {
  // Canonical node order: ascending item id. Remap incoming indices.
  std::vector<int> order(ids.size());
  for (size_t i = 0; i < ids.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ids[a] < ids[b]; });
  std::vector<NodeIndex> remap(ids.size());
  ids_.resize(ids.size());
  for (size_t pos = 0; pos < order.size(); ++pos) {
    remap[order[pos]] = static_cast<NodeIndex>(pos);
    ids_[pos] = std::move(ids[order[pos]]);
  }
  for (size_t i = 0; i + 1 < ids_.size(); ++i) {
    if (ids_[i] == ids_[i + 1]) throw std::runtime_error("graph: duplicate node id: " + ids_[i]);
  }
  for (size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], static_cast<NodeIndex>(i));

  int n = node_count();
  for (auto& e : edges) {
    e.first.first = remap[e.first.first];
    e.first.second = remap[e.first.second];
    if (e.first.first == e.first.second) throw std::runtime_error("graph: self-loop rejected");
    if (e.second.weight <= 0.0) throw std::runtime_error("graph: non-positive edge weight");
  }
  std::sort(edges.begin(), edges.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i].first == edges[i + 1].first) throw std::runtime_error("graph: duplicate edge");
  }

  out_off_.assign(n + 1, 0);
  in_off_.assign(n + 1, 0);
  for (const auto& e : edges) {
    ++out_off_[e.first.first + 1];
    ++in_off_[e.first.second + 1];
  }
  for (int v = 0; v < n; ++v) {
    out_off_[v + 1] += out_off_[v];
    in_off_[v + 1] += in_off_[v];
  }
  out_adj_.resize(edges.size());
  in_adj_.resize(edges.size());
  w_out_.assign(n, 0.0);
  w_in_.assign(n, 0.0);
  std::vector<int64_t> out_fill = out_off_, in_fill = in_off_;
  for (const auto& e : edges) {
    out_adj_[out_fill[e.first.first]++] = Edge{e.first.second, e.second};
    w_out_[e.first.first] += e.second.weight;
    w_in_[e.first.second] += e.second.weight;
  }
  // In-adjacency sorted by source (edges are already in (src,dst) order, so
  // appending per dst yields ascending sources).
  for (const auto& e : edges) {
    in_adj_[in_fill[e.first.second]++] = Edge{e.first.first, e.second};
  }
}

NodeIndex ItemGraph::node_index(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

std::span<const Edge> ItemGraph::out_edges(NodeIndex v) const {
  return {out_adj_.data() + out_off_[v], static_cast<size_t>(out_off_[v + 1] - out_off_[v])};
}

std::span<const Edge> ItemGraph::in_edges(NodeIndex v) const {
  return {in_adj_.data() + in_off_[v], static_cast<size_t>(in_off_[v + 1] - in_off_[v])};
}

std::vector<ItemGraph::FlatEdge> ItemGraph::flat_edges() const {
  std::vector<FlatEdge> out;
  out.reserve(out_adj_.size());
  for (NodeIndex v = 0; v < node_count(); ++v) {
    for (const Edge& e : out_edges(v)) out.push_back(FlatEdge{v, e.dst, e.attr});
  }
  return out;
}

DirectEdgeMap build_direct_edges(const std::vector<ClickEvent>& events, const GraphBuildConfig& cfg) {
  cfg.validate();
  std::map<std::pair<std::string, std::string>, std::set<std::string>> users_per_pair;
  for (const auto& e : events) {
    if (!e.has_trigger() || e.trigger == e.item) continue;
    users_per_pair[{e.trigger, e.item}].insert(e.user);
  }
  DirectEdgeMap out;
  int threshold = cfg.effective_min_edge_users();
  for (const auto& [pair, users] : users_per_pair) {
    if (static_cast<int>(users.size()) >= threshold) {
      out.emplace(pair, static_cast<int>(users.size()));
    }
  }
  return out;
}

ItemGraph assemble_graph(const DirectEdgeMap& direct, const std::vector<CfEdge>& cf_edges,
                         const NodeFeatureStore& features, size_t* dropped_endpoints) {
  std::map<std::pair<std::string, std::string>, EdgeAttr> merged;
  size_t dropped = 0;
  auto endpoint_ok = [&](const std::string& id) { return features.find_item(id) >= 0; };

  for (const auto& [pair, users] : direct) {
    if (pair.first == pair.second) continue;
    if (!endpoint_ok(pair.first) || !endpoint_ok(pair.second)) {
      ++dropped;
      continue;
    }
    merged[pair].add(Provenance::direct, static_cast<double>(users));
  }
  for (const auto& e : cf_edges) {
    if (e.src == e.dst || e.weight <= 0.0) continue;
    if (!endpoint_ok(e.src) || !endpoint_ok(e.dst)) {
      ++dropped;
      continue;
    }
    merged[{e.src, e.dst}].add(e.prov, e.weight);
  }
  if (dropped_endpoints) *dropped_endpoints = dropped;
  if (merged.empty()) throw std::runtime_error("graph: no edges left after assembly");

  std::set<std::string> node_set;
  for (const auto& [pair, attr] : merged) {
    node_set.insert(pair.first);
    node_set.insert(pair.second);
  }
  std::vector<std::string> ids(node_set.begin(), node_set.end());
  std::map<std::string, NodeIndex> idx;
  for (size_t i = 0; i < ids.size(); ++i) idx[ids[i]] = static_cast<NodeIndex>(i);

  std::vector<std::pair<std::pair<NodeIndex, NodeIndex>, EdgeAttr>> edges;
  edges.reserve(merged.size());
  for (const auto& [pair, attr] : merged) {
    edges.push_back({{idx[pair.first], idx[pair.second]}, attr});
  }
  return ItemGraph(std::move(ids), std::move(edges));
}

GraphStats graph_stats(const ItemGraph& g) {
  GraphStats s;
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    ++s.out_degree_hist[g.out_degree(v)];
    for (const Edge& e : g.out_edges(v)) {
      if (e.attr.direct_w > 0.0) ++s.direct_edges;
      if (e.attr.swing_w > 0.0) ++s.swing_edges;
      if (e.attr.searchcf_w > 0.0) ++s.searchcf_edges;
    }
  }
  return s;
}

std::string stats_to_json(const GraphStats& s) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"nodes\": " << s.nodes << ",\n";
  out << "  \"edges\": " << s.edges << ",\n";
  out << "  \"provenance_edges\": {\"direct\": " << s.direct_edges << ", \"swing\": " << s.swing_edges
      << ", \"search_cf\": " << s.searchcf_edges << "},\n";
  out << "  \"out_degree_hist\": [";
  bool first = true;
  for (const auto& [deg, count] : s.out_degree_hist) {
    if (!first) out << ", ";
    first = false;
    out << "[" << deg << ", " << count << "]";
  }
  out << "]\n}\n";
  return out.str();
}

std::string graph_to_tsv(const ItemGraph& g) {
  std::string out;
  for (const auto& fe : g.flat_edges()) {
    out += g.node_id(fe.src);
    out += '\t';
    out += g.node_id(fe.dst);
    out += '\t';
    out += format_double(fe.attr.weight);
    out += '\t';
    out += format_double(fe.attr.direct_w);
    out += '\t';
    out += format_double(fe.attr.swing_w);
    out += '\t';
    out += format_double(fe.attr.searchcf_w);
    out += '\n';
  }
  return out;
}

ItemGraph graph_from_tsv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  std::set<std::string> node_set;
  std::vector<std::pair<std::pair<std::string, std::string>, EdgeAttr>> raw;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cols = split_tabs(line);
    if (cols.size() != 6) throw std::runtime_error("graph: malformed edge row: " + line);
    EdgeAttr attr;
    auto w = parse_f64(cols[2]), dw = parse_f64(cols[3]), sw = parse_f64(cols[4]), cw = parse_f64(cols[5]);
    if (!w || !dw || !sw || !cw) throw std::runtime_error("graph: bad weights in row: " + line);
    attr.weight = *w;
    attr.direct_w = *dw;
    attr.swing_w = *sw;
    attr.searchcf_w = *cw;
    if (std::fabs(attr.weight - (attr.direct_w + attr.swing_w + attr.searchcf_w)) > 1e-9 * std::max(1.0, attr.weight)) {
      throw std::runtime_error("graph: weight does not match provenance components: " + line);
    }
    node_set.insert(cols[0]);
    node_set.insert(cols[1]);
    raw.push_back({{cols[0], cols[1]}, attr});
  }
  std::vector<std::string> ids(node_set.begin(), node_set.end());
  std::map<std::string, NodeIndex> idx;
  for (size_t i = 0; i < ids.size(); ++i) idx[ids[i]] = static_cast<NodeIndex>(i);
  std::vector<std::pair<std::pair<NodeIndex, NodeIndex>, EdgeAttr>> edges;
  edges.reserve(raw.size());
  for (const auto& [pair, attr] : raw) {
    edges.push_back({{idx[pair.first], idx[pair.second]}, attr});
  }
  return ItemGraph(std::move(ids), std::move(edges));
}

void save_graph(const ItemGraph& g, const std::string& path) { atomic_write_file(path, graph_to_tsv(g)); }

ItemGraph load_graph(const std::string& path) { return graph_from_tsv(read_file(path)); }

}  // namespace lightsage
