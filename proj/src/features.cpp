#include "lightsage/features.hpp"

#include "lightsage/tsv.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lightsage {

int Vocabulary::add(const std::string& token) {
  auto it = index.find(token);
  if (it != index.end()) return it->second;
  tokens.push_back(token);
  int idx = static_cast<int>(tokens.size());  // 1-based, 0 reserved
  index.emplace(token, idx);
  return idx;
}

int Vocabulary::lookup(const std::string& token) const {
  auto it = index.find(token);
  return it == index.end() ? 0 : it->second;
}

std::string Vocabulary::serialize() const {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    out += tokens[i];
    out += '\t';
    out += std::to_string(i + 1);
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::deserialize(const std::string& text) {
  Vocabulary v;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cols = split_tabs(line);
    if (cols.size() != 2) throw std::runtime_error("features: malformed vocabulary line: " + line);
    int got = v.add(cols[0]);
    auto want = parse_i64(cols[1]);
    if (!want || *want != got) throw std::runtime_error("features: vocabulary index mismatch: " + line);
  }
  return v;
}

const SparseField* NodeFeatureStore::sparse_field(const std::string& name) const {
  for (const auto& f : sparse) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const DenseField* NodeFeatureStore::dense_field(const std::string& name) const {
  for (const auto& f : dense) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

namespace {

enum class ColKind { sparse, dense, pretrained };

struct Column {
  std::string name;
  ColKind kind;
};

std::vector<Column> parse_header(const std::string& line) {
  auto cols = split_tabs(line);
  if (cols.empty() || cols[0] != "item") {
    throw std::runtime_error("features: header must start with 'item'");
  }
  std::vector<Column> out;
  bool seen_pretrained = false;
  for (size_t i = 1; i < cols.size(); ++i) {
    size_t colon = cols[i].rfind(':');
    if (colon == std::string::npos) {
      throw std::runtime_error("features: header column lacks kind: " + cols[i]);
    }
    Column c;
    c.name = cols[i].substr(0, colon);
    std::string kind = cols[i].substr(colon + 1);
    if (kind == "sparse") {
      c.kind = ColKind::sparse;
    } else if (kind == "dense") {
      c.kind = ColKind::dense;
    } else if (kind == "pretrained") {
      if (seen_pretrained) throw std::runtime_error("features: multiple pretrained columns");
      seen_pretrained = true;
      c.kind = ColKind::pretrained;
    } else {
      throw std::runtime_error("features: unknown column kind: " + kind);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<double> parse_csv_floats(const std::string& s) {
  std::vector<double> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t pos = s.find(',', start);
    std::string part = pos == std::string::npos ? s.substr(start) : s.substr(start, pos - start);
    auto v = parse_f64(part);
    if (!v) throw std::runtime_error("features: bad pretrained component: " + part);
    out.push_back(*v);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double dense_transform(const std::string& field_name, double raw) {
  if (field_name == "price") return std::log1p(std::max(raw, 0.0));
  return raw;
}

}  // namespace

NodeFeatureStore load_features(const std::string& path) {
  std::string content = read_file(path);
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("features: empty feature file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto columns = parse_header(line);

  NodeFeatureStore store;
  for (const auto& c : columns) {
    if (c.kind == ColKind::sparse) store.sparse.push_back(SparseField{c.name, {}, {}});
    if (c.kind == ColKind::dense) store.dense.push_back(DenseField{c.name, {}, {}, 0.0, 1.0});
  }
  std::vector<std::vector<double>> pretrained_rows;

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cols = split_tabs(line);
    if (cols.size() < columns.size() + 1 || cols[0].empty()) {
      ++store.skipped_rows;
      continue;
    }
    // Validate dense cells before mutating anything so a bad row is skipped
    // as a whole.
    bool ok = true;
    std::vector<double> dense_vals;
    std::vector<double> pre_vals;
    for (size_t i = 0; i < columns.size(); ++i) {
      const std::string& cell = cols[i + 1];
      if (columns[i].kind == ColKind::dense) {
        auto v = parse_f64(cell);
        if (!v) {
          ok = false;
          break;
        }
        dense_vals.push_back(*v);
      } else if (columns[i].kind == ColKind::pretrained && !cell.empty()) {
        pre_vals = parse_csv_floats(cell);  // throws on garbage; dims checked below
      }
    }
    if (!ok) {
      ++store.skipped_rows;
      continue;
    }
    if (!pre_vals.empty()) {
      if (store.pretrained_dim == 0) {
        store.pretrained_dim = static_cast<int>(pre_vals.size());
      } else if (static_cast<int>(pre_vals.size()) != store.pretrained_dim) {
        throw std::runtime_error("features: inconsistent pretrained dimensions in " + path);
      }
    }
    if (store.item_index.count(cols[0])) {
      ++store.skipped_rows;  // duplicate item row
      continue;
    }

    int row = store.item_count();
    store.item_index.emplace(cols[0], row);
    store.items.push_back(cols[0]);
    size_t sparse_i = 0, dense_i = 0;
    for (size_t i = 0; i < columns.size(); ++i) {
      const std::string& cell = cols[i + 1];
      if (columns[i].kind == ColKind::sparse) {
        auto& f = store.sparse[sparse_i++];
        f.values.push_back(cell.empty() ? 0 : f.vocab.add(cell));
      } else if (columns[i].kind == ColKind::dense) {
        store.dense[dense_i].raw.push_back(dense_vals[dense_i]);
        ++dense_i;
      }
    }
    pretrained_rows.push_back(std::move(pre_vals));
  }

  int n = store.item_count();
  if (n == 0) throw std::runtime_error("features: no usable rows in " + path);

  // Standardization constants over the load set.
  for (auto& f : store.dense) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += dense_transform(f.name, f.raw[i]);
    f.mean = sum / n;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
      double d = dense_transform(f.name, f.raw[i]) - f.mean;
      var += d * d;
    }
    f.stddev = std::sqrt(var / n);
    if (f.stddev < 1e-12) f.stddev = 1.0;
    f.model_value.resize(n);
    for (int i = 0; i < n; ++i) {
      f.model_value[i] = (dense_transform(f.name, f.raw[i]) - f.mean) / f.stddev;
    }
  }

  store.has_pretrained.assign(n, false);
  store.pretrained = Matrix::Zero(store.pretrained_dim, n);
  for (int i = 0; i < n; ++i) {
    if (!pretrained_rows[i].empty()) {
      store.has_pretrained[i] = true;
      for (int k = 0; k < store.pretrained_dim; ++k) store.pretrained(k, i) = pretrained_rows[i][k];
    }
  }
  return store;
}

int price_band(double price) {
  return static_cast<int>(std::floor(std::log10(std::max(price, 0.01)) * 2.0));
}

std::string content_key(const NodeFeatureStore& store, int item_row, int level) {
  if (level < 0 || level > 2) throw std::runtime_error("features: content_key level must be 0..2");
  const SparseField* cat = store.sparse_field("category");
  const SparseField* brand = store.sparse_field("brand");
  const DenseField* price = store.dense_field("price");
  if (!cat || !brand || !price) {
    throw std::runtime_error("features: content keys need category/brand/price fields");
  }
  std::string key = "c" + std::to_string(cat->values[item_row]);
  if (level <= 1) key += "|b" + std::to_string(brand->values[item_row]);
  if (level == 0) key += "|p" + std::to_string(price_band(price->raw[item_row]));
  return key;
}

}  // namespace lightsage
