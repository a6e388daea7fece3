#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "hirenet/csv.hpp"
#include "hirenet/error.hpp"

namespace hirenet {

struct NodeRecord {
  int id = 0;
  std::string name;
  /// Numeric attribute columns from nodes.csv (published ranks, ...).
  /// Missing cells (empty or NA) are simply absent from the map.
  std::map<std::string, double> attrs;
  /// Cluster label; empty when unassigned.
  std::string group;
};

/// Weighted directed multigraph as a dense nonnegative count matrix.
/// at(i, j) counts flow from producer i to hirer j; the diagonal holds
/// self-hires. Immutable by convention after loading; every analysis
/// operation takes it by const reference.
class WeightedDigraph {
public:
  WeightedDigraph() = default;
  explicit WeightedDigraph(int n)
      : n_(n), w_(static_cast<std::size_t>(n) * n, 0) {
    nodes_.resize(n);
    for (int i = 0; i < n; ++i) {
      nodes_[i].id = i;
      nodes_[i].name = "node" + std::to_string(i);
    }
  }
  WeightedDigraph(int n, std::vector<NodeRecord> nodes)
      : n_(n), w_(static_cast<std::size_t>(n) * n, 0), nodes_(std::move(nodes)) {}

  int n() const { return n_; }
  std::int64_t at(int i, int j) const { return w_[idx(i, j)]; }
  std::int64_t& at(int i, int j) { return w_[idx(i, j)]; }

  const std::vector<NodeRecord>& nodes() const { return nodes_; }
  std::vector<NodeRecord>& nodes() { return nodes_; }

  std::int64_t total_weight() const {
    return std::accumulate(w_.begin(), w_.end(), std::int64_t{0});
  }
  /// Row sum; placements made by i. Self-hires included unless excluded.
  std::int64_t out_strength(int i, bool include_self = true) const {
    std::int64_t s = 0;
    for (int j = 0; j < n_; ++j) s += at(i, j);
    if (!include_self) s -= at(i, i);
    return s;
  }
  std::int64_t in_strength(int j, bool include_self = true) const {
    std::int64_t s = 0;
    for (int i = 0; i < n_; ++i) s += at(i, j);
    if (!include_self) s -= at(j, j);
    return s;
  }
  std::int64_t diagonal_weight() const {
    std::int64_t s = 0;
    for (int i = 0; i < n_; ++i) s += at(i, i);
    return s;
  }
  int offdiag_edge_count() const {
    int e = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j && at(i, j) > 0) ++e;
    return e;
  }

  /// New graph with node identities permuted: node i becomes perm[i].
  WeightedDigraph relabeled(const std::vector<int>& perm) const {
    WeightedDigraph g(n_);
    for (int i = 0; i < n_; ++i) {
      g.nodes_[perm[i]] = nodes_[i];
      g.nodes_[perm[i]].id = perm[i];
    }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) g.at(perm[i], perm[j]) = at(i, j);
    return g;
  }

private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }
  int n_ = 0;
  std::vector<std::int64_t> w_;
  std::vector<NodeRecord> nodes_;
};

namespace detail {

inline bool missing_cell(const std::string& s) {
  return s.empty() || s == "NA" || s == "na" || s == "NaN";
}

inline double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError(where + ": not a number: '" + s + "'");
  }
}

inline long long parse_int(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError(where + ": not an integer: '" + s + "'");
  }
}

}  // namespace detail

/// Reads the two-file CSV format: nodes.csv (id,name,<attribute columns>)
/// and edges.csv (src,dst,count). Duplicate (src,dst) rows are summed;
/// unreferenced pairs stay 0. Node ids must be the contiguous range 0..n-1.
inline WeightedDigraph load_graph(std::istream& nodes_in,
                                  std::istream& edges_in) {
  CsvTable nt = read_csv(nodes_in, "nodes");
  int id_col = nt.column("id");
  int name_col = nt.column("name");
  int group_col = nt.column("group");
  if (id_col < 0 || name_col < 0)
    throw InputError("nodes: header must contain 'id' and 'name'");

  int n = static_cast<int>(nt.rows.size());
  if (n == 0) throw InputError("nodes: no rows");
  std::vector<NodeRecord> nodes(n);
  std::vector<bool> seen(n, false);
  for (std::size_t r = 0; r < nt.rows.size(); ++r) {
    const auto& row = nt.rows[r];
    std::string where = "nodes: row " + std::to_string(r + 2);
    long long id = detail::parse_int(row[id_col], where);
    if (id < 0 || id >= n)
      throw InputError(where + ": id " + std::to_string(id) +
                       " outside 0.." + std::to_string(n - 1));
    if (seen[id]) throw InputError(where + ": duplicate id " + std::to_string(id));
    seen[id] = true;
    NodeRecord& rec = nodes[id];
    rec.id = static_cast<int>(id);
    rec.name = row[name_col];
    for (std::size_t c = 0; c < nt.header.size(); ++c) {
      if (static_cast<int>(c) == id_col || static_cast<int>(c) == name_col)
        continue;
      if (static_cast<int>(c) == group_col) {
        rec.group = row[c];
        continue;
      }
      if (detail::missing_cell(row[c])) continue;
      rec.attrs[nt.header[c]] =
          detail::parse_double(row[c], where + ", column '" + nt.header[c] + "'");
    }
  }

  WeightedDigraph g(n, std::move(nodes));

  CsvTable et = read_csv(edges_in, "edges");
  int src_col = et.column("src");
  int dst_col = et.column("dst");
  int cnt_col = et.column("count");
  if (src_col < 0 || dst_col < 0 || cnt_col < 0)
    throw InputError("edges: header must contain 'src', 'dst' and 'count'");
  for (std::size_t r = 0; r < et.rows.size(); ++r) {
    const auto& row = et.rows[r];
    std::string where = "edges: row " + std::to_string(r + 2);
    long long src = detail::parse_int(row[src_col], where);
    long long dst = detail::parse_int(row[dst_col], where);
    long long cnt = detail::parse_int(row[cnt_col], where);
    if (src < 0 || src >= n)
      throw InputError(where + ": unknown node " + std::to_string(src));
    if (dst < 0 || dst >= n)
      throw InputError(where + ": unknown node " + std::to_string(dst));
    if (cnt < 0) throw InputError(where + ": negative count " + std::to_string(cnt));
    if (cnt == 0) throw InputError(where + ": count must be >= 1");
    g.at(static_cast<int>(src), static_cast<int>(dst)) += cnt;
  }
  return g;
}

/// Writes the node table back out, including any assigned group labels.
inline void save_nodes(const WeightedDigraph& g, std::ostream& out) {
  std::vector<std::string> attr_names;
  for (const auto& rec : g.nodes())
    for (const auto& [k, v] : rec.attrs)
      if (std::find(attr_names.begin(), attr_names.end(), k) == attr_names.end())
        attr_names.push_back(k);
  std::sort(attr_names.begin(), attr_names.end());

  std::vector<std::string> header = {"id", "name", "group"};
  header.insert(header.end(), attr_names.begin(), attr_names.end());
  write_csv_row(out, header);
  for (const auto& rec : g.nodes()) {
    std::vector<std::string> row = {std::to_string(rec.id), rec.name, rec.group};
    for (const auto& a : attr_names) {
      auto it = rec.attrs.find(a);
      if (it == rec.attrs.end()) {
        row.push_back("");
      } else {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", it->second);
        row.push_back(buf);
      }
    }
    write_csv_row(out, row);
  }
}

inline void save_edges(const WeightedDigraph& g, std::ostream& out) {
  write_csv_row(out, {"src", "dst", "count"});
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      if (g.at(i, j) > 0)
        write_csv_row(out, {std::to_string(i), std::to_string(j),
                            std::to_string(g.at(i, j))});
}

}  // namespace hirenet
