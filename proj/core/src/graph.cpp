#include "bpp/graph.hpp"

#include <algorithm>
#include <numeric>

#include "bpp/csv.hpp"
#include "bpp/errors.hpp"

namespace bpp {

Graph::Graph(std::size_t n_nodes) : adj_(n_nodes) {}

Graph::Graph(std::size_t n_nodes, const std::vector<Edge>& edges) : adj_(n_nodes) {
  for (auto [u, v] : edges) {
    if (u >= n_nodes || v >= n_nodes) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self-loop on node " + std::to_string(u));
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

std::size_t Graph::max_degree() const {
  std::size_t d = 0;
  for (const auto& list : adj_) d = std::max(d, list.size());
  return d;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= size() || v >= size()) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::size_t Graph::edge_index(std::size_t u, std::size_t v) const {
  const Edge key{std::min(u, v), std::max(u, v)};
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) throw ValidationError("no edge between the given nodes");
  return static_cast<std::size_t>(it - edges_.begin());
}

bool Graph::is_tree() const {
  if (size() == 0) return false;
  if (edges_.size() + 1 != size()) return false;
  std::vector<bool> seen(size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t visited = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adj_[v])
      if (!seen[w]) {
        seen[w] = true;
        ++visited;
        stack.push_back(w);
      }
  }
  return visited == size();
}

Graph load_edge_list(const std::string& path, std::size_t n_nodes) {
  const auto rows = read_csv(path);
  std::vector<Edge> edges;
  std::size_t n = n_nodes;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (r == 0 && looks_like_header(row)) continue;
    const std::string where = location(path, row.line);
    if (row.fields.size() != 2) throw ValidationError(where + ": expected 'u,v'");
    const long long u = parse_integer(row.fields[0], where);
    const long long v = parse_integer(row.fields[1], where);
    if (u < 0 || v < 0) throw ValidationError(where + ": negative node id");
    if (u == v) throw ValidationError(where + ": self-loop");
    edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    n = std::max(n, static_cast<std::size_t>(std::max(u, v)) + 1);
  }
  return Graph(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, e);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw ValidationError("cycle needs at least 3 nodes");
  std::vector<Edge> e;
  for (std::size_t v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph(n, e);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

Graph star_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t v = 1; v < n; ++v) e.emplace_back(0, v);
  return Graph(n, e);
}

}  // namespace bpp
