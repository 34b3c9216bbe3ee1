#pragma once

// Simple undirected graph with sorted adjacency lists.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace bpp {

using Edge = std::pair<std::size_t, std::size_t>;

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n_nodes);
  /// Self-loops are rejected; duplicates and reversed duplicates are merged.
  Graph(std::size_t n_nodes, const std::vector<Edge>& edges);

  std::size_t size() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// Edges as (u, v) with u < v, sorted; the position of an edge here is its index.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_.at(v); }
  std::size_t degree(std::size_t v) const { return adj_.at(v).size(); }
  std::size_t max_degree() const;
  bool has_edge(std::size_t u, std::size_t v) const;
  /// Index into edges() of {u, v}; throws if absent.
  std::size_t edge_index(std::size_t u, std::size_t v) const;

  /// Returns false on a cycle or a disconnected graph.
  bool is_tree() const;

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
};

/// Reads an edge-list CSV of `u,v` rows (0-based). A non-numeric first line is treated as a header.
/// The node count is one past the largest id unless `n_nodes` is larger.
Graph load_edge_list(const std::string& path, std::size_t n_nodes = 0);

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph star_graph(std::size_t n);

}  // namespace bpp
