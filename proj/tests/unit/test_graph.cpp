#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "bpp/errors.hpp"
#include "bpp/graph.hpp"

using namespace bpp;

TEST(Graph, DedupAndAdjacency) {
  const Graph g(4, {{0, 1}, {1, 0}, {2, 1}, {1, 2}, {3, 2}});
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(g.neighbors(1), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(g.max_degree(), 2u);
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_EQ(g.edge_index(3, 2), 2u);
  EXPECT_THROW(g.edge_index(0, 3), std::exception);
  EXPECT_THROW(Graph(3, {{1, 1}}), ValidationError);
  EXPECT_THROW(Graph(3, {{0, 3}}), ValidationError);
}

TEST(Graph, Trees) {
  EXPECT_TRUE(path_graph(5).is_tree());
  EXPECT_TRUE(star_graph(6).is_tree());
  EXPECT_FALSE(cycle_graph(5).is_tree());
  EXPECT_FALSE(Graph(4, {{0, 1}, {2, 3}}).is_tree());
  EXPECT_EQ(complete_graph(5).edge_count(), 10u);
  EXPECT_EQ(cycle_graph(6).max_degree(), 2u);
}

TEST(Graph, LoadEdgeList) {
  const auto path = std::filesystem::temp_directory_path() / "bpp_test_edges.csv";
  std::ofstream(path) << "u,v\n0,1\n1,0\n1,2\n";
  const Graph g = load_edge_list(path.string(), 5);
  EXPECT_EQ(g.size(), 5u);
  EXPECT_EQ(g.edge_count(), 2u);

  std::ofstream(path) << "0,1\n1,x\n";
  EXPECT_THROW(load_edge_list(path.string()), ValidationError);
  EXPECT_THROW(load_edge_list("/nonexistent/edges.csv"), std::exception);
}
