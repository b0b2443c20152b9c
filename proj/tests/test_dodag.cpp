#include <doctest.h>

#include <queue>
#include <random>

#include "dfarpl/dodag.hpp"

using namespace dfarpl;

namespace {

ThingState make_node(NodeId id, double x, double y, double e_init = 5.0) {
  ThingState n;
  n.id = id;
  n.pos = {x, y};
  n.e_initial = e_init;
  if (id == kRootId) n.role = Role::Root;
  return n;
}

} // namespace

TEST_CASE("chain topology: ranks grow hop by hop from the head") {
  SimConfig cfg;
  cfg.tx_range = 60.0;
  std::vector<ThingState> nodes{
      make_node(0, 0, 0),
      make_node(1, 200, 0),  // head (reaches root over the logical uplink)
      make_node(2, 250, 0),  // in range of 1 only
      make_node(3, 305, 0),  // in range of 2 only
  };
  auto stats = build_dodag({1}, nodes, cfg);

  CHECK(nodes[0].rank == 0);
  CHECK(nodes[1].rank == 1);
  CHECK(nodes[1].parent == kRootId);
  CHECK(nodes[1].role == Role::ClusterHead);
  CHECK(nodes[2].rank == 2);
  CHECK(nodes[2].parent == 1);
  CHECK(nodes[3].rank == 3);
  CHECK(nodes[3].parent == 2);

  // everybody below the head inherits its cluster
  CHECK(nodes[2].cluster_head == 1);
  CHECK(nodes[3].cluster_head == 1);

  CHECK(stats.ranked_nodes == 3);
  CHECK(stats.unranked_nodes == 0);
  CHECK(stats.dio_broadcasts == 3); // 1 per ranked advertiser level entry
}

TEST_CASE("out-of-range island stays unranked") {
  SimConfig cfg;
  cfg.tx_range = 50.0;
  std::vector<ThingState> nodes{
      make_node(0, 0, 0),
      make_node(1, 100, 0), // head
      make_node(2, 500, 500),
  };
  auto stats = build_dodag({1}, nodes, cfg);
  CHECK_FALSE(nodes[2].rank.has_value());
  CHECK(stats.unranked_nodes == 1);
  CHECK_THROWS(route_upward(2, nodes));
}

TEST_CASE("joiner prefers the closer advertiser, then the lower id") {
  SimConfig cfg;
  cfg.tx_range = 100.0;
  std::vector<ThingState> nodes{
      make_node(0, 0, 0),
      make_node(1, 100, 0),  // head A
      make_node(2, 200, 0),  // head B
      make_node(3, 160, 0),  // 60 from A, 40 from B -> B
      make_node(4, 150, 0),  // equidistant -> lower id A
  };
  build_dodag({1, 2}, nodes, cfg);
  CHECK(nodes[3].parent == 2);
  CHECK(nodes[3].cluster_head == 2);
  CHECK(nodes[4].parent == 1);
  CHECK(nodes[4].cluster_head == 1);
}

TEST_CASE("dead head is skipped during seeding") {
  SimConfig cfg;
  cfg.tx_range = 100.0;
  std::vector<ThingState> nodes{
      make_node(0, 0, 0),
      make_node(1, 100, 0),
      make_node(2, 150, 0),
  };
  nodes[1].dead = true;
  auto stats = build_dodag({1}, nodes, cfg);
  CHECK_FALSE(nodes[1].rank.has_value());
  CHECK_FALSE(nodes[2].rank.has_value());
  CHECK(stats.ranked_nodes == 0);
}

TEST_CASE("route length equals rank; dump lists every edge") {
  SimConfig cfg;
  cfg.tx_range = 60.0;
  std::vector<ThingState> nodes{
      make_node(0, 0, 0),
      make_node(1, 300, 0),
      make_node(2, 350, 0),
      make_node(3, 400, 0),
  };
  build_dodag({1}, nodes, cfg);

  auto r3 = route_upward(3, nodes);
  CHECK(r3 == std::vector<NodeId>{2, 1, 0});
  CHECK(r3.size() == *nodes[3].rank);
  CHECK(route_upward(1, nodes) == std::vector<NodeId>{0});

  CHECK(dump_edges(nodes) == "1 0\n2 1\n3 2\n");
}

TEST_CASE("random topologies: rank matches BFS depth from the heads") {
  SimConfig cfg;
  cfg.tx_range = 45.0;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 200.0);

  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ThingState> nodes;
    nodes.push_back(make_node(0, 100, 100));
    for (NodeId i = 1; i < 30; ++i) nodes.push_back(make_node(i, u(rng), u(rng)));
    std::vector<NodeId> heads{1, 2};

    build_dodag(heads, nodes, cfg);

    // oracle: breadth-first search over the in-range graph seeded at
    // the heads with depth 1
    std::vector<int> depth(nodes.size(), -1);
    std::queue<NodeId> q;
    for (NodeId h : heads) {
      depth[h] = 1;
      q.push(h);
    }
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop();
      for (const auto& w : nodes) {
        if (w.id == kRootId || depth[w.id] >= 0) continue;
        if (distance(nodes[v].pos, w.pos) <= cfg.tx_range) {
          depth[w.id] = depth[v] + 1;
          q.push(w.id);
        }
      }
    }

    for (const auto& n : nodes) {
      if (n.id == kRootId) continue;
      if (depth[n.id] < 0) {
        CHECK_FALSE(n.rank.has_value());
      } else {
        REQUIRE(n.rank.has_value());
        CHECK(*n.rank == static_cast<std::uint32_t>(depth[n.id]));
        // parent chain is acyclic and reaches the root in rank steps
        CHECK(route_upward(n.id, nodes).size() == *n.rank);
      }
    }
  }
}
