#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "phylo/enewick.hpp"
#include "phylo/network.hpp"

using namespace phylo;

namespace {

Network diamond() {
  // rho -> v1,v2; v1 -> l1,r; v2 -> r,l2; r -> l3
  RawDigraph raw;
  raw.add_edge("rho", "v1");
  raw.add_edge("rho", "v2");
  raw.add_edge("v1", "l1");
  raw.add_edge("v1", "r");
  raw.add_edge("v2", "r");
  raw.add_edge("v2", "l2");
  raw.add_edge("r", "l3");
  raw.set_label("l1", "l1");
  raw.set_label("l2", "l2");
  raw.set_label("l3", "l3");
  return Network::validate(raw);
}

}  // namespace

TEST_CASE("validation assigns node kinds from degrees") {
  Network net = diamond();
  CHECK(net.node_count() == 7);
  CHECK(net.edge_count() == 7);
  CHECK(net.kind(net.root()) == NodeKind::Tree);
  NodeId r = *net.find_name("r");
  CHECK(net.kind(r) == NodeKind::Reticulate);
  CHECK(net.indegree(r) == 2);
  CHECK(net.outdegree(r) == 1);
  NodeId v1 = *net.find_name("v1");
  CHECK(net.kind(v1) == NodeKind::Tree);
  CHECK(net.is_leaf(*net.find_taxon("l3")));
  CHECK(net.taxa() == Cluster{"l1", "l2", "l3"});
}

TEST_CASE("degree-2 nodes are kept and classified redundant") {
  RawDigraph raw;
  raw.add_edge("a", "b");
  raw.add_edge("b", "l1");
  raw.add_edge("a", "l2");
  raw.set_label("l1", "x");
  raw.set_label("l2", "y");
  Network net = Network::validate(raw);
  CHECK(net.kind(*net.find_name("b")) == NodeKind::Redundant);
}

TEST_CASE("structural violations are rejected with stable codes") {
  auto code_of = [](const RawDigraph& raw) {
    try {
      Network::validate(raw);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::SyntaxError;  // placeholder, never expected
  };

  RawDigraph cyc;  // a -> b -> c -> a, reachable from a root
  cyc.add_edge("r", "a");
  cyc.add_edge("a", "b");
  cyc.add_edge("b", "c");
  cyc.add_edge("c", "a");
  cyc.add_edge("b", "l1");
  cyc.set_label("l1", "l1");
  CHECK(code_of(cyc) == ErrorCode::CyclicGraph);

  CHECK(code_of(RawDigraph{}) == ErrorCode::NoRoot);

  RawDigraph two_roots;
  two_roots.add_edge("a", "c");
  two_roots.add_edge("b", "c");
  two_roots.add_edge("a", "l1");
  two_roots.add_edge("b", "l2");
  two_roots.add_edge("c", "l3");
  two_roots.set_label("l1", "l1");
  two_roots.set_label("l2", "l2");
  two_roots.set_label("l3", "l3");
  CHECK(code_of(two_roots) == ErrorCode::MultipleRoots);

  // indegree 2 and outdegree 2 on one node
  RawDigraph deg;
  deg.add_edge("r", "a");
  deg.add_edge("r", "b");
  deg.add_edge("a", "x");
  deg.add_edge("b", "x");
  deg.add_edge("x", "l1");
  deg.add_edge("x", "l2");
  deg.add_edge("a", "l3");
  deg.add_edge("b", "l4");
  deg.set_label("l1", "l1");
  deg.set_label("l2", "l2");
  deg.set_label("l3", "l3");
  deg.set_label("l4", "l4");
  CHECK(code_of(deg) == ErrorCode::DegreeViolation);

  RawDigraph dup;
  dup.add_edge("a", "l1");
  dup.add_edge("a", "l2");
  dup.set_label("l1", "t");
  dup.set_label("l2", "t");
  CHECK(code_of(dup) == ErrorCode::DuplicateTaxon);

  RawDigraph bare;
  bare.add_edge("a", "l1");
  bare.add_edge("a", "l2");
  bare.set_label("l1", "t");
  CHECK(code_of(bare) == ErrorCode::UnlabeledLeaf);

  RawDigraph internal;
  internal.add_edge("a", "b");
  internal.add_edge("b", "l1");
  internal.add_edge("b", "l2");
  internal.set_label("l1", "x");
  internal.set_label("l2", "y");
  internal.set_label("b", "z");
  CHECK(code_of(internal) == ErrorCode::LabeledInternalNode);
}

TEST_CASE("from_parts collapses duplicate edges") {
  std::vector<std::string> names{"a", "l"};
  std::vector<std::string> labels{"", "t"};
  std::vector<Edge> edges{{0, 1}, {0, 1}};
  const Network net =
      Network::from_parts(std::move(names), std::move(labels), std::move(edges));
  CHECK(net.edge_count() == 1);
  CHECK(net.children(net.root()).size() == 1);
}

TEST_CASE("topological order puts parents before children") {
  Network net = parse_edge_list(
      "r\tv1\nr\tv2\nv1\ta\nv1\tx\nv2\tx\nv2\tb\nx\tc\n");
  const auto& topo = net.topological_order();
  std::vector<int> pos(net.node_count());
  for (std::size_t i = 0; i < topo.size(); ++i) pos[topo[i]] = static_cast<int>(i);
  for (const Edge& e : net.edges()) CHECK(pos[e.parent] < pos[e.child]);
  CHECK(topo.front() == net.root());
}

TEST_CASE("ancestor and dominator queries") {
  Network net = diamond();
  NodeId rho = net.root();
  NodeId v1 = *net.find_name("v1");
  NodeId r = *net.find_name("r");
  NodeId l3 = *net.find_taxon("l3");
  CHECK(is_ancestor(net, rho, l3));
  CHECK(is_ancestor(net, v1, r));
  CHECK_FALSE(is_ancestor(net, v1, *net.find_taxon("l2")));
  CHECK_FALSE(is_ancestor(net, l3, l3));  // strict

  CHECK(is_dominator(net, r, l3));
  CHECK_FALSE(is_dominator(net, v1, r));  // rho->v2->r avoids v1
  CHECK(is_dominator(net, rho, l3));
}

TEST_CASE("visibility: all nodes of the diamond, but not shared-parents") {
  Network net = diamond();
  auto vis = visible_nodes(net);
  CHECK(vis.size() == 7);  // every node dominates some leaf

  Network shared = parse_edge_list(
      "rho\tu1\nrho\tu2\nu1\tr1\nu1\tr2\nu2\tr1\nu2\tr2\nr1\tl1\nr2\tl2\n");
  auto vis2 = visible_nodes(shared);
  NodeId u1 = *shared.find_name("u1");
  NodeId u2 = *shared.find_name("u2");
  CHECK_FALSE(std::binary_search(vis2.begin(), vis2.end(), u1));
  CHECK_FALSE(std::binary_search(vis2.begin(), vis2.end(), u2));
  CHECK(std::binary_search(vis2.begin(), vis2.end(), shared.root()));
}

TEST_CASE("leaves_below and reachability") {
  Network net = diamond();
  NodeId v1 = *net.find_name("v1");
  CHECK(leaves_below(net, v1) == Cluster{"l1", "l3"});
  CHECK(leaves_below(net, *net.find_taxon("l2")) == Cluster{"l2"});

  auto mask = reachable_from(net, v1);
  CHECK(mask[v1]);
  CHECK(mask[*net.find_taxon("l3")]);
  CHECK_FALSE(mask[*net.find_name("v2")]);

  auto avoid = reachable_from_avoiding(net, net.root(), *net.find_name("r"));
  CHECK(avoid[*net.find_taxon("l1")]);
  CHECK_FALSE(avoid[*net.find_taxon("l3")]);
}

TEST_CASE("cluster construction sorts and deduplicates") {
  Cluster c = make_cluster({"pear", "apple", "pear", "fig"});
  CHECK(c == Cluster{"apple", "fig", "pear"});
}

TEST_CASE("taxon lookup, single and batched") {
  Network net = diamond();
  CHECK(net.find_taxon("l2").has_value());
  CHECK_FALSE(net.find_taxon("nope").has_value());
  auto ids = net.find_taxa(Cluster{"l1", "l3", "zz"});
  REQUIRE(ids.size() == 3);
  CHECK(ids[0] == *net.find_taxon("l1"));
  CHECK(ids[1] == *net.find_taxon("l3"));
  CHECK(ids[2] == kNoNode);
}
