#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "phylo/classify.hpp"
#include "phylo/cluster_containment.hpp"
#include "phylo/compression.hpp"
#include "phylo/enewick.hpp"
#include "phylo/generators.hpp"
#include "phylo/oracle.hpp"

using namespace phylo;

namespace {

const char* kD1 = "rho\tv1\nrho\tv2\nv1\tl1\nv1\tr\nv2\tr\nv2\tl2\nr\tl3\n";
const char* kN1 =
    "rho\ta\nrho\tb\na\tl1\na\tr1\nb\tr1\nb\tc\nc\tl2\nc\tr2\nr1\tr2\nr2\tl3\n";

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::SyntaxError;  // placeholder, never expected
}

}  // namespace

TEST_CASE("chain network: who displays {l2,l3}") {
  Network net = parse_edge_list(kN1);
  NodeId c = *net.find_name("c");
  NodeId a = *net.find_name("a");

  SccConditions at_c = solve_scc_detailed(net, {c, {"l2", "l3"}});
  CHECK(at_c.purple_free);
  REQUIRE(at_c.nprime.has_value());
  CHECK(*at_c.nprime);
  REQUIRE(at_c.ndouble.has_value());
  CHECK(*at_c.ndouble);
  CHECK(at_c.answer);

  SccConditions at_a = solve_scc_detailed(net, {a, {"l2", "l3"}});
  CHECK_FALSE(at_a.answer);
  CHECK_FALSE(*at_a.nprime);  // l2 is not below f(a)'s image subtree at a

  CHECK(solve_scc(net, {c, {"l2", "l3"}}));
  CHECK_FALSE(solve_scc(net, {a, {"l2", "l3"}}));
}

TEST_CASE("cc scans tree nodes deepest-first") {
  Network net = parse_edge_list(kN1);
  auto hit = solve_cc(net, {"l2", "l3"});
  REQUIRE(hit.has_value());
  CHECK(net.name(*hit) == "c");

  CHECK(solve_cc(net, {"l1", "l2", "l3"}).has_value());  // the root displays X
  CHECK_FALSE(solve_cc(net, {"l1", "l3"}).has_value());

  auto single = solve_cc(net, {"l3"});
  REQUIRE(single.has_value());
  CHECK(oracle_scc(net, *single, {"l3"}));
}

TEST_CASE("exposed-component shortcut agrees with the full solver") {
  Network net = parse_edge_list(kD1);
  Decomposition d = decompose(net);
  NodeId v1 = *net.find_name("v1");
  CHECK(solve_scc_exposed(net, {v1, {"l1", "l3"}}, d));
  CHECK(solve_scc_exposed(net, {v1, {"l1"}}, d));
  CHECK_FALSE(solve_scc_exposed(net, {v1, {"l3"}}, d));  // l1 always follows v1
  CHECK_FALSE(solve_scc_exposed(net, {v1, {"l2"}}, d));

  for (const Cluster& s :
       {Cluster{"l1"}, Cluster{"l1", "l3"}, Cluster{"l3"}, Cluster{"l2"}}) {
    CHECK(solve_scc_exposed(net, {v1, s}, d) == solve_scc(net, {v1, s}));
    CHECK(solve_scc(net, {v1, s}) == oracle_scc(net, v1, s));
  }
}

TEST_CASE("auxiliary networks are inspectable") {
  Network net = parse_edge_list(kN1);
  NodeId c = *net.find_name("c");
  SccInstance inst{c, {"l2", "l3"}};
  CompressionResult cr = compress(net);
  Coloring col = color_compression(net, inst, cr);
  CHECK_FALSE(col.any_purple);

  NPrime np = build_n_prime(net, inst, cr, col);
  CHECK(np.size() > 0);
  CHECK(n_prime_displays(np));

  NDoublePrime nd = build_n_double_prime(net, inst, cr, col);
  CHECK(nd.root == cr.compressed.root());
}

TEST_CASE("precondition errors carry their codes") {
  Network net = parse_edge_list(kN1);
  NodeId c = *net.find_name("c");
  NodeId r1 = *net.find_name("r1");

  CHECK(code_of([&] { solve_scc(net, {r1, {"l2"}}); }) ==
        ErrorCode::NotTreeNode);
  CHECK(code_of([&] { solve_scc(net, {c, {}}); }) == ErrorCode::EmptyCluster);
  CHECK(code_of([&] { solve_scc(net, {c, {"ghost"}}); }) ==
        ErrorCode::UnknownTaxon);
  CHECK(code_of([&] { solve_cc(net, {}); }) == ErrorCode::EmptyCluster);

  Network redundant = parse_enewick("((a)x,b);");
  CHECK(code_of([&] {
          solve_scc(redundant, {redundant.root(), {"a"}});
        }) == ErrorCode::HasRedundantNodes);

  Network deep = parse_edge_list(
      "rho\tp1\nrho\tp2\np1\tra\np1\trb\np2\tra\np2\trb\nra\tt1\nrb\tt2\n"
      "t1\tr1\nt1\tr2\nt2\tr1\nt2\tr2\nr1\tl1\nr2\tl2\n");
  REQUIRE_FALSE(is_quasi_reticulation_visible(deep));
  CHECK(code_of([&] { solve_scc(deep, {deep.root(), {"l1"}}); }) ==
        ErrorCode::NotQuasiRV);
}

TEST_CASE("solver matches the oracle on every query of small instances") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    GenSpec spec;
    spec.leaves = 3 + static_cast<int>(seed % 4);
    spec.reticulations = static_cast<int>(seed % 4);
    spec.target = ClassTarget::QuasiRV;
    spec.seed = seed * 523;
    Network net = generate(spec);

    const auto& taxa = net.taxa();
    const int n_taxa = static_cast<int>(taxa.size());
    for (NodeId u = 0; u < net.node_count(); ++u) {
      if (net.kind(u) != NodeKind::Tree) continue;
      for (int mask = 1; mask < (1 << n_taxa); ++mask) {
        Cluster s;
        for (int i = 0; i < n_taxa; ++i)
          if (mask & (1 << i)) s.push_back(taxa[i]);
        bool got = solve_scc(net, {u, s});
        bool want = oracle_scc(net, u, s);
        CHECK(got == want);
        ++checked;
      }
    }
  }
  CHECK(checked > 2000);
}

TEST_CASE("cc agrees with oracle over all nodes") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    GenSpec spec;
    spec.leaves = 4;
    spec.reticulations = 1 + static_cast<int>(seed % 3);
    spec.target = ClassTarget::QuasiRV;
    spec.seed = seed * 1013;
    Network net = generate(spec);

    const auto& taxa = net.taxa();
    for (int mask = 1; mask < (1 << 4); ++mask) {
      Cluster s;
      for (int i = 0; i < 4; ++i)
        if (mask & (1 << i)) s.push_back(taxa[i]);
      auto hit = solve_cc(net, s);
      bool any = false;
      for (NodeId u = 0; u < net.node_count() && !any; ++u)
        if (net.kind(u) == NodeKind::Tree && oracle_scc(net, u, s)) any = true;
      CHECK(hit.has_value() == any);
      if (hit) CHECK(oracle_scc(net, *hit, s));
    }
  }
}

TEST_CASE("clusters arrive unsorted and with duplicates") {
  Network net = parse_edge_list(kN1);
  NodeId c = *net.find_name("c");
  CHECK(solve_scc(net, {c, {"l3", "l2", "l3"}}));
  auto hit = solve_cc(net, {"l3", "l2"});
  REQUIRE(hit.has_value());
  CHECK(net.name(*hit) == "c");
}
