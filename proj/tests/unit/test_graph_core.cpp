#include <doctest.h>

#include <set>

#include "automorphism_oracle.hpp"
#include "cycle_space_oracle.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace trop;

TEST_CASE("genus") {
  CHECK(fx::theta_graph().genus() == 2);
  CHECK(fx::single_vertex(2).genus() == 2);
  CHECK(fx::dumbbell_graph().genus() == 2);
}

TEST_CASE("stability") {
  CHECK(fx::theta_graph().is_stable());
  CHECK_FALSE(WeightedGraph({{"u", 0}, {"v", 0}}, {{"e", "u", "v"}}).is_stable());
  CHECK_FALSE(fx::single_vertex(1).is_stable());
  // a loop counts twice in the degree
  CHECK(WeightedGraph({{"v", 1}}, {{"l", "v", "v"}}).is_stable());
}

TEST_CASE("graph construction rejects bad input") {
  CHECK_THROWS_AS(WeightedGraph({{"u", 0}, {"u", 1}}, {}), GraphError);
  CHECK_THROWS_AS(WeightedGraph({{"u", -1}}, {}), GraphError);
  CHECK_THROWS_AS(WeightedGraph({{"u", 0}}, {{"e", "u", "x"}}), GraphError);
  CHECK_THROWS_AS(WeightedGraph({{"u", 0}, {"v", 0}}, {}), GraphError);
  CHECK_THROWS_AS(WeightedGraph({{"u", 0}, {"v", 0}}, {{"e", "u", "v"}, {"e", "u", "v"}}), GraphError);
}

TEST_CASE("cycle space basis") {
  const auto theta = fx::theta_graph();
  const auto basis = cycle_space_basis(theta);
  REQUIRE(basis.size() == 2);
  for (const auto& b : basis) CHECK(b.size() == 2);

  const WeightedGraph tree({{"a", 1}, {"b", 0}, {"c", 2}}, {{"x", "a", "b"}, {"y", "b", "c"}});
  CHECK(cycle_space_basis(tree).empty());

  const auto db = fx::dumbbell_graph();
  const auto dbasis = cycle_space_basis(db);
  REQUIRE(dbasis.size() == 2);
  std::set<std::vector<bool>> got;
  for (const auto& b : dbasis) got.insert(oracle::bits_of(b));
  // the brute-force kernel has exactly the loops as its non-zero 1-element sets
  std::set<std::vector<bool>> singletons;
  for (const auto& c : oracle::cycle_space(db)) {
    if (std::count(c.begin(), c.end(), true) == 1) singletons.insert(c);
  }
  CHECK(got == singletons);
}

TEST_CASE("cycle space enumeration matches brute force") {
  auto check = [](const WeightedGraph& g) {
    const auto all = enumerate_cyclic_subgraphs(g);
    std::set<std::vector<bool>> got;
    for (const auto& c : all) got.insert(oracle::bits_of(c));
    const auto expected = oracle::cycle_space(g);
    CHECK(got.size() == all.size());
    CHECK(got == std::set<std::vector<bool>>(expected.begin(), expected.end()));
    CHECK(all.size() == (std::size_t{1} << g.first_betti_number()));
    CHECK(all.front().is_zero());
  };
  check(fx::theta_graph());
  check(fx::dumbbell_graph());
  check(WeightedGraph({{"a", 1}, {"b", 1}}, {{"x", "a", "b"}}));

  // theta graph: {0, ab, ac, bc}
  const auto theta = fx::theta_graph();
  std::set<std::vector<bool>> named;
  for (auto ids : std::vector<std::vector<std::string>>{{}, {"a", "b"}, {"a", "c"}, {"b", "c"}}) {
    named.insert(oracle::bits_of(fx::cycle(theta, ids)));
  }
  std::set<std::vector<bool>> got;
  for (const auto& c : enumerate_cyclic_subgraphs(theta)) got.insert(oracle::bits_of(c));
  CHECK(got == named);
}

TEST_CASE("enumeration order follows basis coordinates") {
  const auto g = fx::dumbbell_graph();
  const auto basis = cycle_space_basis(g);
  const auto all = enumerate_cyclic_subgraphs(g);
  CHECK(all[1] == basis[1]);
  CHECK(all[2] == basis[0]);
  CHECK(all[3] == basis[0] + basis[1]);
}

TEST_CASE("cycle space size cap") {
  std::vector<std::pair<VertexIndex, VertexIndex>> loops(6, {0, 0});
  const auto g = WeightedGraph::from_indices({0}, loops);
  CHECK_THROWS_AS(enumerate_cyclic_subgraphs(g, 5), CapExceeded);
  CHECK(enumerate_cyclic_subgraphs(g, 6).size() == 64);
}

TEST_CASE("non-cyclic edge sets are rejected") {
  const auto g = fx::theta_graph();
  EdgeBits bits(3);
  bits.set(0);
  CHECK_FALSE(CyclicSubgraph::try_from_bits(g, bits).has_value());
  CHECK_THROWS_AS(CyclicSubgraph::from_bits(g, bits), GraphError);
}

TEST_CASE("contract one edge of the theta graph") {
  const auto g = fx::theta_graph();
  const EdgeIndex a[] = {*g.find_edge("a")};
  const auto c = contract(g, a);
  CHECK(c.graph.num_vertices() == 1);
  CHECK(c.graph.num_edges() == 2);
  CHECK(c.graph.weight(0) == 0);
  CHECK(c.graph.multiplicity(0, 0) == 2);
  const auto image = c.push_forward(fx::cycle(g, {"a", "b"}));
  CHECK(image.size() == 1);
  CHECK(image.contains(*c.edge_map[*g.find_edge("b")]));
}

TEST_CASE("contract a loop and the empty set") {
  const auto g = fx::dumbbell_graph();
  const EdgeIndex a[] = {*g.find_edge("a")};
  const auto c = contract(g, a);
  CHECK(c.graph.weight(*c.graph.find_vertex("u")) == 1);
  CHECK(c.graph.num_edges() == 2);
  CHECK(c.graph.genus() == 2);

  const auto id = contract(g, std::span<const EdgeIndex>{});
  CHECK(id.graph == g);
}

TEST_CASE("subdivision") {
  const auto g = fx::theta_graph();
  const EdgeIndex all[] = {0, 1, 2};
  const auto s = subdivide(g, all);
  CHECK(s.graph.num_vertices() == 5);
  CHECK(s.graph.num_edges() == 6);
  CHECK(s.graph.genus() == g.genus());

  CHECK(subdivide(g, std::span<const EdgeIndex>{}).graph == g);

  const auto loop = WeightedGraph({{"v", 1}}, {{"l", "v", "v"}});
  const EdgeIndex l[] = {0};
  const auto sl = subdivide(loop, l);
  CHECK(sl.graph.num_vertices() == 2);
  CHECK(sl.graph.multiplicity(0, 1) == 2);
  CHECK(sl.parent_edge == std::vector<EdgeIndex>{0, 0});
}

namespace {

void check_against_oracle(const WeightedGraph& g) {
  const auto lib = automorphisms(g);
  const auto brute = oracle::automorphisms(g);
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> a, b;
  for (const auto& x : lib) a.emplace(x.vertex_perm, x.edge_perm);
  for (const auto& x : brute) b.emplace(x.vertex_perm, x.edge_perm);
  CHECK(a.size() == lib.size());
  CHECK(a == b);
}

}  // namespace

TEST_CASE("automorphism groups") {
  CHECK(automorphisms(fx::theta_graph()).size() == 12);
  CHECK(automorphisms(fx::dumbbell_graph()).size() == 2);
  const WeightedGraph asym({{"a", 1}, {"b", 0}, {"c", 0}}, {{"x", "a", "b"}, {"y", "b", "c"}, {"l", "c", "c"}});
  CHECK(automorphisms(asym).size() == 1);

  check_against_oracle(fx::theta_graph());
  check_against_oracle(fx::dumbbell_graph());
  check_against_oracle(asym);
  gen::Rng rng(7);
  for (int i = 0; i < 25; ++i) {
    const auto g = gen::graph(rng, 4, 3, 1);
    if (g.num_edges() <= 6) check_against_oracle(g);
  }
}

TEST_CASE("automorphism group limits") {
  std::vector<std::pair<VertexIndex, VertexIndex>> ends(9, {0, 1});
  const auto g = WeightedGraph::from_indices({0, 0}, ends);
  CHECK_THROWS_AS(automorphisms(g, AutomorphismLimits{24, 1000}), CapExceeded);
}

TEST_CASE("stabiliser of a cyclic subgraph") {
  const auto g = fx::theta_graph();
  const auto p = fx::cycle(g, {"a", "b"});
  const auto stab = aut_fixing(g, p);
  CHECK(stab.size() == 4);
  for (const auto& a : stab) CHECK(a.apply(g, p) == p);
}

TEST_CASE("orbit representatives") {
  const auto theta = fx::theta_graph();
  CHECK(cycle_orbit_representatives(theta, automorphisms(theta)).size() == 2);
  const auto db = fx::dumbbell_graph();
  CHECK(cycle_orbit_representatives(db, automorphisms(db)).size() == 3);
}

TEST_CASE("canonical form detects isomorphism") {
  gen::Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    const auto g = gen::graph(rng, 5, 5, 2);
    // shuffle ids: rebuild with permuted vertex order and edge order
    std::vector<std::size_t> vp(g.num_vertices());
    std::iota(vp.begin(), vp.end(), 0);
    std::shuffle(vp.begin(), vp.end(), rng);
    std::vector<VertexSpec> vs;
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) vs.push_back({"n" + std::to_string(vp[v]), g.weight(v)});
    std::vector<EdgeSpec> es;
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
      const auto& ed = g.edge(e);
      es.push_back({"f" + std::to_string(1000 - e), "n" + std::to_string(vp[ed.v]), "n" + std::to_string(vp[ed.u])});
    }
    const WeightedGraph h(vs, es);
    CHECK(are_isomorphic(g, h));
    CHECK(canonical_form(g).graph == canonical_form(h).graph);
  }
  CHECK_FALSE(are_isomorphic(fx::theta_graph(), fx::dumbbell_graph()));
  CHECK_FALSE(are_isomorphic(fx::theta_graph(0, 0), fx::theta_graph(0, 1)));
}

TEST_CASE("canonical edge map is an isomorphism onto the canonical graph") {
  gen::Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    const auto g = gen::graph(rng, 5, 5, 1);
    const auto cf = canonical_form(g);
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
      const auto& from = g.edge(e);
      const auto& to = cf.graph.edge(cf.edge_map[e]);
      CHECK(std::minmax(cf.vertex_map[from.u], cf.vertex_map[from.v]) == std::minmax(to.u, to.v));
    }
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) CHECK(cf.graph.weight(cf.vertex_map[v]) == g.weight(v));
  }
}

// ---------------------------------------------------------------- properties

TEST_CASE("property: cyclic subgraphs have even degree everywhere") {
  gen::Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto g = gen::graph(rng, 5, 5, 1);
    for (const auto& c : enumerate_cyclic_subgraphs(g)) {
      for (VertexIndex v = 0; v < g.num_vertices(); ++v) CHECK(c.degree_at(g, v) % 2 == 0);
    }
  }
}

TEST_CASE("property: cycle space is closed under symmetric difference") {
  gen::Rng rng(2);
  for (int i = 0; i < 30; ++i) {
    const auto g = gen::graph(rng, 4, 4, 1);
    const auto all = enumerate_cyclic_subgraphs(g);
    std::set<CyclicSubgraph> members(all.begin(), all.end());
    CHECK(members.size() == all.size());
    for (const auto& a : all) {
      for (const auto& b : all) CHECK(members.count(a + b) == 1);
    }
  }
}

TEST_CASE("property: contraction preserves genus, push-forward is a surjective homomorphism") {
  gen::Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const auto g = gen::graph(rng, 4, 3, 1);
    const std::size_t m = g.num_edges();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      std::vector<EdgeIndex> s;
      for (EdgeIndex e = 0; e < m; ++e) {
        if ((mask >> e) & 1) s.push_back(e);
      }
      const auto c = contract(g, s);
      CHECK(c.graph.genus() == g.genus());
      const auto source = enumerate_cyclic_subgraphs(g);
      std::set<CyclicSubgraph> image;
      for (const auto& a : source) {
        image.insert(c.push_forward(a));
        for (const auto& b : source) CHECK(c.push_forward(a + b) == c.push_forward(a) + c.push_forward(b));
      }
      CHECK(image.size() == (std::size_t{1} << c.graph.first_betti_number()));
    }
  }
}

TEST_CASE("property: automorphisms form a group") {
  gen::Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto g = gen::graph(rng, 4, 4, 1);
    const auto group = automorphisms(g);
    std::set<GraphAutomorphism> members(group.begin(), group.end());
    bool has_identity = false;
    for (const auto& a : group) {
      has_identity = has_identity || a.is_identity();
      CHECK(members.count(a.inverse()) == 1);
      CHECK(a.then(a.inverse()).is_identity());
      for (const auto& b : group) CHECK(members.count(a.then(b)) == 1);
    }
    CHECK(has_identity);
  }
}
