#include <doctest.h>

#include <map>
#include <set>

#include "automorphism_oracle.hpp"
#include "cycle_space_oracle.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "stable_graph_oracle.hpp"

using namespace trop;
using fx::Rational;

namespace {

oracle::SmallGraph small_of(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  oracle::SmallGraph s{g.weights(), std::vector<std::vector<int>>(n, std::vector<int>(n, 0))};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) s.mult[a][b] = g.multiplicity(a, b);
  }
  return oracle::smallest_relabelling(s);
}

std::set<std::vector<bool>> orbit_of(const std::vector<bool>& c, const std::vector<oracle::Automorphism>& group) {
  std::set<std::vector<bool>> out;
  for (const auto& a : group) {
    std::vector<bool> image(c.size());
    for (std::size_t e = 0; e < c.size(); ++e) {
      if (c[e]) image[a.edge_perm[e]] = true;
    }
    out.insert(image);
  }
  return out;
}

const ConeComplexPoset& poset(int genus) {
  static std::map<int, ConeComplexPoset> cache;
  auto it = cache.find(genus);
  if (it == cache.end()) it = cache.emplace(genus, build_poset(genus)).first;
  return it->second;
}

}  // namespace

TEST_CASE("stable graphs match brute-force enumeration") {
  for (int genus : {2, 3}) {
    const auto graphs = enumerate_stable_graphs(genus);
    std::set<oracle::SmallGraph> mine;
    for (const auto& g : graphs) {
      CHECK(g.is_stable());
      CHECK(g.genus() == genus);
      mine.insert(small_of(g));
    }
    CHECK(mine.size() == graphs.size());
    CHECK(mine == oracle::stable_graphs(genus));
  }
  CHECK(enumerate_stable_graphs(2).size() == 7);
  CHECK(enumerate_stable_graphs(3).size() == 42);
}

TEST_CASE("enumeration limits") {
  CHECK_THROWS_AS(enumerate_stable_graphs(1), GraphError);
  CHECK_THROWS_AS(enumerate_stable_graphs(6), CapExceeded);
  CHECK_THROWS_AS(build_poset(0), GraphError);
}

TEST_CASE("strata are automorphism orbits of the cycle space") {
  for (int genus : {2, 3}) {
    const auto& ps = poset(genus);
    std::size_t expected_total = 0;
    for (std::size_t i = 0; i < ps.graphs.size(); ++i) {
      const auto& g = ps.graphs[i];
      const auto group = oracle::automorphisms(g);
      const auto cycles = oracle::cycle_space(g);
      const std::size_t orbits = oracle::cycle_orbit_count(cycles, group);
      expected_total += orbits;
      CHECK(ps.graph_aut_order[i] == group.size());

      std::size_t count = 0;
      for (const auto& s : ps.strata) {
        if (s.graph_index != i) continue;
        ++count;
        CHECK(s.cone_dim == g.num_edges());
        const auto bits = oracle::bits_of(s.cycle);
        const auto orbit = orbit_of(bits, group);
        CHECK(*orbit.begin() == bits);  // representative is the orbit minimum
        CHECK(group.size() % orbit.size() == 0);
        CHECK(s.aut_order == group.size() / orbit.size());
        std::size_t stabiliser = 0;
        for (const auto& a : group) {
          if (orbit_of(bits, {a}) == std::set<std::vector<bool>>{bits}) ++stabiliser;
        }
        CHECK(s.aut_order == stabiliser);
      }
      CHECK(count == orbits);
    }
    CHECK(ps.strata.size() == expected_total);
  }
  CHECK(poset(2).strata.size() == 14);
  CHECK(poset(3).strata.size() == 142);
}

TEST_CASE("genus two examples") {
  const auto& ps = poset(2);
  auto index_of = [&](const WeightedGraph& g) {
    for (std::size_t i = 0; i < ps.graphs.size(); ++i) {
      if (are_isomorphic(ps.graphs[i], g)) return i;
    }
    FAIL("graph not found");
    return std::size_t{0};
  };
  auto strata_on = [&](std::size_t i) {
    std::size_t n = 0;
    for (const auto& s : ps.strata) n += s.graph_index == i;
    return n;
  };
  CHECK(strata_on(index_of(fx::theta_graph())) == 2);
  CHECK(strata_on(index_of(fx::dumbbell_graph())) == 3);
  CHECK(strata_on(index_of(fx::single_vertex(2))) == 1);
  CHECK(ps.maximal_strata().size() == 5);
  CHECK(ps.covers.size() == 21);
  CHECK(ps.is_connected());
}

TEST_CASE("cover relations come from single edge contractions") {
  for (int genus : {2, 3}) {
    const auto& ps = poset(genus);
    std::set<std::pair<std::size_t, std::size_t>> expected;
    for (std::size_t up = 0; up < ps.strata.size(); ++up) {
      const auto& s = ps.strata[up];
      const auto& g = ps.graphs[s.graph_index];
      for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
        const std::vector<EdgeIndex> one{e};
        const auto c = contract(g, one);
        const auto pushed = c.push_forward(s.cycle);
        const auto canon = canonical_form(c.graph);
        std::size_t j = ps.graphs.size();
        for (std::size_t k = 0; k < ps.graphs.size(); ++k) {
          if (ps.graphs[k] == canon.graph) j = k;
        }
        REQUIRE(j < ps.graphs.size());
        std::vector<bool> bits(canon.graph.num_edges());
        for (EdgeIndex x : pushed.edges()) bits[canon.edge_map[x]] = true;
        const auto orbit = orbit_of(bits, oracle::automorphisms(ps.graphs[j]));
        std::size_t low = ps.strata.size();
        for (std::size_t k = 0; k < ps.strata.size(); ++k) {
          if (ps.strata[k].graph_index == j && orbit.count(oracle::bits_of(ps.strata[k].cycle))) low = k;
        }
        REQUIRE(low < ps.strata.size());
        expected.insert({up, low});
      }
    }
    const std::set<std::pair<std::size_t, std::size_t>> got(ps.covers.begin(), ps.covers.end());
    CHECK(got == expected);
    CHECK(got.size() == ps.covers.size());
  }
}

TEST_CASE("poset shape") {
  for (int genus : {2, 3, 4}) {
    const auto& ps = poset(genus);
    CHECK(ps.is_connected());
    std::size_t top = 0;
    for (const auto& s : ps.strata) top = std::max(top, s.cone_dim);
    CHECK(top == static_cast<std::size_t>(3 * genus - 3));
    for (std::size_t m : ps.maximal_strata()) CHECK(ps.strata[m].cone_dim == top);
    for (const auto& [up, low] : ps.covers) CHECK(ps.strata[up].cone_dim == ps.strata[low].cone_dim + 1);
    // the one-vertex graph is the unique minimum and carries only P = 0
    std::size_t minimal = 0;
    for (const auto& s : ps.strata) minimal += s.cone_dim == 0;
    CHECK(minimal == 1);
    // every graph carries the P = 0 stratum
    std::vector<bool> has_zero(ps.graphs.size(), false);
    for (const auto& s : ps.strata) {
      if (s.cycle.is_zero()) has_zero[s.graph_index] = true;
    }
    CHECK(std::all_of(has_zero.begin(), has_zero.end(), [](bool b) { return b; }));
  }
  CHECK(poset(4).graphs.size() == 379);
  CHECK(poset(4).strata.size() == 2187);
}

TEST_CASE("find_stratum locates orbit members") {
  const auto& ps = poset(2);
  for (std::size_t i = 0; i < ps.graphs.size(); ++i) {
    for (const auto& p : enumerate_cyclic_subgraphs(ps.graphs[i])) {
      const auto s = find_stratum(ps, i, p);
      REQUIRE(s < ps.strata.size());
      CHECK(ps.strata[s].graph_index == i);
      CHECK(orbit_of(oracle::bits_of(p), oracle::automorphisms(ps.graphs[i])).count(oracle::bits_of(ps.strata[s].cycle)));
    }
  }
}

TEST_CASE("dot output lists every cover") {
  const auto& ps = poset(2);
  const auto dot = to_dot(ps);
  CHECK(dot.rfind("digraph", 0) == 0);
  std::size_t arrows = 0;
  for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 2)) ++arrows;
  CHECK(arrows == ps.covers.size());
}

TEST_CASE("doubling lengths off P") {
  const auto c = fx::theta_curve(1, 1, 1);
  const auto p = fx::cycle(c.graph(), {"a", "b"});
  const auto d = psi_trop(c, p);
  CHECK(d.lengths() == std::vector<Rational>{1, 1, 2});
  CHECK(psi_trop(c, CyclicSubgraph::zero(3)).lengths() == std::vector<Rational>{2, 2, 2});
}

TEST_CASE("fiber counts of the doubling map") {
  CHECK(psi_fiber_count(fx::theta_curve(1, 1, 1)) == 2);
  CHECK(psi_fiber_count(fx::theta_curve(1, 2, 3)) == 4);
  CHECK(psi_fiber_count(fx::dumbbell_curve(1, 1, 1)) == 3);
  CHECK(psi_fiber_count(fx::dumbbell_curve(1, 1, 2)) == 4);
}

TEST_CASE("property: fiber counts agree with length-preserving automorphism orbits") {
  gen::Rng rng(51);
  for (int i = 0; i < 25; ++i) {
    const auto c = gen::curve(rng, 3, 3);
    const auto& g = c.graph();
    if (g.num_edges() > 6) continue;
    std::vector<oracle::Automorphism> group;
    for (const auto& a : oracle::automorphisms(g)) {
      bool keeps = true;
      for (EdgeIndex e = 0; e < g.num_edges(); ++e) keeps = keeps && c.length(e) == c.length(a.edge_perm[e]);
      if (keeps) group.push_back(a);
    }
    CHECK(psi_fiber_count(c) == oracle::cycle_orbit_count(oracle::cycle_space(g), group));
  }
}

TEST_CASE("genus five poset is connected") {
  const auto ps = build_poset(5);
  // published counts of stable graphs: 7, 42, 379, 4555 for genus 2..5
  CHECK(ps.graphs.size() == 4555);
  CHECK(ps.is_connected());
  for (std::size_t m : ps.maximal_strata()) CHECK(ps.strata[m].cone_dim == 12);
}
