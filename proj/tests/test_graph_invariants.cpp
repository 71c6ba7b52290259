#include <doctest.h>

#include <json.hpp>

#include "x0p2/dual_graph.hpp"
#include "x0p2/fiber_model.hpp"
#include "x0p2/graph_invariants.hpp"
#include "x0p2/primes.hpp"

using namespace x0p2;

namespace {

MetrizedGraph cycle(const std::vector<Rational>& lengths) {
  MetrizedGraph g;
  const int n = static_cast<int>(lengths.size());
  for (int i = 0; i < n; ++i) g.vertices.push_back({"v" + std::to_string(i), 0});
  for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n, lengths[i]});
  return g;
}

MetrizedGraph path(const std::vector<Rational>& lengths) {
  MetrizedGraph g;
  const int n = static_cast<int>(lengths.size());
  for (int i = 0; i <= n; ++i) g.vertices.push_back({"v" + std::to_string(i), 0});
  for (int i = 0; i < n; ++i) g.edges.push_back({i, i + 1, lengths[i]});
  return g;
}

// replaces every edge by two halves through a fresh genus-0 vertex; tau,
// theta and the resistances between original vertices must not move
MetrizedGraph subdivide(const MetrizedGraph& g) {
  MetrizedGraph out;
  out.vertices = g.vertices;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    const int mid = static_cast<int>(out.vertices.size());
    out.vertices.push_back({"mid" + std::to_string(i), 0});
    out.edges.push_back({e.u, mid, e.length / Rational(2)});
    out.edges.push_back({mid, e.v, e.length / Rational(2)});
  }
  return out;
}

MetrizedGraph scale(const MetrizedGraph& g, const Rational& f) {
  MetrizedGraph out = g;
  for (auto& e : out.edges) e.length *= f;
  return out;
}

}  // namespace

TEST_CASE("tau closed forms on model graphs") {
  CHECK(tau_constant(cycle({Rational(1), Rational(1), Rational(3)})) ==
        Rational(5, 12));
  CHECK(tau_constant(cycle({Rational(1), Rational(1), Rational(1)})) ==
        Rational(1, 4));
  CHECK(tau_constant(path({Rational(3), Rational(4)})) == Rational(7, 4));

  MetrizedGraph loop;
  loop.vertices = {{"a", 0}};
  loop.edges = {{0, 0, Rational(6)}};
  CHECK(tau_constant(loop) == Rational(1, 2));

  // bridge of length 1 into a doubled edge of lengths 1, 1
  MetrizedGraph bp;
  bp.vertices = {{"a", 0}, {"b", 0}, {"c", 0}};
  bp.edges = {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {1, 2, Rational(1)}};
  CHECK(tau_constant(bp) == Rational(5, 12));

  MetrizedGraph empty_graph;
  empty_graph.vertices = {{"a", 3}};
  CHECK(tau_constant(empty_graph) == Rational(0));
}

TEST_CASE("tau is independent of the reference vertex") {
  for (long p : {11L, 17L, 23L, 37L}) {
    const MetrizedGraph g = dual_graph(minimal_model(p));
    const Rational t0 = tau_constant(g, 0);
    for (int q = 1; q < static_cast<int>(g.vertices.size()); ++q)
      CHECK(tau_constant(g, q) == t0);
  }
  CHECK_THROWS_AS(tau_constant(cycle({Rational(1), Rational(1), Rational(1)}), 5),
                  std::invalid_argument);
}

TEST_CASE("tau and theta pinned values on the fiber graphs") {
  CHECK(tau_constant(dual_graph(minimal_model(11))) == Rational(155, 36));
  CHECK(tau_constant(dual_graph(minimal_model(17))) == Rational(146, 27));
  CHECK(tau_constant(dual_graph(minimal_model(19))) == Rational(91, 20));
  CHECK(tau_constant(dual_graph(minimal_model(23))) == Rational(97, 11));
  CHECK(tau_constant(dual_graph(minimal_model(37))) == Rational(2347, 342));

  CHECK(theta_tilde(dual_graph(minimal_model(11))) == Rational(100));
  CHECK(theta_tilde(dual_graph(minimal_model(17))) == Rational(848));
  CHECK(theta_tilde(dual_graph(minimal_model(19))) == Rational(1332));
  CHECK(theta_tilde(dual_graph(minimal_model(23))) == Rational(5968));
  CHECK(theta_tilde(dual_graph(minimal_model(37))) == Rational(26660));
}

TEST_CASE("subdivision leaves tau, theta and resistance unchanged") {
  for (long p : {11L, 17L, 19L}) {
    const MetrizedGraph g = dual_graph(minimal_model(p));
    const MetrizedGraph h = subdivide(g);
    CHECK(tau_constant(h) == tau_constant(g));
    CHECK(theta_tilde(h) == theta_tilde(g));
    CHECK(effective_resistance(h, 0, 1) == effective_resistance(g, 0, 1));
  }
}

TEST_CASE("scaling lengths scales tau, theta and resistance linearly") {
  const MetrizedGraph g = dual_graph(minimal_model(17));
  const Rational f(7, 3);
  const MetrizedGraph h = scale(g, f);
  CHECK(tau_constant(h) == f * tau_constant(g));
  CHECK(theta_tilde(h) == f * theta_tilde(g));
  CHECK(effective_resistance(h, 1, 3) == f * effective_resistance(g, 1, 3));
}

TEST_CASE("effective resistance: series, parallel, triangle") {
  CHECK(effective_resistance(path({Rational(3), Rational(4)}), 0, 2) ==
        Rational(7));
  MetrizedGraph par;
  par.vertices = {{"a", 0}, {"b", 0}};
  par.edges = {{0, 1, Rational(1)}, {0, 1, Rational(1)}};
  CHECK(effective_resistance(par, 0, 1) == Rational(1, 2));
  const MetrizedGraph tri = cycle({Rational(1), Rational(1), Rational(1)});
  CHECK(effective_resistance(tri, 0, 1) == Rational(2, 3));

  const ResistanceKernel k(tri);
  CHECK(k.form(0, 1, 0, 1) == k.resistance(0, 1));
  CHECK(k.resistance(0, 1) == k.resistance(1, 0));
  CHECK(k.resistance(2, 2) == Rational(0));
}

TEST_CASE("bridge detection") {
  MetrizedGraph bp;
  bp.vertices = {{"a", 0}, {"b", 0}, {"c", 0}};
  bp.edges = {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {1, 2, Rational(1)},
              {2, 2, Rational(1)}};
  const auto b = bridge_edges(bp);
  REQUIRE(b.size() == 4);
  CHECK(b[0]);
  CHECK(!b[1]);
  CHECK(!b[2]);
  CHECK(!b[3]);

  const auto pb = bridge_edges(path({Rational(1), Rational(2)}));
  CHECK(pb == std::vector<bool>({true, true}));

  for (const bool flag : bridge_edges(dual_graph(minimal_model(17))))
    CHECK(!flag);
}

TEST_CASE("vertex weights sum to 2 genus(graph) - 2") {
  for (long p : {13L, 17L, 23L, 37L}) {
    const MetrizedGraph g = dual_graph(minimal_model(p));
    long sum = 0;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v)
      sum += vertex_weight(g, v);
    CHECK(sum == 2 * graph_genus(g) - 2);
  }
}

TEST_CASE("theta vanishes when all weights do") {
  CHECK(theta_tilde(cycle({Rational(2), Rational(5), Rational(1)})) ==
        Rational(0));
}

TEST_CASE("shortest path bounds resistance") {
  const MetrizedGraph g = dual_graph(minimal_model(11));
  const int c20 = g.vertex("c20");
  const int c02 = g.vertex("c02");
  CHECK(shortest_path(g, c20, c02) == Rational(20));
  for (int x = 0; x < 4; ++x)
    for (int y = x + 1; y < 4; ++y)
      CHECK(effective_resistance(g, x, y) <= shortest_path(g, x, y));
}

TEST_CASE("bound quantities spot values") {
  const MetrizedGraph g = dual_graph(minimal_model(19));
  const BoundQuantities bq = bound_quantities(g, 19, genus_oracle(19));
  CHECK(bq.q_tau == Rational(637, 145200));
  CHECK(bq.q_theta == Rational(37, 4840));
}

TEST_CASE("invariants json shape") {
  const MetrizedGraph g = dual_graph(minimal_model(17));
  const auto j = nlohmann::json::parse(invariants_json(g));
  CHECK(j["l"] == "72");
  CHECK(j["betti1"] == 3);
  CHECK(j["tau"] == "146/27");
  CHECK(j["theta_tilde"] == "848");
  CHECK(j["resistance"].size() == 15);
  CHECK(!j.contains("theta_tilde_unordered"));

  const auto jv = nlohmann::json::parse(invariants_json(g, true));
  CHECK(jv["theta_tilde_unordered"] == "424");
  CHECK(jv["vertices"].size() == 6);
}
