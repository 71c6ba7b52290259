#pragma once

#include <string>
#include <vector>

#include "x0p2/fiber_model.hpp"
#include "x0p2/rational.hpp"

namespace x0p2 {

struct DualVertex {
  std::string label;  // lowercased component id
  long genus = 0;
};

struct DualEdge {
  int u = 0;
  int v = 0;
  Rational length;  // nodes along the collapsed path, one unit each
};

// Dual metrized graph of a special fiber: a vertex per surviving component,
// an edge per node. Genus-0 valence-2 vertices are spliced into their
// through-path (lengths add); the cusp-bearing C20/C02 always survive, since
// the horizontal cusp sections land on them.
class MetrizedGraph {
 public:
  std::vector<DualVertex> vertices;
  std::vector<DualEdge> edges;

  int vertex(const std::string& label) const;  // -1 when absent
  long valence(int v) const;                   // self-loops count twice
  Rational total_length() const;
  int betti1() const;
  bool connected() const;
};

MetrizedGraph dual_graph(const FiberModel& m);

// Genus of X_0(p^2) from the index and elliptic-point counts:
// g = 1 + p(p+1)/12 - nu2/4 - nu3/3 - (p+1)/2, nu2 = 2 iff p = 1 mod 4,
// nu3 = 2 iff p = 1 mod 3 (both 0 otherwise, p > 3).
long genus_oracle(long p);

// Total genus carried by the fiber: sum of vertex genera plus betti1. Equals
// genus_oracle(p) for every well-formed model.
long graph_genus(const MetrizedGraph& g);

std::string to_dot(const MetrizedGraph& g);

}  // namespace x0p2
