#pragma once

#include <string>
#include <vector>

#include "x0p2/dual_graph.hpp"
#include "x0p2/linalg.hpp"

namespace x0p2 {

// Grounded inverse of the weighted graph Laplacian (conductance = 1/length,
// parallel edges add, self-loops carry no current), re-embedded with zeros in
// the ground row and column. Every resistance-type quantity reduces to it:
//   r(x,y)            = K_xx + K_yy - 2 K_xy,
//   d_xy^T K d_ab     for the deleted-edge rank-one updates.
class ResistanceKernel {
 public:
  explicit ResistanceKernel(const MetrizedGraph& g);
  int size() const { return static_cast<int>(k_.rows()); }
  Rational resistance(int x, int y) const;
  Rational form(int x, int y, int a, int b) const;  // d_xy^T K d_ab

 private:
  QMatrix k_;
};

Rational effective_resistance(const MetrizedGraph& g, int x, int y);

// Edges lying on no cycle; parallel edges and self-loops never qualify.
std::vector<bool> bridge_edges(const MetrizedGraph& g);

// Tau constant of the metrized graph, assembled edge by edge against a
// reference vertex q (the value is independent of q; the overload uses
// vertex 0):
//   bridge      L/4
//   self-loop   L/12
//   cycle edge  (c^3 - (c - 2L)^3) / (24 (L+R)^2)
// with r = r_G(a,b), R = L r / (L - r), c = L + B - A, and A = r_{G\e}(a,q),
// B = r_{G\e}(b,q) obtained from K by a rank-one update after deleting e.
Rational tau_constant(const MetrizedGraph& g, int q);
Rational tau_constant(const MetrizedGraph& g);

// theta(x,y) = w(x) w(y) r(x,y) with w(v) = valence(v) - 2 + 2 genus(v);
// theta_tilde sums theta over ordered pairs of distinct vertices.
Rational theta_pair(const MetrizedGraph& g, const ResistanceKernel& k, int x,
                    int y);
Rational theta_tilde(const MetrizedGraph& g);

long vertex_weight(const MetrizedGraph& g, int v);

Rational shortest_path(const MetrizedGraph& g, int x, int y);

struct BoundQuantities {
  Rational q_tau;    // 8 (g-1) tau / ((p^2-1) g^2)
  Rational q_theta;  // theta_tilde / ((p^2-1) g^2)
};
BoundQuantities bound_quantities(const MetrizedGraph& g, long p, long genus);

// {"l", "betti1", "tau", "theta_tilde", "resistance": [[u, v, "num/den"]...]}
// with exact strings; verbose adds the halved (unordered) theta sum and the
// per-vertex weight table.
std::string invariants_json(const MetrizedGraph& g, bool verbose = false);

}  // namespace x0p2
