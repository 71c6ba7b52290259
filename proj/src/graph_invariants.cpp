#include "x0p2/graph_invariants.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace x0p2 {

ResistanceKernel::ResistanceKernel(const MetrizedGraph& g) {
  const int n = static_cast<int>(g.vertices.size());
  if (n == 0) throw std::invalid_argument("resistance: empty graph");
  if (!g.connected()) throw std::invalid_argument("resistance: graph not connected");
  QMatrix lap = QMatrix::Zero(n, n);
  for (const DualEdge& e : g.edges) {
    if (e.u == e.v) continue;
    const Rational c = Rational(1) / e.length;
    lap(e.u, e.u) += c;
    lap(e.v, e.v) += c;
    lap(e.u, e.v) -= c;
    lap(e.v, e.u) -= c;
  }
  k_ = QMatrix::Zero(n, n);
  if (n == 1) return;
  QMatrix red(n - 1, n - 1);
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) red(i - 1, j - 1) = lap(i, j);
  auto inv = invert(red);
  if (!inv) throw std::logic_error("resistance: grounded Laplacian singular");
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) k_(i, j) = (*inv)(i - 1, j - 1);
}

Rational ResistanceKernel::resistance(int x, int y) const {
  return k_(x, x) + k_(y, y) - k_(x, y) - k_(x, y);
}

Rational ResistanceKernel::form(int x, int y, int a, int b) const {
  return k_(x, a) - k_(x, b) - k_(y, a) + k_(y, b);
}

Rational effective_resistance(const MetrizedGraph& g, int x, int y) {
  return ResistanceKernel(g).resistance(x, y);
}

std::vector<bool> bridge_edges(const MetrizedGraph& g) {
  const int n = static_cast<int>(g.vertices.size());
  const int m = static_cast<int>(g.edges.size());
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge id)
  for (int e = 0; e < m; ++e) {
    if (g.edges[e].u == g.edges[e].v) continue;
    adj[g.edges[e].u].emplace_back(g.edges[e].v, e);
    adj[g.edges[e].v].emplace_back(g.edges[e].u, e);
  }
  std::vector<bool> bridge(m, false);
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int u, int via_edge) {
    disc[u] = low[u] = timer++;
    for (const auto& [w, e] : adj[u]) {
      if (e == via_edge) continue;
      if (disc[w] >= 0) {
        low[u] = std::min(low[u], disc[w]);
      } else {
        dfs(w, e);
        low[u] = std::min(low[u], low[w]);
        if (low[w] > disc[u]) bridge[e] = true;
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (disc[v] < 0) dfs(v, -1);
  return bridge;
}

Rational tau_constant(const MetrizedGraph& g, int q) {
  if (q < 0 || q >= static_cast<int>(g.vertices.size()))
    throw std::invalid_argument("tau: reference vertex out of range");
  if (g.edges.empty()) return Rational(0);
  const ResistanceKernel k(g);
  const std::vector<bool> bridge = bridge_edges(g);
  Rational tau(0);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const int a = g.edges[e].u, b = g.edges[e].v;
    const Rational len = g.edges[e].length;
    if (bridge[e]) {
      tau += len / Rational(4);
      continue;
    }
    if (a == b) {
      tau += len / Rational(12);
      continue;
    }
    const Rational r = k.resistance(a, b);
    const Rational gap = len - r;  // positive: e sits on a cycle
    if (gap.is_zero()) throw std::logic_error("tau: cycle edge with full resistance");
    const Rational cap_r = len * r / gap;  // r_{G\e}(a,b)
    const Rational fa = k.form(a, q, a, b);
    const Rational fb = k.form(b, q, a, b);
    const Rational ra = k.resistance(a, q) + fa * fa / gap;  // r_{G\e}(a,q)
    const Rational rb = k.resistance(b, q) + fb * fb / gap;  // r_{G\e}(b,q)
    const Rational c = len + rb - ra;
    const Rational d = c - len - len;
    const Rational lr = len + cap_r;
    tau += (c * c * c - d * d * d) / (Rational(24) * lr * lr);
  }
  return tau;
}

Rational tau_constant(const MetrizedGraph& g) { return tau_constant(g, 0); }

long vertex_weight(const MetrizedGraph& g, int v) {
  return g.valence(v) - 2 + 2 * g.vertices[v].genus;
}

Rational theta_pair(const MetrizedGraph& g, const ResistanceKernel& k, int x,
                    int y) {
  return Rational(vertex_weight(g, x)) * Rational(vertex_weight(g, y)) *
         k.resistance(x, y);
}

Rational theta_tilde(const MetrizedGraph& g) {
  const int n = static_cast<int>(g.vertices.size());
  if (n < 2) return Rational(0);
  const ResistanceKernel k(g);
  Rational t(0);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) t += theta_pair(g, k, x, y);
  return t + t;  // ordered pairs
}

Rational shortest_path(const MetrizedGraph& g, int x, int y) {
  const int n = static_cast<int>(g.vertices.size());
  std::vector<Rational> dist(n, Rational(-1));
  std::vector<bool> done(n, false);
  dist[x] = Rational(0);
  for (;;) {
    int u = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && dist[i].sign() >= 0 && (u < 0 || dist[i] < dist[u]))
        u = i;
    if (u < 0) break;
    if (u == y) return dist[u];
    done[u] = true;
    for (const DualEdge& e : g.edges) {
      const int w = e.u == u ? e.v : (e.v == u ? e.u : -1);
      if (w < 0 || done[w]) continue;
      const Rational cand = dist[u] + e.length;
      if (dist[w].sign() < 0 || cand < dist[w]) dist[w] = cand;
    }
  }
  throw std::invalid_argument("shortest_path: vertices not connected");
}

BoundQuantities bound_quantities(const MetrizedGraph& g, long p, long genus) {
  const Rational denom = Rational(p * p - 1) * Rational(genus) * Rational(genus);
  BoundQuantities b;
  b.q_tau = Rational(8) * Rational(genus - 1) * tau_constant(g) / denom;
  b.q_theta = theta_tilde(g) / denom;
  return b;
}

std::string invariants_json(const MetrizedGraph& g, bool verbose) {
  const int n = static_cast<int>(g.vertices.size());
  nlohmann::ordered_json j;
  j["l"] = g.total_length().str();
  j["betti1"] = g.betti1();
  const Rational tt = theta_tilde(g);
  j["tau"] = tau_constant(g).str();
  j["theta_tilde"] = tt.str();
  if (verbose) j["theta_tilde_unordered"] = (tt / Rational(2)).str();

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return g.vertices[a].label < g.vertices[b].label;
  });
  auto table = nlohmann::ordered_json::array();
  if (n > 1) {
    const ResistanceKernel k(g);
    for (int i = 0; i < n; ++i)
      for (int jj = i + 1; jj < n; ++jj) {
        const int x = order[i], y = order[jj];
        table.push_back({g.vertices[x].label, g.vertices[y].label,
                         k.resistance(x, y).str()});
      }
  }
  j["resistance"] = table;
  if (verbose) {
    auto weights = nlohmann::ordered_json::array();
    for (int i : order)
      weights.push_back({{"label", g.vertices[i].label},
                         {"genus", g.vertices[i].genus},
                         {"valence", g.valence(i)},
                         {"weight", vertex_weight(g, i)}});
    j["vertices"] = weights;
  }
  return j.dump(2) + "\n";
}

}  // namespace x0p2
