#include "x0p2/dual_graph.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace x0p2 {

int MetrizedGraph::vertex(const std::string& label) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].label == label) return static_cast<int>(i);
  return -1;
}

long MetrizedGraph::valence(int v) const {
  long d = 0;
  for (const DualEdge& e : edges) {
    if (e.u == v) ++d;
    if (e.v == v) ++d;
  }
  return d;
}

Rational MetrizedGraph::total_length() const {
  Rational l(0);
  for (const DualEdge& e : edges) l += e.length;
  return l;
}

bool MetrizedGraph::connected() const {
  const int n = static_cast<int>(vertices.size());
  if (n == 0) return true;
  std::vector<std::vector<int>> nbr(n);
  for (const DualEdge& e : edges) {
    nbr[e.u].push_back(e.v);
    nbr[e.v].push_back(e.u);
  }
  std::vector<bool> vis(n, false);
  std::queue<int> q;
  q.push(0);
  vis[0] = true;
  int reached = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int w : nbr[u])
      if (!vis[w]) {
        vis[w] = true;
        ++reached;
        q.push(w);
      }
  }
  return reached == n;
}

int MetrizedGraph::betti1() const {
  if (!connected())
    throw std::logic_error("betti1: graph is not connected");
  return static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) + 1;
}

namespace {

std::string lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

MetrizedGraph dual_graph(const FiberModel& m) {
  const int n = m.size();
  struct E {
    int u, v;
    Rational length;
    bool alive = true;
  };
  std::vector<E> edges;
  std::vector<std::vector<int>> inc(n);  // incident edge ids, self-loops twice
  for (const Node& nd : m.nodes()) {
    for (long c = 0; c < nd.multiplicity; ++c) {
      const int id = static_cast<int>(edges.size());
      edges.push_back({nd.a, nd.b, Rational(1), true});
      inc[nd.a].push_back(id);
      inc[nd.b].push_back(id);
    }
  }

  std::vector<bool> keep(n, true);
  for (int w = 0; w < n; ++w) {
    const Component& c = m.component(w);
    if (c.genus != 0 || inc[w].size() != 2) continue;
    if (c.id == "C20" || c.id == "C02") continue;
    const int e1 = inc[w][0], e2 = inc[w][1];
    if (e1 == e2) continue;  // lone self-loop: nothing to splice into
    const int x = edges[e1].u == w ? edges[e1].v : edges[e1].u;
    const int y = edges[e2].u == w ? edges[e2].v : edges[e2].u;
    if (x == w || y == w) continue;
    edges[e1].u = x;
    edges[e1].v = y;
    edges[e1].length += edges[e2].length;
    edges[e2].alive = false;
    std::replace(inc[y].begin(), inc[y].end(), e2, e1);
    inc[w].clear();
    keep[w] = false;
  }

  MetrizedGraph g;
  std::vector<int> remap(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    remap[i] = static_cast<int>(g.vertices.size());
    g.vertices.push_back({lower(m.component(i).id), m.component(i).genus});
  }
  for (const E& e : edges)
    if (e.alive) g.edges.push_back({remap[e.u], remap[e.v], e.length});
  return g;
}

long genus_oracle(long p) {
  const long nu2 = p % 4 == 1 ? 2 : 0;
  const long nu3 = p % 3 == 1 ? 2 : 0;
  const Rational g = Rational(1) + Rational(p * (p + 1), 12) -
                     Rational(nu2, 4) - Rational(nu3, 3) - Rational(p + 1, 2);
  return g.to_long();
}

long graph_genus(const MetrizedGraph& g) {
  long total = g.betti1();
  for (const DualVertex& v : g.vertices) total += v.genus;
  return total;
}

std::string to_dot(const MetrizedGraph& g) {
  std::vector<int> order(g.vertices.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return g.vertices[a].label < g.vertices[b].label;
  });
  struct Line {
    std::string a, b;
    Rational len;
  };
  std::vector<Line> lines;
  for (const DualEdge& e : g.edges) {
    std::string a = g.vertices[e.u].label, b = g.vertices[e.v].label;
    if (b < a) std::swap(a, b);
    lines.push_back({a, b, e.length});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& l, const Line& r) {
    if (l.a != r.a) return l.a < r.a;
    if (l.b != r.b) return l.b < r.b;
    return l.len < r.len;
  });
  std::ostringstream os;
  os << "graph dual {\n";
  for (int i : order)
    os << "  \"" << g.vertices[i].label << "\" [label=\""
       << g.vertices[i].label << " (g=" << g.vertices[i].genus << ")\"];\n";
  for (const Line& l : lines)
    os << "  \"" << l.a << "\" -- \"" << l.b << "\" [len=\"" << l.len.str()
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace x0p2
