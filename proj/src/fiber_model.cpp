#include "x0p2/fiber_model.hpp"

#include <json.hpp>

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>

#include "x0p2/primes.hpp"

namespace x0p2 {

ResidueClass classify_prime(long p) {
  if (p <= 3 || !is_prime(p))
    throw std::invalid_argument("not an odd prime > 3: " + std::to_string(p));
  if (p == 5)
    throw std::domain_error("genus zero curve: X_0(25) has genus 0");
  return ResidueClass{p, static_cast<int>(p % 12), p / 12};
}

int FiberModel::index_of(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

int FiberModel::add_component(const std::string& id, long genus,
                              ComponentKind kind) {
  if (index_.count(id))
    throw std::invalid_argument("duplicate component id: " + id);
  const int idx = size();
  index_.emplace(id, idx);
  components_.push_back({id, genus, kind});
  return idx;
}

void FiberModel::add_node(int a, int b, long multiplicity) {
  if (a == b) throw std::invalid_argument("node endpoints must differ");
  if (a < 0 || b < 0 || a >= size() || b >= size())
    throw std::invalid_argument("node endpoint out of range");
  if (multiplicity <= 0) throw std::invalid_argument("node multiplicity <= 0");
  const auto key = std::minmax(a, b);
  auto it = node_index_.find(key);
  if (it != node_index_.end()) {
    nodes_[it->second].multiplicity += multiplicity;
    return;
  }
  node_index_.emplace(key, static_cast<int>(nodes_.size()));
  nodes_.push_back({key.first, key.second, multiplicity});
}

long FiberModel::node_degree(int i) const {
  long d = 0;
  for (const Node& n : nodes_)
    if (n.a == i || n.b == i) d += n.multiplicity;
  return d;
}

std::vector<long> FiberModel::degrees() const {
  std::vector<long> d(size(), 0);
  for (const Node& n : nodes_) {
    d[n.a] += n.multiplicity;
    d[n.b] += n.multiplicity;
  }
  return d;
}

long FiberModel::self_intersection(int i) const {
  auto it = overrides_.find(i);
  if (it != overrides_.end()) return it->second;
  return -node_degree(i);
}

long FiberModel::count_nodes() const {
  long s = 0;
  for (const Node& n : nodes_) s += n.multiplicity;
  return s;
}

void FiberModel::override_self_intersection(int i, long value) {
  overrides_[i] = value;
}

QMatrix FiberModel::intersection_matrix() const {
  const int n = size();
  const std::vector<long> deg = degrees();
  QMatrix m = QMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    auto it = overrides_.find(i);
    m(i, i) = Rational(it != overrides_.end() ? it->second : -deg[i]);
  }
  for (const Node& nd : nodes_) {
    m(nd.a, nd.b) += Rational(nd.multiplicity);
    m(nd.b, nd.a) += Rational(nd.multiplicity);
  }
  return m;
}

std::vector<SparseEntry> FiberModel::intersection_entries() const {
  const std::vector<long> deg = degrees();
  std::vector<SparseEntry> es;
  es.reserve(nodes_.size() * 2 + components_.size());
  for (int i = 0; i < size(); ++i) {
    auto it = overrides_.find(i);
    es.push_back({i, i, Rational(it != overrides_.end() ? it->second : -deg[i])});
  }
  for (const Node& nd : nodes_) {
    es.push_back({nd.a, nd.b, Rational(nd.multiplicity)});
    es.push_back({nd.b, nd.a, Rational(nd.multiplicity)});
  }
  return es;
}

namespace {

struct ClassShape {
  long chain_ab = 0;   // A/B chain component count, (p-1)/2 - 1
  long chain_mn = 0;   // M/N, p - 2 (classes 7 and 11 only)
  long chain_gh = 0;   // G/H, 3(p-1)/2 - 1 (classes 5 and 11 only)
  long genus_c11 = 0;
  long genus_l = 0;
  long genus_e = 0;
  long genus_f = 0;
  bool has_e = false;
  bool has_f = false;
};

ClassShape shape_of(const ResidueClass& rc) {
  const long k = rc.k;
  ClassShape s;
  s.chain_ab = (rc.p - 1) / 2 - 1;
  switch (rc.cls) {
    case 1:
      s.genus_c11 = 3 * k * k - 3 * k + 1;
      s.genus_l = 6 * k;
      break;
    case 5:
      s.genus_c11 = 3 * k * k - k;
      s.genus_l = 6 * k + 2;
      s.genus_f = 2 * k;
      s.has_f = true;
      s.chain_gh = 3 * (rc.p - 1) / 2 - 1;
      break;
    case 7:
      s.genus_c11 = 3 * k * k;
      s.genus_l = 6 * k + 3;
      s.genus_e = 3 * k + 1;
      s.has_e = true;
      s.chain_mn = rc.p - 2;
      break;
    case 11:
      s.genus_c11 = 3 * k * k + 2 * k;
      s.genus_l = 6 * k + 5;
      s.genus_e = 3 * k + 2;
      s.genus_f = 2 * k + 1;
      s.has_e = true;
      s.has_f = true;
      s.chain_mn = rc.p - 2;
      s.chain_gh = 3 * (rc.p - 1) / 2 - 1;
      break;
    default:
      throw std::logic_error("unclassified prime");
  }
  return s;
}

// Chain of `count` genus-0 components from `from` to `to`, with ids
// prefix + l for l = 1..count; a direct node when count == 0.
void add_chain(FiberModel& m, int from, const std::string& prefix, long count,
               int to) {
  if (count == 0) {
    m.add_node(from, to);
    return;
  }
  int prev = from;
  for (long l = 1; l <= count; ++l) {
    const int c =
        m.add_component(prefix + std::to_string(l), 0, ComponentKind::chain);
    m.add_node(prev, c);
    prev = c;
  }
  m.add_node(prev, to);
}

}  // namespace

FiberModel build_blueprint(const ResidueClass& rc) {
  const ClassShape s = shape_of(rc);
  FiberModel m(rc);
  const int c20 = m.add_component("C20", 0, ComponentKind::principal);
  const int c02 = m.add_component("C02", 0, ComponentKind::principal);
  const int c11_1 =
      m.add_component("C11_1", s.genus_c11, ComponentKind::principal);
  const int c11_2 =
      m.add_component("C11_2", s.genus_c11, ComponentKind::principal);
  const int e = s.has_e
                    ? m.add_component("E", s.genus_e, ComponentKind::principal)
                    : -1;
  const int f = s.has_f
                    ? m.add_component("F", s.genus_f, ComponentKind::principal)
                    : -1;
  std::vector<int> ls;
  for (long i = 1; i <= rc.k; ++i)
    ls.push_back(m.add_component("L_" + std::to_string(i), s.genus_l,
                                 ComponentKind::principal));
  for (long i = 1; i <= rc.k; ++i) {
    const std::string si = std::to_string(i);
    add_chain(m, c20, "A_" + si + "_", s.chain_ab, ls[i - 1]);
    add_chain(m, c02, "B_" + si + "_", s.chain_ab, ls[i - 1]);
    m.add_node(ls[i - 1], c11_1);
    m.add_node(ls[i - 1], c11_2);
  }
  if (s.has_e) {
    add_chain(m, c20, "M_", s.chain_mn, e);
    add_chain(m, c02, "N_", s.chain_mn, e);
    const int u = m.add_component("U", 0, ComponentKind::chain);
    m.add_node(e, u);
    m.add_node(u, c11_1);
    const int v = m.add_component("V", 0, ComponentKind::chain);
    m.add_node(e, v);
    m.add_node(v, c11_2);
  }
  if (s.has_f) {
    add_chain(m, c20, "G_", s.chain_gh, f);
    add_chain(m, c02, "H_", s.chain_gh, f);
    const int s1 = m.add_component("S1", 0, ComponentKind::chain);
    const int s2 = m.add_component("S2", 0, ComponentKind::chain);
    m.add_node(f, s1);
    m.add_node(s1, s2);
    m.add_node(s2, c11_1);
    const int t1 = m.add_component("T1", 0, ComponentKind::chain);
    const int t2 = m.add_component("T2", 0, ComponentKind::chain);
    m.add_node(f, t1);
    m.add_node(t1, t2);
    m.add_node(t2, c11_2);
  }
  return m;
}

FiberModel contract_minimal(const FiberModel& m) {
  const int n = m.size();
  std::vector<bool> alive(n, true);
  std::vector<std::map<int, long>> adj(n);
  std::vector<long> deg(n, 0);
  for (const Node& nd : m.nodes()) {
    adj[nd.a][nd.b] += nd.multiplicity;
    adj[nd.b][nd.a] += nd.multiplicity;
    deg[nd.a] += nd.multiplicity;
    deg[nd.b] += nd.multiplicity;
  }

  // A genus-0 curve has self-intersection -1 exactly when its row sum forces
  // a single node, so contraction is leaf removal; the pair update below is
  // the general Castelnuovo rule anyway. Candidates go lowest index first.
  std::set<int> work;
  for (int i = 0; i < n; ++i)
    if (m.component(i).genus == 0 && deg[i] == 1) work.insert(i);
  while (!work.empty()) {
    const int i = *work.begin();
    work.erase(work.begin());
    if (!alive[i] || deg[i] != 1 || m.component(i).genus != 0) continue;
    const std::vector<std::pair<int, long>> nb(adj[i].begin(), adj[i].end());
    for (size_t u = 0; u < nb.size(); ++u) {
      for (size_t v = u + 1; v < nb.size(); ++v) {
        const long w = nb[u].second * nb[v].second;
        adj[nb[u].first][nb[v].first] += w;
        adj[nb[v].first][nb[u].first] += w;
        deg[nb[u].first] += w;
        deg[nb[v].first] += w;
      }
    }
    for (const auto& [j, mv] : nb) {
      adj[j].erase(i);
      deg[j] -= mv;
      if (alive[j] && m.component(j).genus == 0 && deg[j] == 1) work.insert(j);
    }
    alive[i] = false;
    adj[i].clear();
    deg[i] = 0;
  }

  FiberModel out(m.residue());
  std::vector<int> remap(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    const Component& c = m.component(i);
    remap[i] = out.add_component(c.id, c.genus, c.kind);
  }
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    for (const auto& [j, mv] : adj[i])
      if (i < j) out.add_node(remap[i], remap[j], mv);
  }
  return out;
}

std::vector<std::string> validate(const FiberModel& m) {
  std::vector<std::string> bad;
  const int n = m.size();
  std::map<std::string, int> seen;
  for (int i = 0; i < n; ++i) {
    const Component& c = m.component(i);
    if (++seen[c.id] == 2) bad.push_back("duplicate component id: " + c.id);
    if (c.genus < 0) bad.push_back("negative genus: " + c.id);
  }
  for (const Node& nd : m.nodes()) {
    if (nd.a == nd.b)
      bad.push_back("self-node on " + m.component(nd.a).id);
    if (nd.multiplicity <= 0)
      bad.push_back("nonpositive node multiplicity on " + m.component(nd.a).id);
  }
  if (n > 0) {
    std::vector<std::vector<int>> nbr(n);
    for (const Node& nd : m.nodes()) {
      nbr[nd.a].push_back(nd.b);
      nbr[nd.b].push_back(nd.a);
    }
    std::vector<bool> vis(n, false);
    std::queue<int> q;
    q.push(0);
    vis[0] = true;
    int reached = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int w : nbr[u]) {
        if (!vis[w]) {
          vis[w] = true;
          ++reached;
          q.push(w);
        }
      }
    }
    if (reached != n) bad.push_back("fiber is not connected");
  }
  const std::vector<long> deg = m.degrees();
  const auto& pinned = m.self_intersection_overrides();
  for (int i = 0; i < n; ++i) {
    auto it = pinned.find(i);
    const long self = it != pinned.end() ? it->second : -deg[i];
    if (self + deg[i] != 0)
      bad.push_back("row sum nonzero for " + m.component(i).id);
    if (m.component(i).genus == 0 && self == -1)
      bad.push_back("contractible (-1)-curve: " + m.component(i).id);
  }
  return bad;
}

FiberModel minimal_model(long p) {
  return contract_minimal(build_blueprint(classify_prime(p)));
}

long count_nodes(const FiberModel& m) { return m.count_nodes(); }

long node_count_closed_form(const ResidueClass& rc) {
  const long k = rc.k;
  switch (rc.cls) {
    case 1:
      return 12 * k * k + 2 * k;
    case 5:
      return 12 * k * k + 42 * k + 18;
    case 7:
      return 12 * k * k + 32 * k + 16;
    case 11:
      return 12 * k * k + 72 * k + 60;
    default:
      throw std::logic_error("unclassified prime");
  }
}

bool in_generic_range(const ResidueClass& rc) {
  switch (rc.cls) {
    case 1:
      return rc.k > 1;
    case 5:
    case 7:
      return rc.k > 0;
    case 11:
      return rc.k >= 0;
    default:
      return false;
  }
}

std::string to_json(const FiberModel& m) {
  nlohmann::ordered_json j;
  j["p"] = m.residue().p;
  j["class"] = m.residue().cls;
  j["k"] = m.residue().k;
  j["components"] = nlohmann::ordered_json::array();
  for (int i = 0; i < m.size(); ++i) {
    const Component& c = m.component(i);
    j["components"].push_back({{"id", c.id},
                               {"genus", c.genus},
                               {"self_intersection", m.self_intersection(i)}});
  }
  j["nodes"] = nlohmann::ordered_json::array();
  for (const Node& nd : m.nodes())
    j["nodes"].push_back({m.component(nd.a).id, m.component(nd.b).id,
                          nd.multiplicity});
  return j.dump(2) + "\n";
}

}  // namespace x0p2
