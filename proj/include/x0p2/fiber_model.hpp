#pragma once

#include <map>
#include <string>
#include <vector>

#include "x0p2/linalg.hpp"
#include "x0p2/sparse_elim.hpp"

namespace x0p2 {

// Congruence class of a prime p > 5 modulo 12, written p = 12k + cls.
struct ResidueClass {
  long p = 0;
  int cls = 0;  // 1, 5, 7 or 11
  long k = 0;
};

// Rejects non-primes, 2 and 3 ("not an odd prime > 3") and p = 5 ("genus
// zero curve": X_0(25) is rational, there is no minimal model to build).
ResidueClass classify_prime(long p);

enum class ComponentKind { principal, chain };

struct Component {
  std::string id;
  long genus = 0;
  ComponentKind kind = ComponentKind::principal;
};

// Intersection point of two distinct components; multiplicity counts
// coincident points.
struct Node {
  int a = 0;
  int b = 0;
  long multiplicity = 1;
};

// Special fiber of the minimal regular model of X_0(p^2) at one of the
// phi(p+1)/2 ramified primes of K = Q(p^{1/r}, zeta_{p+1}), r = (p^2-1)/2.
// The fiber is reduced and semi-stable, so every row of the intersection
// matrix sums to zero; self-intersections are derived from the node
// multiplicities, never stored. The residue field is F_{p^2}, so one
// intersection unit equals log p^2.
class FiberModel {
 public:
  explicit FiberModel(ResidueClass rc) : residue_(rc) {}

  const ResidueClass& residue() const { return residue_; }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  int size() const { return static_cast<int>(components_.size()); }

  int index_of(const std::string& id) const;  // -1 when absent
  const Component& component(int i) const { return components_[i]; }

  int add_component(const std::string& id, long genus, ComponentKind kind);
  void add_node(int a, int b, long multiplicity = 1);

  long node_degree(int i) const;  // sum of incident multiplicities
  std::vector<long> degrees() const;  // all node degrees in one pass
  long self_intersection(int i) const;
  long count_nodes() const;  // s(p_i): total node multiplicity

  // Diagnostic escape hatch: pins an explicit self-intersection so that
  // validate() can exhibit row-sum violations on synthetic input.
  void override_self_intersection(int i, long value);
  const std::map<int, long>& self_intersection_overrides() const {
    return overrides_;
  }

  QMatrix intersection_matrix() const;  // dense; only sensible for small p
  std::vector<SparseEntry> intersection_entries() const;

 private:
  ResidueClass residue_;
  std::vector<Component> components_;
  std::vector<Node> nodes_;
  std::map<std::string, int> index_;
  std::map<std::pair<int, int>, int> node_index_;
  std::map<int, long> overrides_;
};

// Generic configuration for the class of p: principal components C20, C02,
// C11_1, C11_2 (plus E and/or F where the class has them), the genus-carrying
// L_i, and the connecting chains A/B, M/N, G/H, S/T, U/V whose lengths come
// from the node equations ux - pi^m and st - pi^m.
FiberModel build_blueprint(const ResidueClass& rc);

// Castelnuovo contraction of genus-0 (-1)-curves until none remain. For
// p = 7 and p = 13 the blueprint cascades down to the familiar degenerate
// fibers; for every other prime the blueprint is already minimal.
FiberModel contract_minimal(const FiberModel& m);

// Violation messages, empty for a well-formed minimal model: unique ids,
// genera >= 0, node sanity, connectedness, zero row sums, no remaining
// contractible curves.
std::vector<std::string> validate(const FiberModel& m);

// classify + build + contract in one step.
FiberModel minimal_model(long p);

long count_nodes(const FiberModel& m);

// Closed form for s(p_i) in the generic range (p >= 11, p != 13).
long node_count_closed_form(const ResidueClass& rc);

bool in_generic_range(const ResidueClass& rc);

std::string to_json(const FiberModel& m);

}  // namespace x0p2
