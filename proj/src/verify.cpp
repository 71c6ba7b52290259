#include "x0p2/verify.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "x0p2/arakelov.hpp"
#include "x0p2/dual_graph.hpp"
#include "x0p2/fiber_model.hpp"
#include "x0p2/graph_invariants.hpp"
#include "x0p2/primes.hpp"
#include "x0p2/sparse_elim.hpp"

namespace x0p2 {
namespace {

struct PrimeRecord {
  long p = 0;
  int cls = 0;
  long k = 0;
  long genus = 0;
  long nodes = 0;
  Rational length;      // dual graph total length, must equal nodes
  Rational tau;
  Rational theta;
  Rational correction;  // admissible correction, log p units
  Rational genus_const;
  bool generic = false;
  Rational v00;         // per-fiber pairings, log p^2 units
  Rational v0inf;
  bool erratum = false;
  std::string verbose_note;
  std::vector<std::string> flags;  // hard violations
  std::vector<std::string> warns;
};

// g = 1 + p(p+1)/12 - (p+1)/2 - c with c = nu2/4 + nu3/3; c depends only on
// p mod 12, so it must come out constant within each class.
Rational genus_constant(long p, long genus) {
  return Rational(1) + Rational(p * (p + 1), 12) - Rational(p + 1, 2) -
         Rational(genus);
}

bool confined_to_plain_n(const Divisor& diff) {
  if (diff.empty()) return false;
  for (const auto& [id, coeff] : diff)
    if (id.rfind("N_", 0) != 0) return false;
  return true;
}

// Re-checks M v = b entry by entry, independently of the solver's
// elimination: b_C = (2g-2)[C carries the cusp] - <omega,C>/2 in node-count
// units (canonical_intersections reports log p units, twice that).
bool residual_zero(const FiberModel& m, const Divisor& v, Cusp cusp,
                   long genus) {
  const auto canonical = canonical_intersections(m);
  const int n = m.size();
  std::vector<Rational> coeff(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    auto it = v.find(m.component(i).id);
    if (it != v.end()) coeff[i] = it->second;
  }
  std::vector<Rational> row(n, Rational(0));
  for (const auto& e : m.intersection_entries()) row[e.row] += e.value * coeff[e.col];
  const std::string cusp_id = cusp_component(cusp);
  for (int i = 0; i < n; ++i) {
    const std::string& id = m.component(i).id;
    Rational b = Rational(0) - canonical.at(id) / Rational(2);
    if (id == cusp_id) b += Rational(2 * (genus - 1));
    if (row[i] != b) return false;
  }
  return true;
}

PrimeRecord check_prime(long p, bool verbose) {
  PrimeRecord r;
  r.p = p;
  const ResidueClass rc = classify_prime(p);
  r.cls = rc.cls;
  r.k = rc.k;
  const FiberModel m = minimal_model(p);

  for (const auto& msg : validate(m))
    r.flags.push_back("invalid_model(" + msg + ")");

  const int n = m.size();
  if (sparse_rank(n, n, m.intersection_entries()) != n - 1)
    r.flags.push_back("kernel_rank");

  r.nodes = m.count_nodes();
  const MetrizedGraph g = dual_graph(m);
  r.length = g.total_length();
  if (r.length != Rational(r.nodes)) r.flags.push_back("length_vs_nodes");

  r.genus = genus_oracle(p);
  if (graph_genus(g) != r.genus) r.flags.push_back("genus_identity");
  r.genus_const = genus_constant(p, r.genus);

  r.generic = in_generic_range(rc);
  if (r.generic && r.nodes != node_count_closed_form(rc))
    r.flags.push_back("node_closed_form");

  r.tau = tau_constant(g);
  const int ne = static_cast<int>(g.edges.size());
  const int nv = static_cast<int>(g.vertices.size());
  if (ne > 0) {
    if (r.tau < r.length / Rational(16 * ne) || r.tau > r.length / Rational(4))
      r.flags.push_back("tau_bounds");
    for (int q = 1; q < nv; ++q)
      if (tau_constant(g, q) != r.tau) {
        r.flags.push_back("tau_reference_dependence");
        break;
      }
  } else if (!r.tau.is_zero()) {
    r.flags.push_back("tau_bounds");
  }
  r.theta = theta_tilde(g);
  r.correction = admissible_correction(r.tau, r.theta, r.genus, p);

  // resistance: positive off the diagonal, dominated by shortest-path
  // distance, triangle inequality
  {
    const ResistanceKernel kern(g);
    std::vector<std::vector<Rational>> res(nv, std::vector<Rational>(nv, Rational(0)));
    bool ok = true;
    for (int x = 0; x < nv && ok; ++x)
      for (int y = x + 1; y < nv; ++y) {
        res[x][y] = res[y][x] = kern.resistance(x, y);
        if (res[x][y].sign() <= 0 || res[x][y] > shortest_path(g, x, y)) {
          ok = false;
          break;
        }
      }
    for (int x = 0; x < nv && ok; ++x)
      for (int y = 0; y < nv && ok; ++y) {
        if (y == x) continue;
        for (int z = 0; z < nv; ++z) {
          if (z == x || z == y) continue;
          if (res[x][z] > res[x][y] + res[y][z]) {
            ok = false;
            break;
          }
        }
      }
    if (!ok) r.flags.push_back("resistance_metric");
  }

  if (r.generic) {
    const Divisor v0 = solve_orthogonal_divisor(m, Cusp::zero, r.genus);
    const Divisor vinf = solve_orthogonal_divisor(m, Cusp::infinity, r.genus);
    if (!residual_zero(m, v0, Cusp::zero, r.genus) ||
        !residual_zero(m, vinf, Cusp::infinity, r.genus))
      r.flags.push_back("divisor_residual");

    const Divisor d0 = divisor_diff(paper_divisor(m, Cusp::zero), v0);
    const Divisor dinf = divisor_diff(paper_divisor(m, Cusp::infinity), vinf);
    if (!dinf.empty()) r.flags.push_back("fixture_v_inf");
    if (!d0.empty()) {
      if (rc.cls == 7 && confined_to_plain_n(d0)) {
        r.warns.push_back("erratum_v0_N");
        r.erratum = true;
      } else {
        r.flags.push_back("fixture_v_0");
      }
    }

    r.v00 = pair_fiber(m, v0, v0);
    r.v0inf = pair_fiber(m, v0, vinf);
    if (pair_fiber(m, vinf, vinf) != r.v00) r.flags.push_back("pairing_symmetry");
  }

  if (verbose) {
    const BoundQuantities bq = bound_quantities(g, p, r.genus);
    std::ostringstream os;
    os << "# p=" << p << " q_tau=" << bq.q_tau.str() << " q_theta="
       << bq.q_theta.str() << " theta_unordered=" << (r.theta / Rational(2)).str()
       << " copies=" << conjugate_fibers(p);
    r.verbose_note = os.str();
  }
  return r;
}

std::string status_of(const PrimeRecord& r) {
  if (r.flags.empty() && r.warns.empty()) return "ok";
  std::string s;
  for (const auto& f : r.flags) {
    if (!s.empty()) s += ';';
    s += f;
  }
  for (const auto& w : r.warns) {
    if (!s.empty()) s += ';';
    s += "warn:" + w;
  }
  return s;
}

}  // namespace

VerifyResult run_verification(const VerifyOptions& opt) {
  for (int c : opt.classes)
    if (c != 1 && c != 5 && c != 7 && c != 11)
      throw std::invalid_argument("classes must be among 1, 5, 7, 11");
  const std::set<int> want(opt.classes.begin(), opt.classes.end());

  std::vector<long> ps;
  for (long p : primes_in(7, opt.pmax))
    if (want.count(static_cast<int>(p % 12))) ps.push_back(p);

  std::vector<PrimeRecord> recs(ps.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i = next.fetch_add(1); i < ps.size(); i = next.fetch_add(1)) {
      try {
        recs[i] = check_prime(ps[i], opt.verbose);
      } catch (const std::exception& e) {
        recs[i].p = ps[i];
        recs[i].flags.push_back(std::string("exception(") + e.what() + ")");
      }
    }
  };
  const int jobs = std::min(std::max(1, opt.jobs),
                            static_cast<int>(std::max<size_t>(ps.size(), 1)));
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  VerifyResult out;
  out.primes_checked = static_cast<long>(ps.size());
  std::ostringstream csv;
  csv << "p,class,k,genus,l_G,s_nodes,tau,theta_tilde,V00,V0inf,correction,status\n";
  for (const auto& r : recs) {
    out.violations += static_cast<int>(r.flags.size());
    out.warnings += static_cast<int>(r.warns.size());
    csv << r.p << ',' << r.cls << ',' << r.k << ',' << r.genus << ','
        << r.length.str() << ',' << r.nodes << ',' << r.tau.str() << ','
        << r.theta.str() << ',';
    if (r.generic)
      csv << r.v00.str() << ',' << r.v0inf.str() << ',';
    else
      csv << "-,-,";
    csv << r.correction.str() << ',' << status_of(r) << '\n';
    if (opt.verbose && !r.verbose_note.empty()) csv << r.verbose_note << '\n';
  }

  // per-class genus constants
  std::map<int, std::set<std::string>> cvals;
  std::map<int, int> ccount;
  for (const auto& r : recs) {
    cvals[r.cls].insert(r.genus_const.str());
    ++ccount[r.cls];
  }
  for (const auto& [cls, vals] : cvals) {
    if (vals.size() == 1) {
      csv << "# genus_constant class=" << cls << " c=" << *vals.begin()
          << " over " << ccount[cls]
          << " primes (g = 1 + p(p+1)/12 - (p+1)/2 - c)\n";
    } else {
      csv << "# genus_constant class=" << cls << " NOT CONSTANT:";
      for (const auto& v : vals) csv << ' ' << v;
      csv << '\n';
      ++out.violations;
    }
  }

  // per-class pairing polynomials from the already-computed fiber pairings
  for (int cls : {1, 5, 7, 11}) {
    if (!want.count(cls)) continue;
    std::vector<long> cps;
    std::vector<Rational> v00s, v0infs;
    for (const auto& r : recs)
      if (r.cls == cls && r.generic && r.flags.empty()) {
        cps.push_back(r.p);
        v00s.push_back(Rational(24) * r.v00);
        v0infs.push_back(Rational(24) * r.v0inf);
      }
    if (cps.empty()) continue;
    if (cps.size() < 7) {
      csv << "# polynomial class=" << cls << " skipped (" << cps.size()
          << " generic primes, need 7)\n";
      continue;
    }
    const struct {
      PairingKind kind;
      const char* name;
      const std::vector<Rational>* vals;
    } kinds[] = {{PairingKind::v00, "<V_0,V_0>", &v00s},
                 {PairingKind::v0inf, "<V_0,V_inf>", &v0infs}};
    for (const auto& kk : kinds) {
      const PolynomialCheck pc =
          fit_pairing_polynomial(cls, kk.kind, cps, *kk.vals);
      if (pc.matches && pc.holdout_ok) {
        csv << "# polynomial class=" << cls << " 24*" << kk.name << " = "
            << polynomial_str(pc.recovered) << " (fit 5 primes, "
            << pc.holdout_count << " holdouts, matches reference)\n";
      } else {
        csv << "# polynomial class=" << cls << " 24*" << kk.name
            << " MISMATCH: recovered " << polynomial_str(pc.recovered)
            << " vs reference " << polynomial_str(pc.reference)
            << (pc.holdout_ok ? "" : ", holdout check failed") << '\n';
        ++out.violations;
      }
    }
  }

  std::vector<long> erratum_ps;
  for (const auto& r : recs)
    if (r.erratum) erratum_ps.push_back(r.p);
  if (!erratum_ps.empty()) {
    csv << "# erratum class=7 V_0: plain N_j coefficients printed as j*x/3,"
           " the chain equations force j*x/2; solver diff confined to the N"
           " family for p in {";
    for (size_t i = 0; i < erratum_ps.size(); ++i)
      csv << (i ? ", " : "") << erratum_ps[i];
    csv << "}\n";
  }

  csv << "# primes=" << out.primes_checked << " violations=" << out.violations
      << " warnings=" << out.warnings << '\n';
  out.csv = csv.str();
  return out;
}

}  // namespace x0p2
