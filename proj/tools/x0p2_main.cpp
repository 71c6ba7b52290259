#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "x0p2/arakelov.hpp"
#include "x0p2/dual_graph.hpp"
#include "x0p2/fiber_model.hpp"
#include "x0p2/graph_invariants.hpp"
#include "x0p2/verify.hpp"

namespace {

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file: " << path << '\n';
    return 2;
  }
  out << text;
  return 0;
}

std::string invariants_report(long p, bool verbose) {
  using nlohmann::ordered_json;
  const x0p2::ResidueClass rc = x0p2::classify_prime(p);
  const x0p2::FiberModel m = x0p2::minimal_model(p);
  const x0p2::MetrizedGraph g = x0p2::dual_graph(m);
  const long genus = x0p2::genus_oracle(p);

  ordered_json j;
  j["p"] = p;
  j["class"] = rc.cls;
  j["k"] = rc.k;
  j["genus"] = genus;
  j["s"] = m.count_nodes();
  const ordered_json gi =
      ordered_json::parse(x0p2::invariants_json(g, verbose));
  for (const auto& item : gi.items()) j[item.key()] = item.value();

  if (x0p2::in_generic_range(rc)) {
    const x0p2::Divisor v0 =
        x0p2::solve_orthogonal_divisor(m, x0p2::Cusp::zero, genus);
    const x0p2::Divisor vinf =
        x0p2::solve_orthogonal_divisor(m, x0p2::Cusp::infinity, genus);
    const long copies = x0p2::conjugate_fibers(p);
    ordered_json pairs;
    pairs["copies"] = copies;
    ordered_json per_fiber;
    per_fiber["V00"] = x0p2::pair_fiber(m, v0, v0).str();
    per_fiber["V0inf"] = x0p2::pair_fiber(m, v0, vinf).str();
    per_fiber["VinfVinf"] = x0p2::pair_fiber(m, vinf, vinf).str();
    pairs["per_fiber_log_p2"] = per_fiber;
    ordered_json total;
    total["V00"] = x0p2::pair_total(m, v0, v0, copies).str();
    total["V0inf"] = x0p2::pair_total(m, v0, vinf, copies).str();
    pairs["total_log_p"] = total;
    j["pairings"] = pairs;
  } else {
    j["pairing_reason"] = "out of generic range";
  }
  j["correction_log_p"] =
      x0p2::admissible_correction(x0p2::tau_constant(g), x0p2::theta_tilde(g),
                                  genus, p)
          .str();
  j["s_term_log_p"] = x0p2::faltings_s_term(p).str();
  j["estimates"] = x0p2::asymptotic_report(p)["estimates"];
  return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Minimal regular models of X_0(p^2) at ramified primes: special "
      "fibers, dual metrized graphs, and exact Arakelov invariants"};
  app.require_subcommand(1);

  long p = 0;
  long pmax = 199;
  std::vector<int> classes = {1, 5, 7, 11};
  std::string format;
  std::string out_path;
  int jobs = 1;
  bool verbose = false;

  CLI::App* model =
      app.add_subcommand("model", "Build the minimal regular model and print "
                                  "its special fiber (json) or dual graph (dot)");
  model->add_option("--p", p, "prime p > 5")->required();
  model->add_option("--format", format, "json|dot")
      ->check(CLI::IsMember({"json", "dot"}))
      ->default_val("json");
  model->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* inv = app.add_subcommand(
      "invariants", "Exact graph invariants, divisor pairings and flagged "
                    "leading-order estimates for one prime");
  inv->add_option("--p", p, "prime p > 5")->required();
  inv->add_option("--format", format, "json")
      ->check(CLI::IsMember({"json"}))
      ->default_val("json");
  inv->add_option("--out", out_path, "output file (default stdout)");
  inv->add_flag("--verbose", verbose,
                "include the unordered theta sum and the vertex weight table");

  CLI::App* ver = app.add_subcommand(
      "verify", "Check every invariant, fixture and closed form for all "
                "primes up to --pmax; CSV report");
  ver->add_option("--pmax", pmax, "largest prime to check")
      ->check(CLI::Range(7L, 100000L))
      ->default_val(199);
  ver->add_option("--classes", classes, "residue classes of p mod 12")
      ->delimiter(',');
  ver->add_option("--jobs", jobs, "worker threads")
      ->check(CLI::Range(1, 512))
      ->envname("X0P2_JOBS");
  ver->add_option("--format", format, "csv")
      ->check(CLI::IsMember({"csv"}))
      ->default_val("csv");
  ver->add_option("--out", out_path, "output file (default stdout)");
  ver->add_flag("--verbose", verbose, "per-prime bound quantities as comments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (model->parsed()) {
      const x0p2::FiberModel fm = x0p2::minimal_model(p);
      const std::string text =
          format == "dot" ? x0p2::to_dot(x0p2::dual_graph(fm)) : x0p2::to_json(fm);
      return write_output(text, out_path);
    }
    if (inv->parsed()) return write_output(invariants_report(p, verbose), out_path);
    if (ver->parsed()) {
      x0p2::VerifyOptions opt;
      opt.pmax = pmax;
      opt.classes = classes;
      opt.jobs = jobs;
      opt.verbose = verbose;
      const x0p2::VerifyResult res = x0p2::run_verification(opt);
      const int wrc = write_output(res.csv, out_path);
      if (wrc != 0) return wrc;
      return res.violations > 0 ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
