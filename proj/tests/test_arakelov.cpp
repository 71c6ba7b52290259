#include <doctest.h>

#include <json.hpp>

#include "x0p2/arakelov.hpp"
#include "x0p2/dual_graph.hpp"
#include "x0p2/fiber_model.hpp"
#include "x0p2/graph_invariants.hpp"
#include "x0p2/primes.hpp"

using namespace x0p2;

namespace {

Rational evaluate(const std::vector<Rational>& coeffs, long p) {
  Rational acc(0), pw(1);
  for (const auto& c : coeffs) {
    acc += c * pw;
    pw *= Rational(p);
  }
  return acc;
}

}  // namespace

TEST_CASE("canonical intersections via adjunction") {
  const FiberModel m = minimal_model(37);
  const auto can = canonical_intersections(m);
  CHECK(can.at("A_1_1") == Rational(0));  // genus 0, self -2
  CHECK(can.at("L_1") == Rational(76));   // 2((2*18-2) + 4)
  Rational sum(0);
  for (const auto& [id, v] : can) sum += v;
  CHECK(sum == Rational(2 * (2 * genus_oracle(37) - 2)));
}

TEST_CASE("published divisor tables match the solver except the known slip") {
  for (long p : {11L, 17L, 23L, 29L, 37L, 41L, 61L}) {
    const FiberModel m = minimal_model(p);
    const long g = genus_oracle(p);
    CHECK(divisor_diff(paper_divisor(m, Cusp::zero),
                       solve_orthogonal_divisor(m, Cusp::zero, g))
              .empty());
    CHECK(divisor_diff(paper_divisor(m, Cusp::infinity),
                       solve_orthogonal_divisor(m, Cusp::infinity, g))
              .empty());
  }
}

TEST_CASE("class 7 slip: plain N coefficients, zero cusp side only") {
  // x = -(p-19)/(p-1) vanishes at p = 19, so the first witness is p = 31
  const FiberModel m19 = minimal_model(19);
  CHECK(divisor_diff(paper_divisor(m19, Cusp::zero),
                     solve_orthogonal_divisor(m19, Cusp::zero, genus_oracle(19)))
            .empty());

  const FiberModel m = minimal_model(31);
  const long g = genus_oracle(31);
  CHECK(divisor_diff(paper_divisor(m, Cusp::infinity),
                     solve_orthogonal_divisor(m, Cusp::infinity, g))
            .empty());
  const Divisor diff = divisor_diff(
      paper_divisor(m, Cusp::zero), solve_orthogonal_divisor(m, Cusp::zero, g));
  REQUIRE(!diff.empty());
  CHECK(diff.size() == 29);  // the whole plain chain, p - 2 components
  for (const auto& [id, coeff] : diff) {
    CHECK(id.rfind("N_", 0) == 0);
    CHECK(!coeff.is_zero());
  }
}

TEST_CASE("divisor normalization and spot coefficients") {
  const FiberModel m = minimal_model(23);
  const long g = genus_oracle(23);
  const Divisor v0 = solve_orthogonal_divisor(m, Cusp::zero, g);
  CHECK(!v0.count(cusp_component(Cusp::infinity)));  // normalized to 0, dropped
  CHECK(v0.at("L_1") == Rational(-6));  // (p-1)x/2 with x = -6/11
  const Divisor d = paper_divisor(m, Cusp::zero);
  CHECK(d.at("L_1") == Rational(-6));
  CHECK(d.at("E") == Rational(-6));
  CHECK(d.at("F") == Rational(-6));
}

TEST_CASE("pairings at p = 17: fiber values, totals, copies") {
  const FiberModel m = minimal_model(17);
  const long g = genus_oracle(17);
  const Divisor v0 = solve_orthogonal_divisor(m, Cusp::zero, g);
  const Divisor vinf = solve_orthogonal_divisor(m, Cusp::infinity, g);
  CHECK(pair_fiber(m, v0, v0) == Rational(-6168));
  CHECK(pair_fiber(m, v0, vinf) == Rational(-24));
  CHECK(pair_fiber(m, vinf, vinf) == Rational(-6168));
  CHECK(conjugate_fibers(17) == 3);
  CHECK(pair_total(m, v0, v0, 3) == Rational(-37008));   // -18504 log p^2
  CHECK(pair_total(m, v0, vinf, 3) == Rational(-144));   // -72 log p^2
}

TEST_CASE("pairing is symmetric and bilinear") {
  const FiberModel m = minimal_model(29);
  const long g = genus_oracle(29);
  const Divisor v0 = solve_orthogonal_divisor(m, Cusp::zero, g);
  const Divisor vinf = solve_orthogonal_divisor(m, Cusp::infinity, g);
  CHECK(pair_fiber(m, v0, vinf) == pair_fiber(m, vinf, v0));
  CHECK(pair_fiber(m, v0, v0) == pair_fiber(m, vinf, vinf));

  Divisor scaled = v0;
  for (auto& [id, c] : scaled) c *= Rational(3, 2);
  CHECK(pair_fiber(m, scaled, vinf) ==
        Rational(3, 2) * pair_fiber(m, v0, vinf));

  Divisor sum = v0;
  for (const auto& [id, c] : vinf) sum[id] += c;
  CHECK(pair_fiber(m, sum, v0) ==
        pair_fiber(m, v0, v0) + pair_fiber(m, vinf, v0));
}

TEST_CASE("the fiber itself pairs to zero") {
  const FiberModel m = minimal_model(19);
  Divisor fiber;
  for (const auto& c : m.components()) fiber[c.id] = Rational(1);
  const Divisor v0 =
      solve_orthogonal_divisor(m, Cusp::zero, genus_oracle(19));
  CHECK(pair_fiber(m, fiber, v0) == Rational(0));
  CHECK(pair_fiber(m, fiber, fiber) == Rational(0));
}

TEST_CASE("conjugate fiber counts") {
  CHECK(conjugate_fibers(11) == 2);   // phi(12)/2
  CHECK(conjugate_fibers(17) == 3);
  CHECK(conjugate_fibers(19) == 4);
  CHECK(conjugate_fibers(37) == 9);
}

TEST_CASE("admissible correction and s-term") {
  const MetrizedGraph g17 = dual_graph(minimal_model(17));
  const Rational tau = tau_constant(g17);
  const Rational theta = theta_tilde(g17);
  CHECK(admissible_correction(tau, theta, genus_oracle(17), 17) ==
        Rational(2599, 16524));
  CHECK(admissible_correction(17) == Rational(2599, 16524));
  // linear in (tau, theta) jointly
  CHECK(admissible_correction(tau * Rational(2), theta * Rational(2),
                              genus_oracle(17), 17) ==
        Rational(2) * Rational(2599, 16524));
  CHECK(faltings_s_term(37) == Rational(1, 12));
  CHECK(faltings_s_term(17) == Rational(1, 4));
}

TEST_CASE("reference polynomials reproduce the solver pairings") {
  for (long p : {37L, 29L, 31L, 23L}) {
    const ResidueClass rc = classify_prime(p);
    const FiberModel m = minimal_model(p);
    const long g = genus_oracle(p);
    const Divisor v0 = solve_orthogonal_divisor(m, Cusp::zero, g);
    const Divisor vinf = solve_orthogonal_divisor(m, Cusp::infinity, g);
    CHECK(evaluate(reference_polynomial(rc.cls, PairingKind::v00), p) ==
          Rational(24) * pair_fiber(m, v0, v0));
    CHECK(evaluate(reference_polynomial(rc.cls, PairingKind::v0inf), p) ==
          Rational(24) * pair_fiber(m, v0, vinf));
  }
}

TEST_CASE("polynomial recovery with holdouts") {
  const std::vector<long> primes{11, 23, 47, 59, 71, 83, 107};
  const PolynomialCheck pc =
      recover_pairing_polynomial(11, PairingKind::v00, primes);
  CHECK(pc.matches);
  CHECK(pc.holdout_ok);
  CHECK(pc.holdout_count == 2);
  CHECK(pc.recovered == reference_polynomial(11, PairingKind::v00));
  CHECK(polynomial_str(pc.recovered) ==
        "-4*p^4 + 43*p^3 - 95*p^2 - 143*p - 1");

  CHECK_THROWS_AS(
      recover_pairing_polynomial(11, PairingKind::v00, {11, 23, 47}),
      std::invalid_argument);
  const std::vector<long> wrong{13, 23, 47, 59, 71, 83, 107};
  CHECK_THROWS_AS(recover_pairing_polynomial(11, PairingKind::v00, wrong),
                  std::invalid_argument);
}

TEST_CASE("out of generic range is rejected") {
  CHECK_THROWS_WITH_AS(paper_divisor(minimal_model(13), Cusp::zero),
                       doctest::Contains("out of generic range"),
                       std::domain_error);
  CHECK_THROWS_AS(paper_divisor(minimal_model(7), Cusp::infinity),
                  std::domain_error);
}

TEST_CASE("asymptotic report: exact fields and flagged estimates") {
  const auto j37 = asymptotic_report(37);
  CHECK(j37["genus"] == 98);
  CHECK(j37["copies"] == 9);
  CHECK(j37["exact"]["tau"] == "2347/342");
  CHECK(j37["exact"]["faltings_s_term_log_p"] == "1/12");
  CHECK(j37["exact"]["pairing_V00_per_fiber_log_p2"] == "-224514");
  CHECK(j37["estimates"]["omega_sq_log_p2"]["verified"] == false);
  CHECK(j37["estimates"]["omega_sq_log_p2"]["value"] ==
        doctest::Approx(2.0 * 98 + 37.0 / 8));
  CHECK(j37["estimates"]["faltings_height_log_p2"]["verified"] == false);

  const auto j13 = asymptotic_report(13);
  CHECK(j13["exact"]["pairing_reason"] == "out of generic range");
  CHECK(!j13["exact"].contains("pairing_V00_per_fiber_log_p2"));
}

TEST_CASE("divisor diff basics") {
  Divisor a{{"x", Rational(1)}, {"y", Rational(2)}};
  Divisor b{{"x", Rational(1)}, {"z", Rational(-1)}};
  const Divisor d = divisor_diff(a, b);
  CHECK(d.size() == 2);
  CHECK(d.at("y") == Rational(2));
  CHECK(d.at("z") == Rational(1));
  CHECK(divisor_diff(a, a).empty());
}
